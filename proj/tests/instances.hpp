#pragma once

// The small instances used across the tests, built in code.

#include <string>
#include <vector>

#include "fconv/eset.hpp"
#include "fconv/gf2.hpp"

namespace inst {

inline fconv::Subspace sub(const std::vector<std::string>& gens, unsigned n) {
  std::vector<fconv::gf2::GF2Vector> v;
  for (const auto& g : gens) v.push_back(fconv::gf2::GF2Vector::parse(g));
  return fconv::gf2::canonicalize(v, n);
}

// two fixed points of the trivial group
inline fconv::ESetSpec i1() { return {0, {{sub({}, 0), 2}}}; }
// one free orbit and one fixed point for Z/2
inline fconv::ESetSpec i2() { return {1, {{sub({}, 1), 1}, {sub({"1"}, 1), 1}}}; }
// one orbit for each subspace of (Z/2)^2
inline fconv::ESetSpec i3() {
  return {2,
          {{sub({}, 2), 1}, {sub({"10"}, 2), 1}, {sub({"01"}, 2), 1}, {sub({"11"}, 2), 1}, {sub({"10", "01"}, 2), 1}}};
}
// a single free orbit of (Z/2)^2
inline fconv::ESetSpec i4() { return {2, {{sub({}, 2), 1}}}; }
inline fconv::ESetSpec two_free_n1() { return {1, {{sub({}, 1), 2}}}; }
inline fconv::ESetSpec two_free_n2() {
  auto s = i3();
  s.orbits[0].multiplicity = 2;
  return s;
}

}  // namespace inst
