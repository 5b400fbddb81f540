#pragma once

// Finite sets with an action of E = (Z/2)^n, built from an orbit
// specification, together with their strata, E-orbits on X and X x X, and
// E x B-orbits on products of strata.

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "fconv/gf2.hpp"

namespace fconv {

using gf2::Subspace;

// One transitive piece E/stabilizer, repeated `multiplicity` times.
struct OrbitSpec {
  Subspace stabilizer;
  unsigned multiplicity = 1;

  friend bool operator==(const OrbitSpec&, const OrbitSpec&) = default;
};

struct ESetSpec {
  unsigned e_dim = 0;
  std::vector<OrbitSpec> orbits;

  friend bool operator==(const ESetSpec&, const ESetSpec&) = default;
};

using PointPair = std::pair<std::size_t, std::size_t>;

// A diagonal E-orbit in X_A x X_B.
struct PairOrbit {
  Subspace a, b;
  std::vector<PointPair> members;  // sorted; front() is the representative

  const PointPair& rep() const { return members.front(); }
};

// An orbit of E x B acting on X_A x X_C by (e, b) : (x, y) -> (e + b + x, e + y).
struct EBOrbit {
  Subspace a, b, c;
  std::vector<PointPair> members;  // sorted; front() is the representative

  const PointPair& rep() const { return members.front(); }
};

class ESet {
 public:
  // Throws invalid-input when a stabilizer has the wrong ambient dimension,
  // a multiplicity is zero, or there are no orbits.
  explicit ESet(ESetSpec spec);

  const ESetSpec& spec() const noexcept { return spec_; }
  unsigned e_dim() const noexcept { return spec_.e_dim; }
  std::uint64_t group_order() const noexcept { return std::uint64_t{1} << spec_.e_dim; }
  std::size_t size() const noexcept { return orbit_of_.size(); }

  std::size_t orbit_count() const noexcept { return orbits_.size(); }
  std::size_t orbit_of(std::size_t x) const { return orbit_of_.at(x); }
  std::uint32_t coset(std::size_t x) const { return coset_.at(x); }
  const Subspace& stabilizer_of(std::size_t x) const { return orbits_[orbit_of(x)].stabilizer; }
  const Subspace& orbit_stabilizer(std::size_t orbit) const { return orbits_.at(orbit).stabilizer; }
  const std::vector<std::size_t>& orbit_points(std::size_t orbit) const { return orbits_.at(orbit).points; }

  std::size_t act(std::uint32_t e, std::size_t x) const;

  // Distinct stabilizers that occur, in subspace order.
  const std::vector<Subspace>& strata() const noexcept { return strata_; }

 private:
  struct Orbit {
    Subspace stabilizer;
    std::uint32_t free_mask = 0;  // non-pivot coordinates of the stabilizer
    std::vector<std::size_t> points;
  };

  ESetSpec spec_;
  std::vector<Orbit> orbits_;
  std::vector<std::size_t> orbit_of_;
  std::vector<std::uint32_t> coset_;
  std::vector<Subspace> strata_;
};

inline ESet realize(ESetSpec spec) { return ESet(std::move(spec)); }

std::vector<std::size_t> stratum(const ESet& x, const Subspace& a);
// Ids of the E-orbits contained in X_A.
std::vector<std::size_t> e_orbits(const ESet& x, const Subspace& a);
std::vector<PairOrbit> pair_orbits(const ESet& x, const Subspace& a, const Subspace& b);
std::vector<EBOrbit> eb_orbits(const ESet& x, const Subspace& a, const Subspace& b, const Subspace& c);
EBOrbit eb_orbit_of(const ESet& x, const Subspace& b, const PointPair& pair);

// |{(a, b, c) in A x B x C : a + b + c = 0}|.
std::uint64_t u_group_order(const Subspace& a, const Subspace& b, const Subspace& c);

}  // namespace fconv
