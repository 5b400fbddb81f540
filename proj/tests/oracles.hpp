#pragma once

// Brute-force reference implementations used only by the tests. None of
// these share code paths with the library beyond ESet point bookkeeping.

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <tuple>
#include <vector>

#include "fconv/algebra.hpp"
#include "fconv/eset.hpp"
#include "fconv/gf2.hpp"

namespace oracle {

using fconv::ESet;
using fconv::Rational;
using fconv::Subspace;
using ElementSet = std::set<std::uint32_t>;

inline ElementSet elements_of(const Subspace& s) {
  auto e = s.elements();
  return {e.begin(), e.end()};
}

// Every subset of (Z/2)^n closed under addition and containing 0.
inline std::vector<ElementSet> brute_subspaces(unsigned n) {
  const std::uint32_t size = 1u << n;
  std::vector<ElementSet> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << size); ++mask) {
    if (!(mask & 1)) continue;
    bool closed = true;
    for (std::uint32_t u = 0; u < size && closed; ++u)
      for (std::uint32_t v = 0; v < size && closed; ++v)
        if (((mask >> u) & 1) && ((mask >> v) & 1) && !((mask >> (u ^ v)) & 1)) closed = false;
    if (!closed) continue;
    ElementSet s;
    for (std::uint32_t u = 0; u < size; ++u)
      if ((mask >> u) & 1) s.insert(u);
    out.push_back(s);
  }
  return out;
}

inline ElementSet meet(const ElementSet& a, const ElementSet& b) {
  ElementSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
  return out;
}

inline ElementSet sum(const ElementSet& a, const ElementSet& b) {
  ElementSet out;
  for (auto u : a)
    for (auto v : b) out.insert(u ^ v);
  return out;
}

// |{(a, b, c) : a + b + c = 0}| by direct enumeration.
inline std::uint64_t u_order(const Subspace& a, const Subspace& b, const Subspace& c) {
  const auto cs = elements_of(c);
  std::uint64_t n = 0;
  for (auto u : a.elements())
    for (auto v : b.elements()) n += cs.count(u ^ v);
  return n;
}

inline std::vector<std::vector<std::size_t>> stratum_points(const ESet& x, const Subspace& a) {
  std::vector<std::vector<std::size_t>> out(1);
  for (std::size_t p = 0; p < x.size(); ++p)
    if (x.stabilizer_of(p) == a) out[0].push_back(p);
  return out;
}

using Pair = std::pair<std::size_t, std::size_t>;

// Orbits of a group, given by a list of generators acting on pairs, by flood fill.
template <class Act>
std::vector<std::set<Pair>> flood_orbits(const std::vector<Pair>& domain, const std::vector<std::uint32_t>& gens,
                                         Act act) {
  std::set<Pair> seen;
  std::vector<std::set<Pair>> out;
  for (const auto& start : domain) {
    if (seen.count(start)) continue;
    std::set<Pair> orbit{start};
    std::vector<Pair> stack{start};
    while (!stack.empty()) {
      const auto p = stack.back();
      stack.pop_back();
      for (auto g : gens) {
        const auto q = act(g, p);
        if (orbit.insert(q).second) stack.push_back(q);
      }
    }
    seen.insert(orbit.begin(), orbit.end());
    out.push_back(std::move(orbit));
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<Pair> product_domain(const ESet& x, const Subspace& a, const Subspace& c) {
  std::vector<Pair> d;
  for (std::size_t p = 0; p < x.size(); ++p)
    for (std::size_t q = 0; q < x.size(); ++q)
      if (x.stabilizer_of(p) == a && x.stabilizer_of(q) == c) d.emplace_back(p, q);
  return d;
}

// Diagonal E-orbits on X_A x X_B.
inline std::vector<std::set<Pair>> pair_orbits(const ESet& x, const Subspace& a, const Subspace& b) {
  std::vector<std::uint32_t> gens;
  for (unsigned i = 0; i < x.e_dim(); ++i) gens.push_back(1u << i);
  return flood_orbits(product_domain(x, a, b), gens,
                      [&](std::uint32_t e, Pair p) { return Pair{x.act(e, p.first), x.act(e, p.second)}; });
}

// Orbits of E x B where B moves only the first coordinate.
inline std::vector<std::set<Pair>> eb_orbits(const ESet& x, const Subspace& a, const Subspace& b,
                                             const Subspace& c) {
  // generators encoded as e | (b << 16)
  std::vector<std::uint32_t> gens;
  for (unsigned i = 0; i < x.e_dim(); ++i) gens.push_back(1u << i);
  for (auto r : b.rows()) gens.push_back(r << 16);
  return flood_orbits(product_domain(x, a, c), gens, [&](std::uint32_t g, Pair p) {
    const std::uint32_t e = g & 0xffff, bb = g >> 16;
    return Pair{x.act(e ^ bb, p.first), x.act(e, p.second)};
  });
}

// Characters of a subspace as value tables on its sorted elements.
inline std::vector<std::map<std::uint32_t, int>> characters(const ElementSet& v) {
  const std::vector<std::uint32_t> el(v.begin(), v.end());
  std::vector<std::map<std::uint32_t, int>> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << el.size()); ++mask) {
    std::map<std::uint32_t, int> chi;
    for (std::size_t k = 0; k < el.size(); ++k) chi[el[k]] = (mask >> k) & 1;
    bool additive = true;
    for (auto u : el)
      for (auto w : el)
        if (chi[u ^ w] != (chi[u] ^ chi[w])) additive = false;
    if (additive) out.push_back(std::move(chi));
  }
  return out;
}

using CharTable = std::map<std::uint32_t, int>;
using FnKey = std::tuple<std::size_t, std::size_t, CharTable>;
// A function on pairs (x, y) and characters of stab(x) meet stab(y).
using Function = std::map<FnKey, Rational>;

inline CharTable restrict_to(const CharTable& chi, const ElementSet& w) {
  CharTable out;
  for (auto v : w) out[v] = chi.at(v);
  return out;
}

inline Function to_function(const fconv::ConvolutionAlgebra& alg, const fconv::AlgebraElement& f) {
  Function out;
  for (const auto& [i, c] : f.terms()) {
    const auto& l = alg.label(i);
    CharTable chi;
    for (auto v : l.eps.domain().elements()) chi[v] = static_cast<int>(l.eps(v));
    for (const auto& [p, q] : alg.pair_orbit(l.orbit).members) out[{p, q, chi}] += c;
  }
  return out;
}

// The convolution product straight from its defining sum.
inline Function star(const ESet& x, const Function& f, const Function& g) {
  Function out;
  std::map<Subspace, ElementSet> sets;
  auto els = [&](const Subspace& s) -> const ElementSet& {
    auto it = sets.find(s);
    if (it == sets.end()) it = sets.emplace(s, elements_of(s)).first;
    return it->second;
  };
  for (const auto& [k1, c1] : f) {
    const auto& [px, py, chi1] = k1;
    for (const auto& [k2, c2] : g) {
      const auto& [qy, qz, chi2] = k2;
      if (qy != py) continue;
      const auto& a = els(x.stabilizer_of(px));
      const auto& b = els(x.stabilizer_of(py));
      const auto& c = els(x.stabilizer_of(qz));
      const auto abc = meet(meet(a, b), c);
      const auto ac = meet(a, c);
      const Rational w(static_cast<long>(abc.size()), static_cast<long>(ac.size()));
      const auto r1 = restrict_to(chi1, abc);
      const auto r2 = restrict_to(chi2, abc);
      for (const auto& chi : characters(ac)) {
        const auto r = restrict_to(chi, abc);
        bool zero = true;
        for (auto v : abc)
          if ((r.at(v) ^ r1.at(v) ^ r2.at(v)) != 0) zero = false;
        if (!zero) continue;
        Rational term = c1 * c2 * w;
        term.canonicalize();
        out[{px, qz, chi}] += term;
      }
    }
  }
  for (auto it = out.begin(); it != out.end();)
    it = (sgn(it->second) == 0) ? out.erase(it) : std::next(it);
  return out;
}

// A random orbit specification with n <= max_n and at most max_points points.
inline fconv::ESetSpec random_spec(std::mt19937_64& rng, unsigned max_n, std::size_t max_points) {
  const unsigned n = std::uniform_int_distribution<unsigned>(0, max_n)(rng);
  const auto subs = fconv::gf2::all_subspaces(n);
  fconv::ESetSpec spec{n, {}};
  std::size_t points = 0;
  const auto want = std::uniform_int_distribution<int>(1, 4)(rng);
  for (int k = 0; k < want; ++k) {
    const auto& s = subs[std::uniform_int_distribution<std::size_t>(0, subs.size() - 1)(rng)];
    const auto size = (std::size_t{1} << n) / s.order();
    if (points + size > max_points) continue;
    points += size;
    spec.orbits.push_back({s, 1});
  }
  if (spec.orbits.empty()) spec.orbits.push_back({fconv::gf2::Subspace::full(n), 1});
  return spec;
}

}  // namespace oracle
