#include "fconv/eset.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "fconv/error.hpp"

namespace fconv {

namespace {

// Packs the bits of v selected by mask into the low bits, preserving order.
std::uint32_t compress(std::uint32_t v, std::uint32_t mask) {
  std::uint32_t out = 0;
  unsigned k = 0;
  for (; mask; mask &= mask - 1, ++k)
    if (v & (mask & (~mask + 1))) out |= std::uint32_t{1} << k;
  return out;
}

constexpr std::size_t max_points = std::size_t{1} << 16;

}  // namespace

ESet::ESet(ESetSpec spec) : spec_(std::move(spec)) {
  if (spec_.e_dim > gf2::max_ambient_dim)
    fail(ErrorKind::invalid_input, "e_dim " + std::to_string(spec_.e_dim) + " is too large");
  if (spec_.orbits.empty()) fail(ErrorKind::invalid_input, "an E-set needs at least one orbit");
  const std::uint32_t full = (std::uint32_t{1} << spec_.e_dim) - 1;
  for (std::size_t i = 0; i < spec_.orbits.size(); ++i) {
    const auto& o = spec_.orbits[i];
    if (o.stabilizer.ambient_dim() != spec_.e_dim)
      fail(ErrorKind::invalid_input, "orbit " + std::to_string(i) + ": stabilizer ambient dimension " +
                                         std::to_string(o.stabilizer.ambient_dim()) + " != e_dim " +
                                         std::to_string(spec_.e_dim));
    if (o.multiplicity == 0)
      fail(ErrorKind::invalid_input, "orbit " + std::to_string(i) + ": multiplicity must be positive");
    std::uint32_t pivot_mask = 0;
    for (std::size_t r = 0; r < o.stabilizer.rows().size(); ++r)
      pivot_mask |= std::uint32_t{1} << o.stabilizer.pivot(r);
    for (unsigned copy = 0; copy < o.multiplicity; ++copy) {
      Orbit orbit{o.stabilizer, full & ~pivot_mask, {}};
      const std::size_t id = orbits_.size();
      for (std::uint32_t v = 0; v <= full; ++v) {
        if (v & pivot_mask) continue;
        orbit.points.push_back(orbit_of_.size());
        orbit_of_.push_back(id);
        coset_.push_back(v);
        if (orbit_of_.size() > max_points)
          fail(ErrorKind::resource_limit, "E-set has more than " + std::to_string(max_points) + " points");
      }
      orbits_.push_back(std::move(orbit));
    }
    if (std::find(strata_.begin(), strata_.end(), o.stabilizer) == strata_.end())
      strata_.push_back(o.stabilizer);
  }
  std::sort(strata_.begin(), strata_.end());
}

std::size_t ESet::act(std::uint32_t e, std::size_t x) const {
  const Orbit& orbit = orbits_[orbit_of(x)];
  const std::uint32_t moved = orbit.stabilizer.reduce(coset_[x] ^ e);
  return orbit.points[compress(moved, orbit.free_mask)];
}

std::vector<std::size_t> stratum(const ESet& x, const Subspace& a) {
  std::vector<std::size_t> out;
  for (std::size_t p = 0; p < x.size(); ++p)
    if (x.stabilizer_of(p) == a) out.push_back(p);
  return out;
}

std::vector<std::size_t> e_orbits(const ESet& x, const Subspace& a) {
  std::vector<std::size_t> out;
  for (std::size_t o = 0; o < x.orbit_count(); ++o)
    if (x.orbit_stabilizer(o) == a) out.push_back(o);
  return out;
}

std::vector<PairOrbit> pair_orbits(const ESet& x, const Subspace& a, const Subspace& b) {
  const auto xa = stratum(x, a);
  const auto xb = stratum(x, b);
  const std::size_t n = x.size();
  std::vector<bool> visited(n * n, false);
  std::vector<PairOrbit> out;
  for (auto p : xa)
    for (auto q : xb) {
      if (visited[p * n + q]) continue;
      PairOrbit orbit{a, b, {}};
      for (std::uint32_t e = 0; e < x.group_order(); ++e) {
        const PointPair image{x.act(e, p), x.act(e, q)};
        if (!visited[image.first * n + image.second]) {
          visited[image.first * n + image.second] = true;
          orbit.members.push_back(image);
        }
      }
      std::sort(orbit.members.begin(), orbit.members.end());
      out.push_back(std::move(orbit));
    }
  return out;
}

EBOrbit eb_orbit_of(const ESet& x, const Subspace& b, const PointPair& pair) {
  EBOrbit orbit{x.stabilizer_of(pair.first), b, x.stabilizer_of(pair.second), {}};
  const auto b_elements = b.elements();
  for (std::uint32_t e = 0; e < x.group_order(); ++e)
    for (auto bb : b_elements) orbit.members.emplace_back(x.act(e ^ bb, pair.first), x.act(e, pair.second));
  std::sort(orbit.members.begin(), orbit.members.end());
  orbit.members.erase(std::unique(orbit.members.begin(), orbit.members.end()), orbit.members.end());
  return orbit;
}

std::vector<EBOrbit> eb_orbits(const ESet& x, const Subspace& a, const Subspace& b, const Subspace& c) {
  if (b.ambient_dim() != x.e_dim()) fail(ErrorKind::invalid_input, "eb_orbits: B has the wrong ambient dimension");
  const auto xa = stratum(x, a);
  const auto xc = stratum(x, c);
  const std::size_t n = x.size();
  std::vector<bool> visited(n * n, false);
  std::vector<EBOrbit> out;
  for (auto p : xa)
    for (auto q : xc) {
      if (visited[p * n + q]) continue;
      EBOrbit orbit = eb_orbit_of(x, b, {p, q});
      for (const auto& [u, v] : orbit.members) visited[u * n + v] = true;
      out.push_back(std::move(orbit));
    }
  return out;
}

std::uint64_t u_group_order(const Subspace& a, const Subspace& b, const Subspace& c) {
  // (a, b) -> a + b maps A x B onto A + B with kernel A meet B; U is the
  // preimage of (A + B) meet C.
  const auto meet_ab = gf2::intersect(a, b);
  const auto hit = gf2::intersect(gf2::subspace_sum(a, b), c);
  return meet_ab.order() * hit.order();
}

}  // namespace fconv
