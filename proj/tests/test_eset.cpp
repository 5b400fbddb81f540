#include <gtest/gtest.h>

#include <random>
#include <set>

#include "fconv/eset.hpp"
#include "instances.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace fconv;

namespace {

std::set<oracle::Pair> as_set(const std::vector<PointPair>& v) { return {v.begin(), v.end()}; }

std::vector<ESetSpec> desk_specs() {
  return {inst::i1(), inst::i2(), inst::i3(), inst::i4(), inst::two_free_n1(), inst::two_free_n2()};
}

}  // namespace

TEST(ESet, DeskInstanceSizes) {
  EXPECT_EQ(ESet(inst::i1()).size(), 2u);
  EXPECT_EQ(ESet(inst::i2()).size(), 3u);
  EXPECT_EQ(ESet(inst::i3()).size(), 11u);
  EXPECT_EQ(ESet(inst::i4()).size(), 4u);
  EXPECT_EQ(ESet(inst::i3()).strata().size(), 5u);
}

TEST(ESet, TrivialGroupActsTrivially) {
  ESet x(inst::i1());
  EXPECT_EQ(x.act(0, 0), 0u);
  EXPECT_EQ(x.act(0, 1), 1u);
  EXPECT_EQ(x.orbit_count(), 2u);
}

TEST(ESet, ActionIsAGroupActionWithTheGivenStabilizers) {
  for (const auto& spec : desk_specs()) {
    ESet x(spec);
    const std::uint32_t g = static_cast<std::uint32_t>(x.group_order());
    for (std::size_t p = 0; p < x.size(); ++p) {
      std::set<std::size_t> orbit;
      for (std::uint32_t e = 0; e < g; ++e) {
        orbit.insert(x.act(e, p));
        EXPECT_EQ(x.act(e, p) == p, x.stabilizer_of(p).contains(e));
        for (std::uint32_t f = 0; f < g; ++f) EXPECT_EQ(x.act(e, x.act(f, p)), x.act(e ^ f, p));
      }
      EXPECT_EQ(orbit.size(), g / x.stabilizer_of(p).order());
      for (auto q : orbit) EXPECT_EQ(x.orbit_of(q), x.orbit_of(p));
    }
  }
}

TEST(ESet, RejectsBadSpecs) {
  EXPECT_FCONV_ERROR(ESet(ESetSpec{2, {}}), ErrorKind::invalid_input);
  EXPECT_FCONV_ERROR(ESet(ESetSpec{2, {{Subspace(2), 0}}}), ErrorKind::invalid_input);
  EXPECT_FCONV_ERROR(ESet(ESetSpec{2, {{Subspace(3), 1}}}), ErrorKind::invalid_input);
}

TEST(ESet, StrataAndOrbitIds) {
  ESet x(inst::two_free_n2());
  EXPECT_EQ(stratum(x, Subspace(2)).size(), 8u);
  EXPECT_EQ(e_orbits(x, Subspace(2)).size(), 2u);
  EXPECT_EQ(e_orbits(x, Subspace::full(2)).size(), 1u);
  EXPECT_TRUE(stratum(ESet(inst::i4()), Subspace::full(2)).empty());
}

TEST(PairOrbits, MatchFloodFill) {
  for (const auto& spec : desk_specs()) {
    ESet x(spec);
    for (const auto& a : x.strata())
      for (const auto& b : x.strata()) {
        const auto lib = pair_orbits(x, a, b);
        const auto brute = oracle::pair_orbits(x, a, b);
        std::set<std::set<oracle::Pair>> l, r(brute.begin(), brute.end());
        for (const auto& o : lib) {
          l.insert(as_set(o.members));
          EXPECT_EQ(o.members.size(), x.group_order() / gf2::intersect(a, b).order());
          EXPECT_EQ(o.rep(), *as_set(o.members).begin());
        }
        EXPECT_EQ(l, r);
      }
  }
}

TEST(PairOrbits, TrivialGroupGivesSingletons) {
  ESet x(inst::i1());
  EXPECT_EQ(pair_orbits(x, Subspace(0), Subspace(0)).size(), 4u);
}

TEST(EbOrbits, MatchFloodFillAndSizeLaw) {
  for (const auto& spec : desk_specs()) {
    ESet x(spec);
    for (const auto& a : x.strata())
      for (const auto& c : x.strata())
        for (const auto& b : gf2::all_subspaces(x.e_dim())) {
          const auto lib = eb_orbits(x, a, b, c);
          const auto brute = oracle::eb_orbits(x, a, b, c);
          std::set<std::set<oracle::Pair>> l, r(brute.begin(), brute.end());
          for (const auto& m : lib) {
            l.insert(as_set(m.members));
            EXPECT_EQ(m.members.size(), x.group_order() * b.order() / oracle::u_order(a, b, c));
            EXPECT_EQ(eb_orbit_of(x, b, m.rep()).members, m.members);
          }
          EXPECT_EQ(l, r);
        }
  }
}

TEST(EbOrbits, FreeTimesFreeUnderFullB) {
  // |U| = 1 here, so the single orbit is all of X_0 x X_0
  ESet x(inst::i3());
  const auto m = eb_orbits(x, Subspace(2), Subspace::full(2), Subspace(2));
  ASSERT_EQ(m.size(), 1u);
  EXPECT_EQ(m[0].members.size(), 16u);
}

TEST(UGroup, RankFormulaMatchesEnumeration) {
  for (unsigned n = 0; n <= 3; ++n) {
    const auto subs = gf2::all_subspaces(n);
    for (const auto& a : subs)
      for (const auto& b : subs)
        for (const auto& c : subs) ASSERT_EQ(u_group_order(a, b, c), oracle::u_order(a, b, c));
  }
}

TEST(EbOrbits, RandomSpecsMatchFloodFill) {
  std::mt19937_64 rng(7);
  for (int k = 0; k < 15; ++k) {
    ESet x(oracle::random_spec(rng, 3, 16));
    for (const auto& a : x.strata())
      for (const auto& c : x.strata())
        for (const auto& b : x.strata()) {
          std::set<std::set<oracle::Pair>> l;
          for (const auto& m : eb_orbits(x, a, b, c)) l.insert(as_set(m.members));
          const auto brute = oracle::eb_orbits(x, a, b, c);
          EXPECT_EQ(l, std::set<std::set<oracle::Pair>>(brute.begin(), brute.end()));
        }
  }
}
