#include <gtest/gtest.h>

#include "fconv/modules.hpp"
#include "instances.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace fconv;

namespace {

Subspace named(const char* n) { return dim2_subspace(n); }

std::vector<std::size_t> entry_dims(const Catalog& c) {
  std::vector<std::size_t> d;
  for (const auto& e : c.entries) d.push_back(e.dim);
  return d;
}

}  // namespace

TEST(DimensionFormula, AgreesWithEnumeration) {
  for (const auto& spec : {inst::i1(), inst::i2(), inst::i3(), inst::i4(), inst::two_free_n1(), inst::two_free_n2()}) {
    ConvolutionAlgebra alg{ESet(spec)};
    const auto counts = orbit_counts(alg.eset());
    for (std::size_t o = 0; o < alg.eset().orbit_count(); ++o)
      for (const auto& b : gf2::all_subspaces(spec.e_dim))
        EXPECT_EQ(dim_closed_form(alg.eset().orbit_stabilizer(o), b, counts), ideal_basis(alg, o, b).elements.size());
  }
}

TEST(DimensionFormula, DeskValues) {
  const auto counts = orbit_counts(ESet(inst::i3()));
  EXPECT_EQ(dim_closed_form(named("0"), named("E"), counts), 5u);
  EXPECT_EQ(dim_closed_form(named("L1"), named("L1"), counts), 10u);
  EXPECT_EQ(dim_closed_form(named("L1"), named("L2"), counts), 5u);
}

TEST(Preorder, ZeroStabilizerReversesInclusion) {
  EXPECT_TRUE(preorder_leq(named("0"), named("E"), named("L1")).holds);
  EXPECT_TRUE(preorder_leq(named("0"), named("L1"), named("0")).holds);
  EXPECT_FALSE(preorder_leq(named("0"), named("0"), named("L1")).holds);
  EXPECT_FALSE(preorder_leq(named("0"), named("L1"), named("L2")).holds);
}

TEST(Preorder, FullStabilizerFollowsInclusion) {
  EXPECT_TRUE(preorder_leq(named("E"), named("0"), named("L1")).holds);
  EXPECT_FALSE(preorder_leq(named("E"), named("L1"), named("0")).holds);
}

TEST(Preorder, LineStabilizerHasItselfOnTop) {
  for (const auto& b : gf2::all_subspaces(2)) EXPECT_TRUE(preorder_leq(named("L1"), b, named("L1")).holds);
}

TEST(Preorder, ReflexiveAndTransitive) {
  const auto subs = gf2::all_subspaces(3);
  for (const auto& a : subs)
    for (const auto& x : subs) {
      EXPECT_TRUE(preorder_leq(a, x, x).holds);
      for (const auto& y : subs) {
        if (!preorder_leq(a, x, y).holds) continue;
        for (const auto& z : subs)
          if (preorder_leq(a, y, z).holds) EXPECT_TRUE(preorder_leq(a, x, z).holds);
      }
    }
}

TEST(Containment, HoldsForEveryPreorderPair) {
  for (const auto& spec : {inst::i3(), inst::two_free_n2()}) {
    ConvolutionAlgebra alg{ESet(spec)};
    const auto subs = gf2::all_subspaces(2);
    for (std::size_t o = 0; o < alg.eset().orbit_count(); ++o) {
      const auto& a = alg.eset().orbit_stabilizer(o);
      for (const auto& bs : subs)
        for (const auto& bb : subs) {
          if (!preorder_leq(a, bs, bb).holds) continue;
          const auto r = verify_containment(alg, o, bs, bb);
          EXPECT_TRUE(r.pass) << r.witness;
        }
    }
  }
}

TEST(Containment, OutsideThePreorderIsAPreconditionViolation) {
  ConvolutionAlgebra alg{ESet(inst::i3())};
  EXPECT_FCONV_ERROR(verify_containment(alg, 0, named("0"), named("E")), ErrorKind::precondition_violation);
}

TEST(ShiftIsomorphism, TwoFreeOrbits) {
  for (const auto& spec : {inst::two_free_n1(), inst::two_free_n2()}) {
    ConvolutionAlgebra alg{ESet(spec)};
    for (const auto& b : gf2::all_subspaces(spec.e_dim)) {
      const auto s = shift_isomorphism(alg, 0, 1, b);
      EXPECT_TRUE(s.bijective);
      EXPECT_TRUE(s.intertwines);
      const auto m = ideal_module(alg, ideal_basis(alg, 0, b));
      const auto n = ideal_module(alg, ideal_basis(alg, 1, b));
      EXPECT_EQ(character(m), character(n));
    }
  }
}

TEST(ShiftIsomorphism, SameOrbitIsIdentity) {
  ConvolutionAlgebra alg{ESet(inst::two_free_n1())};
  const auto s = shift_isomorphism(alg, 0, 0, Subspace(1));
  ASSERT_TRUE(s.bijective);
  for (std::size_t i = 0; i < s.image.size(); ++i) EXPECT_EQ(s.image[i], i);
}

TEST(ShiftIsomorphism, DifferentStabilizersRejected) {
  ConvolutionAlgebra alg{ESet(inst::i2())};
  EXPECT_FCONV_ERROR(shift_isomorphism(alg, 0, 1, Subspace(1)), ErrorKind::invalid_input);
}

TEST(Quotient, DimensionsAndCharacterAdditivity) {
  ConvolutionAlgebra alg{ESet(inst::i3())};
  const auto zero = e_orbits(alg.eset(), named("0")).front();
  const auto big = ideal_module(alg, ideal_basis(alg, zero, named("L1")));
  const auto small_basis = ideal_basis(alg, zero, named("E"));
  const auto small = ideal_module(alg, small_basis);
  const auto q = quotient_module(alg, big, small_basis.elements);
  EXPECT_EQ(big.dim, 7u);
  EXPECT_EQ(small.dim, 5u);
  EXPECT_EQ(q.dim, 2u);
  const auto cb = character(big), cs = character(small), cq = character(q);
  for (std::size_t g = 0; g < cb.size(); ++g) EXPECT_EQ(cb[g], cs[g] + cq[g]);
  EXPECT_EQ(quotient_module(alg, big, {}).dim, big.dim);
}

TEST(Quotient, RejectsDenominatorOutsideNumerator) {
  ConvolutionAlgebra alg{ESet(inst::i3())};
  const auto zero = e_orbits(alg.eset(), named("0")).front();
  const auto m = ideal_module(alg, ideal_basis(alg, zero, named("E")));
  EXPECT_FCONV_ERROR(quotient_module(alg, m, ideal_basis(alg, zero, named("0")).elements), ErrorKind::invalid_input);
}

TEST(Simplicity, ActionAlgebraDimension) {
  ConvolutionAlgebra alg{ESet(inst::i3())};
  const auto zero = e_orbits(alg.eset(), named("0")).front();
  const auto m = ideal_module(alg, ideal_basis(alg, zero, named("E")));
  EXPECT_EQ(action_algebra_dimension(m), 25u);
  EXPECT_TRUE(is_simple(m));
  // [[00]] holds several simples
  EXPECT_FALSE(is_simple(ideal_module(alg, ideal_basis(alg, zero, named("0")))));
}

TEST(Intertwiner, SolvesTheIntertwiningSystem) {
  ConvolutionAlgebra alg{ESet(inst::i3())};
  const auto o0 = e_orbits(alg.eset(), named("0")).front();
  const auto o1 = e_orbits(alg.eset(), named("L1")).front();
  const auto m = quotient_module(alg, ideal_module(alg, ideal_basis(alg, o0, named("L1"))),
                                 ideal_basis(alg, o0, named("E")).elements);
  const auto n = quotient_module(alg, ideal_module(alg, ideal_basis(alg, o1, named("0"))),
                                 ideal_basis(alg, o1, named("L2")).elements);
  EXPECT_EQ(character(m), character(n));
  const auto t = find_intertwiner(m, n);
  ASSERT_TRUE(t.has_value());
  EXPECT_TRUE(is_invertible(*t));
  for (std::size_t g = 0; g < alg.dim(); ++g) EXPECT_EQ(m.action[g] * *t, *t * n.action[g]);
  // nonisomorphic modules of equal dimension
  const auto other = quotient_module(alg, ideal_module(alg, ideal_basis(alg, o0, named("L2"))),
                                     ideal_basis(alg, o0, named("E")).elements);
  EXPECT_FALSE(find_intertwiner(m, other).has_value());
}

TEST(Catalog, OneOrbitPerSubspace) {
  ConvolutionAlgebra alg{ESet(inst::i3())};
  const auto cat = dim2_catalog(alg);
  EXPECT_EQ(entry_dims(cat), (std::vector<std::size_t>{2, 2, 2, 2, 2, 2, 1, 1, 1, 5}));
  EXPECT_EQ(cat.sum_of_squares, 52u);
  EXPECT_TRUE(cat.complete);
  EXPECT_TRUE(cat.pairwise_nonisomorphic);
  EXPECT_TRUE(cat.all_pass());
  for (const auto& e : cat.entries) {
    EXPECT_TRUE(e.dims_match);
    EXPECT_TRUE(e.isomorphisms_hold);
    EXPECT_TRUE(e.equalities_hold);
    EXPECT_TRUE(e.simple);
  }
  ASSERT_EQ(cat.distinguished.size(), 10u);
  for (const auto& d : cat.distinguished) EXPECT_TRUE(d.positive) << d.name;
}

TEST(Catalog, SingleFreeOrbit) {
  ConvolutionAlgebra alg{ESet(inst::i4())};
  const auto cat = dim2_catalog(alg);
  EXPECT_EQ(entry_dims(cat), (std::vector<std::size_t>{1, 1, 1, 0, 0, 0, 0, 0, 0, 1}));
  EXPECT_EQ(cat.sum_of_squares, 4u);
  EXPECT_TRUE(cat.all_pass());
  // a presentation over an empty stratum is reported as absent
  EXPECT_FALSE(cat.entries[3].presentations[2].module.has_value());
}

TEST(Catalog, TwoFreeOrbitsShiftDimensions) {
  ConvolutionAlgebra alg{ESet(inst::two_free_n2())};
  const auto cat = dim2_catalog(alg);
  EXPECT_EQ(entry_dims(cat), (std::vector<std::size_t>{3, 3, 3, 2, 2, 2, 1, 1, 1, 6}));
  EXPECT_EQ(cat.sum_of_squares, alg.dim());
  EXPECT_TRUE(cat.all_pass());
}

TEST(Catalog, NeedsPlaneGroup) {
  ConvolutionAlgebra alg{ESet(inst::i2())};
  EXPECT_FCONV_ERROR(dim2_catalog(alg), ErrorKind::invalid_input);
}
