#pragma once

// The right ideals [[oB]] of F and the checks of their positivity.
//
// The module structure on [[oB]] is f . m = m * f^#. Action matrices are in
// row convention: row i holds the coordinates of f_i * g^# in the ideal
// basis, so matrix(g1 * g2) = matrix(g2) * matrix(g1).

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "fconv/algebra.hpp"
#include "fconv/exact_matrix.hpp"

namespace fconv {

struct IdealIndexEntry {
  std::size_t c_stratum = 0;
  std::vector<std::size_t> parts;  // pair orbits forming the E x B orbit M
  gf2::LinearForm alpha;           // character of A meet B meet C
};

// The distinguished basis of [[oB]]: elements sum_{eps over the fiber of alpha} [M]^eps.
struct IdealBasis {
  std::size_t orbit = 0;
  Subspace a, b;
  std::vector<AlgebraElement> elements;
  std::vector<IdealIndexEntry> index;
};

struct CheckReport {
  bool pass = true;
  std::size_t checked = 0;
  std::string witness;  // first failure, if any

  void record_failure(std::string w) {
    if (pass) witness = std::move(w);
    pass = false;
  }
};

struct ActionMatrix {
  std::size_t generator = 0;  // basis label g; the matrix is that of m -> m * g^#
  Matrix matrix;
};

struct LabelPartition {
  std::vector<std::vector<std::size_t>> blocks;  // label supports of the basis elements
  bool disjoint = true;
  bool covers = true;  // union is every label (O1, eps) with p1(O1) = o
};

// Throws invalid-input for an unknown orbit or a B of the wrong ambient dimension.
IdealBasis ideal_basis(const ConvolutionAlgebra& alg, std::size_t orbit, const Subspace& b);

RowSpace span_of(const ConvolutionAlgebra& alg, const std::vector<AlgebraElement>& elements);

CheckReport verify_independent(const ConvolutionAlgebra& alg, const IdealBasis& ib);
CheckReport verify_right_ideal(const ConvolutionAlgebra& alg, const IdealBasis& ib);

// Span of [O]^eps1 * F.
RowSpace generator_span(const ConvolutionAlgebra& alg, std::size_t pair_orbit, std::uint32_t eps1);

// Matrices of m -> m * g^# for every basis label g, in the given basis of a
// right ideal. Throws invalid-input if the span is not closed.
std::vector<Matrix> right_ideal_action(const ConvolutionAlgebra& alg, const std::vector<AlgebraElement>& basis);

// Same, for [[oB]]; throws positivity-violation on an entry outside N.
std::vector<ActionMatrix> action_matrices(const ConvolutionAlgebra& alg, const IdealBasis& ib);

LabelPartition partition_structure(const ConvolutionAlgebra& alg, const IdealBasis& ib);

// For O in X^2_AB: the products O . O' over the O' in X^2_BC with p1(O') = p2(O)
// are exactly the E x B orbits M on X^2_AC with p1(M) = p1(O), for every C.
CheckReport verify_bullet_cover(const ConvolutionAlgebra& alg, std::size_t pair_orbit);

}  // namespace fconv
