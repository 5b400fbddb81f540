#pragma once

// The convolution algebra F = sum_{A,B} F_AB of E-invariant functions on
// X_A x X_B x (A meet B)^*, with its canonical basis [O]^eps, the star
// product, the unit, and the antiautomorphism f -> f^#.

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "fconv/eset.hpp"
#include "fconv/exact_matrix.hpp"
#include "fconv/gf2.hpp"

namespace fconv {

class ConvolutionAlgebra;

// [O]^eps: the indicator of the pair orbit O paired with eps on A meet B.
struct BasisLabel {
  std::size_t orbit = 0;  // pair-orbit id
  gf2::LinearForm eps;
};

// Sparse exact-rational combination of basis labels; zero coefficients are
// never stored, so equality is map equality.
class AlgebraElement {
 public:
  AlgebraElement() = default;
  explicit AlgebraElement(const ConvolutionAlgebra* owner) : owner_(owner) {}

  const ConvolutionAlgebra* owner() const noexcept { return owner_; }
  const std::map<std::size_t, Rational>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  Rational coefficient(std::size_t label) const;
  void add(std::size_t label, const Rational& c);
  RationalVector dense() const;

  AlgebraElement& operator+=(const AlgebraElement& other);
  AlgebraElement& operator-=(const AlgebraElement& other);
  AlgebraElement& operator*=(const Rational& c);

  friend AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b) { return a += b; }
  friend AlgebraElement operator-(AlgebraElement a, const AlgebraElement& b) { return a -= b; }
  friend AlgebraElement operator*(const Rational& c, AlgebraElement a) { return a *= c; }
  friend bool operator==(const AlgebraElement& a, const AlgebraElement& b) {
    return a.owner_ == b.owner_ && a.terms_ == b.terms_;
  }

 private:
  void check_owner(const AlgebraElement& other) const;

  const ConvolutionAlgebra* owner_ = nullptr;
  std::map<std::size_t, Rational> terms_;
};

// One structure-table entry: label index -> natural coefficient.
using ProductTerms = std::vector<std::pair<std::uint32_t, std::int64_t>>;

// The E x B orbit O . O' together with N_{A,B,C}.
struct BulletResult {
  EBOrbit orbit;                  // the E x B orbit containing the image
  std::vector<PointPair> image;   // projection of {(x, y, z) : (x, y) in O, (y, z) in O'}
  std::uint64_t n_abc = 0;
};

// N_{A,B,C} = |U_ABC| |A meet B meet C| / (|A meet B| |B meet C| |A meet C|).
std::uint64_t n_abc(const Subspace& a, const Subspace& b, const Subspace& c);

class ConvolutionAlgebra {
 public:
  explicit ConvolutionAlgebra(ESet x);

  ConvolutionAlgebra(const ConvolutionAlgebra&) = delete;
  ConvolutionAlgebra& operator=(const ConvolutionAlgebra&) = delete;

  const ESet& eset() const noexcept { return x_; }

  // Strata with at least one point, in subspace order.
  std::size_t stratum_count() const noexcept { return strata_.size(); }
  const Subspace& stratum_subspace(std::size_t s) const { return strata_.at(s); }
  const std::vector<std::size_t>& stratum_points(std::size_t s) const { return stratum_points_.at(s); }
  std::size_t stratum_of_point(std::size_t x) const { return point_stratum_.at(x); }
  // Index of a stratum subspace, or stratum_count() when X_A is empty.
  std::size_t find_stratum(const Subspace& a) const;

  std::size_t pair_orbit_count() const noexcept { return pair_orbits_.size(); }
  const PairOrbit& pair_orbit(std::size_t id) const { return pair_orbits_.at(id); }
  std::size_t pair_orbit_of(std::size_t x, std::size_t y) const { return pair_orbit_of_[x * x_.size() + y]; }
  std::size_t transpose(std::size_t id) const { return transpose_.at(id); }
  std::pair<std::size_t, std::size_t> block_of(std::size_t id) const { return block_of_.at(id); }
  const std::vector<std::size_t>& block_orbits(std::size_t sa, std::size_t sb) const;
  const Subspace& meet(std::size_t sa, std::size_t sb) const { return meet2_[sa * strata_.size() + sb]; }

  std::size_t dim() const noexcept { return labels_.size(); }
  const BasisLabel& label(std::size_t i) const { return labels_.at(i); }
  std::size_t label_index(std::size_t orbit, std::uint32_t eps_values) const;
  std::size_t sharp_label(std::size_t i) const;
  std::string label_text(std::size_t i) const;

  AlgebraElement zero() const { return AlgebraElement(this); }
  AlgebraElement basis_element(std::size_t i) const;
  AlgebraElement unit() const;
  AlgebraElement from_dense(const RationalVector& v) const;

  // Product through the structure table (orbit-level formula).
  AlgebraElement star(const AlgebraElement& f, const AlgebraElement& g) const;
  // Product evaluated from the defining sum over (y, eps1, eps2).
  AlgebraElement star_definitional(const AlgebraElement& f, const AlgebraElement& g) const;
  // N_{A,B,C} sum_eps [O . O']^eps for two basis labels.
  AlgebraElement star_orbit_level(std::size_t a, std::size_t b) const;
  const ProductTerms& product(std::size_t a, std::size_t b) const { return table_[a * labels_.size() + b]; }

  AlgebraElement sharp(const AlgebraElement& f) const;

  // Throws precondition-violation unless p2(O) = p1(O').
  BulletResult bullet(std::size_t orbit, std::size_t orbit2) const;
  // Pair orbits making up the E x B orbit of a pair orbit (B acting on the first factor).
  std::vector<std::size_t> eb_orbit_parts(const Subspace& b, std::size_t orbit) const;

  // Matrix of m -> m * b_i in row convention, one per basis label.
  std::vector<Matrix> regular_representation() const;
  Matrix right_multiplication(const AlgebraElement& b) const;
  // Dimension of the kernel of (a, b) -> trace of right multiplication by a * b.
  std::size_t radical_dimension() const;

 private:
  std::size_t triple_index(std::size_t sa, std::size_t sb, std::size_t sc) const {
    return (sa * strata_.size() + sb) * strata_.size() + sc;
  }
  void check_owner(const AlgebraElement& f) const;
  ProductTerms compute_product(std::size_t a, std::size_t b) const;

  struct Triple {
    Subspace meet_abc;
    std::uint64_t n_abc = 0;
  };

  ESet x_;
  std::vector<Subspace> strata_;
  std::vector<std::vector<std::size_t>> stratum_points_;
  std::vector<std::size_t> point_stratum_;
  std::vector<Subspace> meet2_;
  std::vector<Triple> triples_;

  std::vector<PairOrbit> pair_orbits_;
  std::vector<std::size_t> pair_orbit_of_;
  std::vector<std::size_t> transpose_;
  std::vector<std::pair<std::size_t, std::size_t>> block_of_;
  std::vector<std::vector<std::size_t>> block_orbits_;

  std::vector<BasisLabel> labels_;
  std::vector<std::size_t> label_offset_;  // first label of each pair orbit
  std::vector<ProductTerms> table_;
};

}  // namespace fconv
