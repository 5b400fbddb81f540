#pragma once

// Dense linear algebra over the rationals, exact.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <gmpxx.h>

namespace fconv {

using Rational = mpq_class;
using RationalVector = std::vector<Rational>;

class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static Matrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<Rational> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const Rational> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  Rational trace() const;
  bool is_zero() const;
  // Every entry is a nonnegative integer.
  bool is_natural() const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);

struct RrefResult {
  Matrix reduced;                   // only the nonzero rows, in reduced echelon form
  std::vector<std::size_t> pivots;  // pivot column of each row
};

RrefResult rref(Matrix m);
std::size_t rank(const Matrix& m);
bool is_invertible(const Matrix& m);

// Basis of {x : x * m = 0} (left null space, row vectors).
std::vector<RationalVector> left_nullspace(const Matrix& m);
// Basis of {x : m * x = 0}.
std::vector<RationalVector> nullspace(const Matrix& m);

// Rank modulo a prime of an integer matrix. A lower bound on the rational rank.
std::size_t rank_mod_p(const std::vector<std::vector<std::int64_t>>& m, std::uint64_t p);

// Row space of a fixed family of generators, with coordinate solving.
//
// coordinates(v) returns c with v = sum_i c_i * generator_i when v lies in the
// span; with dependent generators the returned c is one particular solution.
class RowSpace {
 public:
  RowSpace() = default;
  RowSpace(std::size_t width, const std::vector<RationalVector>& generators);

  std::size_t width() const noexcept { return width_; }
  std::size_t rank() const noexcept { return pivots_.size(); }
  std::size_t generator_count() const noexcept { return generator_count_; }
  const std::vector<std::size_t>& pivots() const noexcept { return pivots_; }
  const Matrix& reduced() const noexcept { return reduced_; }

  bool contains(std::span<const Rational> v) const;
  std::optional<RationalVector> coordinates(std::span<const Rational> v) const;
  bool contains_subspace(const RowSpace& other) const;

 private:
  std::size_t width_ = 0;
  std::size_t generator_count_ = 0;
  Matrix reduced_;     // rank x width
  Matrix transform_;   // rank x generator_count, reduced = transform * generators
  std::vector<std::size_t> pivots_;
};

bool same_span(const RowSpace& a, const RowSpace& b);

}  // namespace fconv
