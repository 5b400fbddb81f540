#include "fconv/exact_matrix.hpp"

#include <utility>

#include "fconv/error.hpp"

namespace fconv {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::invalid_input: return "invalid-input";
    case ErrorKind::resource_limit: return "resource-limit";
    case ErrorKind::precondition_violation: return "precondition-violation";
    case ErrorKind::positivity_violation: return "positivity-violation";
    case ErrorKind::internal_error: return "internal-error";
    case ErrorKind::parse_error: return "parse-error";
  }
  return "unknown";
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Rational Matrix::trace() const {
  Rational t = 0;
  for (std::size_t i = 0; i < rows_ && i < cols_; ++i) t += (*this)(i, i);
  return t;
}

bool Matrix::is_zero() const {
  for (const auto& x : data_)
    if (sgn(x) != 0) return false;
  return true;
}

bool Matrix::is_natural() const {
  for (const auto& x : data_)
    if (sgn(x) < 0 || x.get_den() != 1) return false;
  return true;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) fail(ErrorKind::invalid_input, "matrix product: shape mismatch");
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Rational& aik = a(i, k);
      if (sgn(aik) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j)
        if (sgn(b(k, j)) != 0) c(i, j) += aik * b(k, j);
    }
  return c;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    fail(ErrorKind::invalid_input, "matrix sum: shape mismatch");
  Matrix c = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) += b(i, j);
  return c;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    fail(ErrorKind::invalid_input, "matrix difference: shape mismatch");
  Matrix c = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) -= b(i, j);
  return c;
}

namespace {

// In-place Gauss-Jordan on the first `pivot_cols` columns; returns pivot columns.
std::vector<std::size_t> gauss_jordan(Matrix& m, std::size_t pivot_cols) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  Rational factor;
  for (std::size_t c = 0; c < pivot_cols && r < m.rows(); ++c) {
    std::size_t sel = r;
    while (sel < m.rows() && sgn(m(sel, c)) == 0) ++sel;
    if (sel == m.rows()) continue;
    if (sel != r)
      for (std::size_t j = 0; j < m.cols(); ++j) swap(m(sel, j), m(r, j));
    if (m(r, c) != 1) {
      const Rational inv = 1 / m(r, c);
      for (std::size_t j = c; j < m.cols(); ++j)
        if (sgn(m(r, j)) != 0) m(r, j) *= inv;
    }
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || sgn(m(i, c)) == 0) continue;
      factor = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j)
        if (sgn(m(r, j)) != 0) m(i, j) -= factor * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

Matrix take_rows(const Matrix& m, std::size_t count, std::size_t col_begin, std::size_t col_end) {
  Matrix out(count, col_end - col_begin);
  for (std::size_t i = 0; i < count; ++i)
    for (std::size_t j = col_begin; j < col_end; ++j) out(i, j - col_begin) = m(i, j);
  return out;
}

}  // namespace

RrefResult rref(Matrix m) {
  auto pivots = gauss_jordan(m, m.cols());
  return {take_rows(m, pivots.size(), 0, m.cols()), std::move(pivots)};
}

std::size_t rank(const Matrix& m) {
  Matrix copy = m;
  return gauss_jordan(copy, copy.cols()).size();
}

bool is_invertible(const Matrix& m) { return m.rows() == m.cols() && rank(m) == m.rows(); }

std::vector<RationalVector> nullspace(const Matrix& m) {
  auto [reduced, pivots] = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<RationalVector> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    RationalVector x(m.cols());
    x[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = -reduced(r, free);
    basis.push_back(std::move(x));
  }
  return basis;
}

std::vector<RationalVector> left_nullspace(const Matrix& m) {
  Matrix t(m.cols(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) t(j, i) = m(i, j);
  return nullspace(t);
}

std::size_t rank_mod_p(const std::vector<std::vector<std::int64_t>>& input, std::uint64_t p) {
  using u128 = unsigned __int128;
  if (input.empty()) return 0;
  const std::size_t rows = input.size();
  const std::size_t cols = input.front().size();
  std::vector<std::vector<std::uint64_t>> m(rows, std::vector<std::uint64_t>(cols));
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) {
      const std::int64_t v = input[i][j] % static_cast<std::int64_t>(p);
      m[i][j] = static_cast<std::uint64_t>(v < 0 ? v + static_cast<std::int64_t>(p) : v);
    }
  auto pow_mod = [p](std::uint64_t b, std::uint64_t e) {
    std::uint64_t r = 1;
    for (; e; e >>= 1, b = static_cast<std::uint64_t>(u128(b) * b % p))
      if (e & 1) r = static_cast<std::uint64_t>(u128(r) * b % p);
    return r;
  };
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t sel = r;
    while (sel < rows && m[sel][c] == 0) ++sel;
    if (sel == rows) continue;
    std::swap(m[sel], m[r]);
    const std::uint64_t inv = pow_mod(m[r][c], p - 2);
    for (std::size_t j = c; j < cols; ++j) m[r][j] = static_cast<std::uint64_t>(u128(m[r][j]) * inv % p);
    for (std::size_t i = r + 1; i < rows; ++i) {
      const std::uint64_t f = m[i][c];
      if (f == 0) continue;
      for (std::size_t j = c; j < cols; ++j)
        m[i][j] = static_cast<std::uint64_t>((m[i][j] + u128(p - f) * m[r][j]) % p);
    }
    ++r;
  }
  return r;
}

RowSpace::RowSpace(std::size_t width, const std::vector<RationalVector>& generators)
    : width_(width), generator_count_(generators.size()) {
  const std::size_t k = generators.size();
  Matrix aug(k, width + k);
  for (std::size_t i = 0; i < k; ++i) {
    if (generators[i].size() != width) fail(ErrorKind::invalid_input, "row space: width mismatch");
    for (std::size_t j = 0; j < width; ++j) aug(i, j) = generators[i][j];
    aug(i, width + i) = 1;
  }
  pivots_ = gauss_jordan(aug, width);
  reduced_ = take_rows(aug, pivots_.size(), 0, width);
  transform_ = take_rows(aug, pivots_.size(), width, width + k);
}

bool RowSpace::contains(std::span<const Rational> v) const {
  if (v.size() != width_) fail(ErrorKind::invalid_input, "row space: width mismatch");
  RationalVector residual(v.begin(), v.end());
  for (std::size_t r = 0; r < pivots_.size(); ++r) {
    const Rational d = residual[pivots_[r]];
    if (sgn(d) == 0) continue;
    // pivot columns of later rows are zero in this row, so one pass suffices
    for (std::size_t j = 0; j < width_; ++j)
      if (sgn(reduced_(r, j)) != 0) residual[j] -= d * reduced_(r, j);
  }
  for (const auto& x : residual)
    if (sgn(x) != 0) return false;
  return true;
}

std::optional<RationalVector> RowSpace::coordinates(std::span<const Rational> v) const {
  if (!contains(v)) return std::nullopt;
  RationalVector c(generator_count_);
  for (std::size_t r = 0; r < pivots_.size(); ++r) {
    const Rational& d = v[pivots_[r]];
    if (sgn(d) == 0) continue;
    for (std::size_t i = 0; i < generator_count_; ++i)
      if (sgn(transform_(r, i)) != 0) c[i] += d * transform_(r, i);
  }
  return c;
}

bool RowSpace::contains_subspace(const RowSpace& other) const {
  for (std::size_t r = 0; r < other.rank(); ++r)
    if (!contains(other.reduced().row(r))) return false;
  return true;
}

bool same_span(const RowSpace& a, const RowSpace& b) {
  return a.width() == b.width() && a.reduced() == b.reduced() && a.pivots() == b.pivots();
}

}  // namespace fconv
