#pragma once

// Linear algebra over the two-element field: vectors of E = (Z/2)^n, the
// subspace lattice of E, and linear forms on subspaces.
//
// Bit i of a packed vector is coordinate i; in text, coordinate 0 is the
// leftmost character.

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace fconv::gf2 {

inline constexpr unsigned max_ambient_dim = 16;

class GF2Vector {
 public:
  GF2Vector() = default;
  GF2Vector(std::uint32_t bits, unsigned width);

  static GF2Vector parse(std::string_view text);

  std::uint32_t bits() const noexcept { return bits_; }
  unsigned width() const noexcept { return width_; }
  bool is_zero() const noexcept { return bits_ == 0; }
  bool bit(unsigned i) const noexcept { return (bits_ >> i) & 1u; }

  std::string to_string() const;

  friend GF2Vector operator+(GF2Vector a, GF2Vector b);
  friend bool operator==(const GF2Vector&, const GF2Vector&) = default;

 private:
  std::uint32_t bits_ = 0;
  unsigned width_ = 0;
};

// Canonical form: rows nonzero, pivot (lowest set coordinate) strictly
// increasing, every pivot column clear in all other rows.
class Subspace {
 public:
  Subspace() = default;
  explicit Subspace(unsigned ambient_dim);

  static Subspace full(unsigned ambient_dim);

  unsigned ambient_dim() const noexcept { return ambient_dim_; }
  unsigned dim() const noexcept { return static_cast<unsigned>(rows_.size()); }
  std::uint64_t order() const noexcept { return std::uint64_t{1} << rows_.size(); }

  const std::vector<std::uint32_t>& rows() const noexcept { return rows_; }
  std::vector<GF2Vector> basis() const;
  unsigned pivot(std::size_t row) const;

  // Canonical coset representative of v modulo this subspace.
  std::uint32_t reduce(std::uint32_t v) const noexcept;
  bool contains(std::uint32_t v) const noexcept { return reduce(v) == 0; }
  bool contains(const Subspace& other) const noexcept;

  // All 2^dim elements, ordered by their coefficient mask on the basis.
  std::vector<std::uint32_t> elements() const;
  // Coefficients of a member in the canonical basis, as a mask over rows.
  std::uint32_t coefficients(std::uint32_t v) const noexcept;

  std::string to_string() const;

  friend bool operator==(const Subspace&, const Subspace&) = default;
  // Ordered by (ambient, dim, lexicographic text of the basis).
  friend std::strong_ordering operator<=>(const Subspace& a, const Subspace& b);

 private:
  friend Subspace canonicalize(std::span<const GF2Vector>, unsigned);
  friend Subspace span_bits(std::span<const std::uint32_t>, unsigned);

  unsigned ambient_dim_ = 0;
  std::vector<std::uint32_t> rows_;
};

Subspace canonicalize(std::span<const GF2Vector> vectors, unsigned n);
Subspace span_bits(std::span<const std::uint32_t> vectors, unsigned n);
Subspace intersect(const Subspace& u, const Subspace& v);
Subspace subspace_sum(const Subspace& u, const Subspace& v);

// Every subspace of (Z/2)^n ordered by (dim, lexicographic basis).
std::vector<Subspace> all_subspaces(unsigned n);
// Number of subspaces of (Z/2)^n, i.e. the sum of the 2-binomial coefficients.
std::uint64_t galois_number(unsigned n);

class LinearForm {
 public:
  LinearForm() = default;
  LinearForm(Subspace domain, std::uint32_t values);

  const Subspace& domain() const noexcept { return domain_; }
  // Bit i is the value on canonical basis row i of the domain.
  std::uint32_t values() const noexcept { return values_; }
  bool is_zero() const noexcept { return values_ == 0; }

  unsigned operator()(std::uint32_t v) const;

  std::string to_string() const;

  friend LinearForm operator+(const LinearForm& a, const LinearForm& b);
  friend bool operator==(const LinearForm&, const LinearForm&) = default;

 private:
  Subspace domain_;
  std::uint32_t values_ = 0;
};

std::vector<LinearForm> forms_on(const Subspace& v);
LinearForm restrict(const LinearForm& phi, const Subspace& w);
// Forms on v whose restriction to w equals alpha, ordered by value mask.
std::vector<LinearForm> fiber(const Subspace& v, const Subspace& w, const LinearForm& alpha);

}  // namespace fconv::gf2
