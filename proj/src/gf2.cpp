#include "fconv/gf2.hpp"

#include <algorithm>
#include <bit>

#include "fconv/error.hpp"

namespace fconv::gf2 {

namespace {

void check_width(unsigned n) {
  if (n > max_ambient_dim)
    fail(ErrorKind::invalid_input, "ambient dimension " + std::to_string(n) + " exceeds " +
                                       std::to_string(max_ambient_dim));
}

std::uint32_t width_mask(unsigned n) {
  return n >= 32 ? ~std::uint32_t{0} : (std::uint32_t{1} << n) - 1;
}

unsigned low_bit(std::uint32_t v) { return static_cast<unsigned>(std::countr_zero(v)); }

// Text order on packed vectors: first differing coordinate decides, 0 < 1.
std::strong_ordering text_order(std::uint32_t a, std::uint32_t b) {
  const std::uint32_t d = a ^ b;
  if (d == 0) return std::strong_ordering::equal;
  return (a & (d & (~d + 1))) ? std::strong_ordering::greater : std::strong_ordering::less;
}

// Inserts v into rows kept in reduced echelon form (unsorted).
bool insert_reduced(std::vector<std::uint32_t>& rows, std::uint32_t v) {
  for (auto r : rows)
    if (v & (std::uint32_t{1} << low_bit(r))) v ^= r;
  if (v == 0) return false;
  const std::uint32_t p = std::uint32_t{1} << low_bit(v);
  for (auto& r : rows)
    if (r & p) r ^= v;
  rows.push_back(v);
  return true;
}

void sort_by_pivot(std::vector<std::uint32_t>& rows) {
  std::sort(rows.begin(), rows.end(),
            [](std::uint32_t a, std::uint32_t b) { return low_bit(a) < low_bit(b); });
}

}  // namespace

GF2Vector::GF2Vector(std::uint32_t bits, unsigned width) : bits_(bits), width_(width) {
  check_width(width);
  if (bits & ~width_mask(width)) fail(ErrorKind::invalid_input, "vector has bits beyond its width");
}

GF2Vector GF2Vector::parse(std::string_view text) {
  check_width(static_cast<unsigned>(text.size()));
  std::uint32_t bits = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '1')
      bits |= std::uint32_t{1} << i;
    else if (text[i] != '0')
      fail(ErrorKind::invalid_input, "bitstring '" + std::string(text) + "' has a non-binary character");
  }
  return GF2Vector(bits, static_cast<unsigned>(text.size()));
}

std::string GF2Vector::to_string() const {
  std::string s(width_, '0');
  for (unsigned i = 0; i < width_; ++i)
    if (bit(i)) s[i] = '1';
  return s;
}

GF2Vector operator+(GF2Vector a, GF2Vector b) {
  if (a.width_ != b.width_) fail(ErrorKind::invalid_input, "vector width mismatch");
  return GF2Vector(a.bits_ ^ b.bits_, a.width_);
}

Subspace::Subspace(unsigned ambient_dim) : ambient_dim_(ambient_dim) { check_width(ambient_dim); }

Subspace Subspace::full(unsigned ambient_dim) {
  std::vector<std::uint32_t> units;
  for (unsigned i = 0; i < ambient_dim; ++i) units.push_back(std::uint32_t{1} << i);
  return span_bits(units, ambient_dim);
}

std::vector<GF2Vector> Subspace::basis() const {
  std::vector<GF2Vector> out;
  out.reserve(rows_.size());
  for (auto r : rows_) out.emplace_back(r, ambient_dim_);
  return out;
}

unsigned Subspace::pivot(std::size_t row) const { return low_bit(rows_.at(row)); }

std::uint32_t Subspace::reduce(std::uint32_t v) const noexcept {
  for (auto r : rows_)
    if (v & (std::uint32_t{1} << low_bit(r))) v ^= r;
  return v;
}

bool Subspace::contains(const Subspace& other) const noexcept {
  if (other.ambient_dim_ != ambient_dim_) return false;
  return std::all_of(other.rows_.begin(), other.rows_.end(),
                     [this](std::uint32_t r) { return contains(r); });
}

std::vector<std::uint32_t> Subspace::elements() const {
  std::vector<std::uint32_t> out(order());
  for (std::uint32_t mask = 0; mask < out.size(); ++mask) {
    std::uint32_t v = 0;
    for (std::size_t i = 0; i < rows_.size(); ++i)
      if (mask & (std::uint32_t{1} << i)) v ^= rows_[i];
    out[mask] = v;
  }
  return out;
}

std::uint32_t Subspace::coefficients(std::uint32_t v) const noexcept {
  std::uint32_t mask = 0;
  for (std::size_t i = 0; i < rows_.size(); ++i)
    if (v & (std::uint32_t{1} << low_bit(rows_[i]))) mask |= std::uint32_t{1} << i;
  return mask;
}

std::string Subspace::to_string() const {
  std::string s = "<";
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    if (i) s += ',';
    s += GF2Vector(rows_[i], ambient_dim_).to_string();
  }
  return s + ">";
}

std::strong_ordering operator<=>(const Subspace& a, const Subspace& b) {
  if (auto c = a.ambient_dim_ <=> b.ambient_dim_; c != 0) return c;
  if (auto c = a.rows_.size() <=> b.rows_.size(); c != 0) return c;
  for (std::size_t i = 0; i < a.rows_.size(); ++i)
    if (auto c = text_order(a.rows_[i], b.rows_[i]); c != 0) return c;
  return std::strong_ordering::equal;
}

Subspace span_bits(std::span<const std::uint32_t> vectors, unsigned n) {
  Subspace s(n);
  for (auto v : vectors) {
    if (v & ~width_mask(n)) fail(ErrorKind::invalid_input, "vector width mismatch");
    insert_reduced(s.rows_, v);
  }
  sort_by_pivot(s.rows_);
  return s;
}

Subspace canonicalize(std::span<const GF2Vector> vectors, unsigned n) {
  check_width(n);
  std::vector<std::uint32_t> bits;
  bits.reserve(vectors.size());
  for (const auto& v : vectors) {
    if (v.width() != n)
      fail(ErrorKind::invalid_input, "vector '" + v.to_string() + "' does not have width " +
                                         std::to_string(n));
    bits.push_back(v.bits());
  }
  return span_bits(bits, n);
}

Subspace intersect(const Subspace& u, const Subspace& v) {
  if (u.ambient_dim() != v.ambient_dim())
    fail(ErrorKind::invalid_input, "intersect: ambient dimension mismatch");
  const unsigned n = u.ambient_dim();
  // Zassenhaus: rows (u|u) and (v|0); rows whose first block vanishes span U meet V.
  std::vector<std::uint32_t> rows;
  for (auto r : u.rows()) insert_reduced(rows, r | (r << n));
  for (auto r : v.rows()) insert_reduced(rows, r);
  std::vector<std::uint32_t> meet;
  for (auto r : rows)
    if ((r & width_mask(n)) == 0) meet.push_back(r >> n);
  return span_bits(meet, n);
}

Subspace subspace_sum(const Subspace& u, const Subspace& v) {
  if (u.ambient_dim() != v.ambient_dim())
    fail(ErrorKind::invalid_input, "subspace_sum: ambient dimension mismatch");
  std::vector<std::uint32_t> rows = u.rows();
  rows.insert(rows.end(), v.rows().begin(), v.rows().end());
  return span_bits(rows, u.ambient_dim());
}

std::uint64_t galois_number(unsigned n) {
  std::uint64_t prev = 1, cur = 2;  // G(0), G(1)
  if (n == 0) return prev;
  for (unsigned k = 1; k < n; ++k) {
    const std::uint64_t next = 2 * cur + ((std::uint64_t{1} << k) - 1) * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

std::vector<Subspace> all_subspaces(unsigned n) {
  check_width(n);
  constexpr std::uint64_t limit = 500000;
  if (galois_number(n) > limit)
    fail(ErrorKind::resource_limit, "subspace lattice of dimension " + std::to_string(n) +
                                        " has more than " + std::to_string(limit) + " members");
  std::vector<Subspace> out;
  for (std::uint32_t pivot_set = 0; pivot_set < (std::uint32_t{1} << n); ++pivot_set) {
    std::vector<unsigned> pivots;
    for (unsigned i = 0; i < n; ++i)
      if (pivot_set & (std::uint32_t{1} << i)) pivots.push_back(i);
    // free slots: for row k, columns above its pivot that are not pivots
    std::vector<std::pair<std::size_t, unsigned>> slots;
    for (std::size_t k = 0; k < pivots.size(); ++k)
      for (unsigned c = pivots[k] + 1; c < n; ++c)
        if (!(pivot_set & (std::uint32_t{1} << c))) slots.emplace_back(k, c);
    for (std::uint64_t fill = 0; fill < (std::uint64_t{1} << slots.size()); ++fill) {
      std::vector<std::uint32_t> rows;
      for (auto p : pivots) rows.push_back(std::uint32_t{1} << p);
      for (std::size_t s = 0; s < slots.size(); ++s)
        if (fill & (std::uint64_t{1} << s)) rows[slots[s].first] |= std::uint32_t{1} << slots[s].second;
      out.push_back(span_bits(rows, n));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

LinearForm::LinearForm(Subspace domain, std::uint32_t values)
    : domain_(std::move(domain)), values_(values) {
  if (values_ & ~width_mask(domain_.dim()))
    fail(ErrorKind::invalid_input, "linear form has values beyond its domain dimension");
}

unsigned LinearForm::operator()(std::uint32_t v) const {
  if (!domain_.contains(v)) fail(ErrorKind::invalid_input, "linear form evaluated outside its domain");
  return static_cast<unsigned>(std::popcount(values_ & domain_.coefficients(v)) & 1);
}

std::string LinearForm::to_string() const {
  std::string s(domain_.dim(), '0');
  for (unsigned i = 0; i < domain_.dim(); ++i)
    if (values_ & (std::uint32_t{1} << i)) s[i] = '1';
  return s;
}

LinearForm operator+(const LinearForm& a, const LinearForm& b) {
  if (a.domain_ != b.domain_) fail(ErrorKind::invalid_input, "sum of forms on different domains");
  return LinearForm(a.domain_, a.values_ ^ b.values_);
}

std::vector<LinearForm> forms_on(const Subspace& v) {
  std::vector<LinearForm> out;
  out.reserve(v.order());
  for (std::uint32_t m = 0; m < v.order(); ++m) out.emplace_back(v, m);
  return out;
}

LinearForm restrict(const LinearForm& phi, const Subspace& w) {
  if (!phi.domain().contains(w)) fail(ErrorKind::invalid_input, "restrict: target is not a subspace of the domain");
  std::uint32_t values = 0;
  for (std::size_t j = 0; j < w.rows().size(); ++j)
    if (phi(w.rows()[j])) values |= std::uint32_t{1} << j;
  return LinearForm(w, values);
}

std::vector<LinearForm> fiber(const Subspace& v, const Subspace& w, const LinearForm& alpha) {
  if (!v.contains(w)) fail(ErrorKind::invalid_input, "fiber: W is not a subspace of V");
  if (alpha.domain() != w) fail(ErrorKind::invalid_input, "fiber: alpha is not a form on W");
  const unsigned dv = v.dim();
  // Constraint j: <x, coeff_V(w_j)> = alpha_j, packed as coefficient bits plus rhs at bit dv.
  std::vector<std::uint32_t> system;
  for (std::size_t j = 0; j < w.rows().size(); ++j) {
    std::uint32_t row = v.coefficients(w.rows()[j]);
    if (alpha.values() & (std::uint32_t{1} << j)) row |= std::uint32_t{1} << dv;
    insert_reduced(system, row);
  }
  // Restriction is surjective, so the system is consistent and has full rank.
  std::uint32_t pivot_mask = 0, particular = 0;
  for (auto row : system) {
    const unsigned p = low_bit(row);
    if (p >= dv) fail(ErrorKind::internal_error, "fiber: inconsistent restriction system");
    pivot_mask |= std::uint32_t{1} << p;
    if (row & (std::uint32_t{1} << dv)) particular |= std::uint32_t{1} << p;
  }
  std::vector<std::uint32_t> kernel;
  for (unsigned f = 0; f < dv; ++f) {
    if (pivot_mask & (std::uint32_t{1} << f)) continue;
    std::uint32_t x = std::uint32_t{1} << f;
    for (auto row : system)
      if (row & (std::uint32_t{1} << f)) x |= std::uint32_t{1} << low_bit(row);
    kernel.push_back(x);
  }
  std::vector<std::uint32_t> masks;
  for (std::uint32_t c = 0; c < (std::uint32_t{1} << kernel.size()); ++c) {
    std::uint32_t x = particular;
    for (std::size_t k = 0; k < kernel.size(); ++k)
      if (c & (std::uint32_t{1} << k)) x ^= kernel[k];
    masks.push_back(x);
  }
  std::sort(masks.begin(), masks.end());
  std::vector<LinearForm> out;
  out.reserve(masks.size());
  for (auto m : masks) out.emplace_back(v, m);
  return out;
}

}  // namespace fconv::gf2
