#include "fconv/ideal.hpp"

#include <algorithm>
#include <optional>
#include <set>

#include "fconv/error.hpp"

namespace fconv {

IdealBasis ideal_basis(const ConvolutionAlgebra& alg, std::size_t orbit, const Subspace& b) {
  const ESet& x = alg.eset();
  if (orbit >= x.orbit_count()) fail(ErrorKind::invalid_input, "ideal_basis: unknown orbit " + std::to_string(orbit));
  if (b.ambient_dim() != x.e_dim()) fail(ErrorKind::invalid_input, "ideal_basis: B has the wrong ambient dimension");
  IdealBasis ib{orbit, x.orbit_stabilizer(orbit), b, {}, {}};
  const std::size_t sa = alg.find_stratum(ib.a);
  for (std::size_t sc = 0; sc < alg.stratum_count(); ++sc) {
    const Subspace& ac = alg.meet(sa, sc);
    const Subspace d = gf2::intersect(ac, b);
    std::set<std::size_t> assigned;
    for (auto id : alg.block_orbits(sa, sc)) {
      if (x.orbit_of(alg.pair_orbit(id).rep().first) != orbit || assigned.count(id)) continue;
      auto parts = alg.eb_orbit_parts(b, id);
      assigned.insert(parts.begin(), parts.end());
      for (const auto& alpha : gf2::forms_on(d)) {
        AlgebraElement f = alg.zero();
        for (const auto& eps : gf2::fiber(ac, d, alpha))
          for (auto p : parts) f.add(alg.label_index(p, eps.values()), 1);
        ib.elements.push_back(std::move(f));
        ib.index.push_back({sc, parts, alpha});
      }
    }
  }
  return ib;
}

RowSpace span_of(const ConvolutionAlgebra& alg, const std::vector<AlgebraElement>& elements) {
  std::vector<RationalVector> rows;
  rows.reserve(elements.size());
  for (const auto& e : elements) rows.push_back(e.dense());
  return RowSpace(alg.dim(), rows);
}

CheckReport verify_independent(const ConvolutionAlgebra& alg, const IdealBasis& ib) {
  CheckReport r;
  r.checked = ib.elements.size();
  const auto span = span_of(alg, ib.elements);
  if (span.rank() != ib.elements.size())
    r.record_failure("rank " + std::to_string(span.rank()) + " < " + std::to_string(ib.elements.size()));
  return r;
}

namespace {

// Coordinates in the span of a list of independent elements. Elements with
// pairwise disjoint supports are read off label by label; anything else
// goes through a dense solve.
class Coordinates {
 public:
  Coordinates(const ConvolutionAlgebra& alg, const std::vector<AlgebraElement>& basis) : basis_(basis) {
    owner_.assign(alg.dim(), none);
    for (std::size_t j = 0; j < basis.size() && disjoint_; ++j)
      for (const auto& [label, c] : basis[j].terms()) {
        if (owner_[label] != none) disjoint_ = false;
        owner_[label] = j;
      }
    if (!disjoint_) dense_.emplace(span_of(alg, basis));
  }

  std::optional<RationalVector> operator()(const AlgebraElement& v) const {
    if (dense_) return dense_->coordinates(v.dense());
    RationalVector out(basis_.size());
    std::vector<std::size_t> hits(basis_.size(), 0);
    std::vector<bool> set(basis_.size(), false);
    for (const auto& [label, c] : v.terms()) {
      const auto j = owner_[label];
      if (j == none) return std::nullopt;
      Rational q = c / basis_[j].coefficient(label);
      if (!set[j]) {
        out[j] = q;
        set[j] = true;
      } else if (out[j] != q) {
        return std::nullopt;
      }
      ++hits[j];
    }
    for (std::size_t j = 0; j < basis_.size(); ++j)
      if (set[j] && hits[j] != basis_[j].terms().size()) return std::nullopt;
    return out;
  }

 private:
  static constexpr std::size_t none = static_cast<std::size_t>(-1);
  const std::vector<AlgebraElement>& basis_;
  std::vector<std::size_t> owner_;
  bool disjoint_ = true;
  std::optional<RowSpace> dense_;
};

}  // namespace

CheckReport verify_right_ideal(const ConvolutionAlgebra& alg, const IdealBasis& ib) {
  CheckReport r;
  const Coordinates coords(alg, ib.elements);
  for (std::size_t i = 0; i < ib.elements.size(); ++i)
    for (std::size_t g = 0; g < alg.dim(); ++g) {
      ++r.checked;
      if (!coords(alg.star(ib.elements[i], alg.basis_element(g))))
        r.record_failure("f_" + std::to_string(i) + " * " + alg.label_text(g) + " leaves the span");
    }
  return r;
}

RowSpace generator_span(const ConvolutionAlgebra& alg, std::size_t pair_orbit, std::uint32_t eps1) {
  const auto gen = alg.basis_element(alg.label_index(pair_orbit, eps1));
  std::vector<AlgebraElement> products;
  for (std::size_t g = 0; g < alg.dim(); ++g) {
    auto p = alg.star(gen, alg.basis_element(g));
    if (!p.is_zero()) products.push_back(std::move(p));
  }
  return span_of(alg, products);
}

std::vector<Matrix> right_ideal_action(const ConvolutionAlgebra& alg, const std::vector<AlgebraElement>& basis) {
  const std::size_t k = basis.size();
  if (span_of(alg, basis).rank() != k) fail(ErrorKind::invalid_input, "right_ideal_action: basis is not independent");
  const Coordinates coordinates(alg, basis);
  std::vector<Matrix> out;
  out.reserve(alg.dim());
  for (std::size_t g = 0; g < alg.dim(); ++g) {
    const auto gs = alg.basis_element(alg.sharp_label(g));
    Matrix m(k, k);
    for (std::size_t i = 0; i < k; ++i) {
      auto coords = coordinates(alg.star(basis[i], gs));
      if (!coords) fail(ErrorKind::invalid_input, "right_ideal_action: span is not a right ideal");
      for (std::size_t j = 0; j < k; ++j) m(i, j) = (*coords)[j];
    }
    out.push_back(std::move(m));
  }
  return out;
}

std::vector<ActionMatrix> action_matrices(const ConvolutionAlgebra& alg, const IdealBasis& ib) {
  auto mats = right_ideal_action(alg, ib.elements);
  std::vector<ActionMatrix> out;
  out.reserve(mats.size());
  for (std::size_t g = 0; g < mats.size(); ++g) {
    if (!mats[g].is_natural())
      fail(ErrorKind::positivity_violation, "action of " + alg.label_text(g) + " has an entry outside N");
    out.push_back({g, std::move(mats[g])});
  }
  return out;
}

LabelPartition partition_structure(const ConvolutionAlgebra& alg, const IdealBasis& ib) {
  LabelPartition p;
  std::vector<int> seen(alg.dim(), 0);
  for (const auto& f : ib.elements) {
    std::vector<std::size_t> block;
    for (const auto& [label, c] : f.terms()) {
      block.push_back(label);
      if (c != 1 || seen[label]++) p.disjoint = false;
    }
    p.blocks.push_back(std::move(block));
  }
  const ESet& x = alg.eset();
  for (std::size_t label = 0; label < alg.dim(); ++label) {
    const auto& orbit = alg.pair_orbit(alg.label(label).orbit);
    const bool in_l = x.orbit_of(orbit.rep().first) == ib.orbit;
    if (in_l != (seen[label] > 0)) p.covers = false;
  }
  return p;
}

CheckReport verify_bullet_cover(const ConvolutionAlgebra& alg, std::size_t pair_orbit) {
  CheckReport r;
  const ESet& x = alg.eset();
  const auto [sa, sb] = alg.block_of(pair_orbit);
  const auto& o = alg.pair_orbit(pair_orbit);
  const std::size_t source = x.orbit_of(o.rep().first);
  const std::size_t middle = x.orbit_of(o.rep().second);
  const Subspace& b = alg.stratum_subspace(sb);
  for (std::size_t sc = 0; sc < alg.stratum_count(); ++sc) {
    std::set<std::vector<PointPair>> products, expected;
    for (auto id2 : alg.block_orbits(sb, sc)) {
      if (x.orbit_of(alg.pair_orbit(id2).rep().first) != middle) continue;
      products.insert(alg.bullet(pair_orbit, id2).image);
    }
    for (auto& m : eb_orbits(x, alg.stratum_subspace(sa), b, alg.stratum_subspace(sc)))
      if (x.orbit_of(m.rep().first) == source) expected.insert(std::move(m.members));
    ++r.checked;
    if (products != expected)
      r.record_failure("C = " + alg.stratum_subspace(sc).to_string() + ": " + std::to_string(products.size()) +
                       " products vs " + std::to_string(expected.size()) + " E x B orbits");
  }
  return r;
}

}  // namespace fconv
