#include "fconv/algebra.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "fconv/error.hpp"

namespace fconv {

Rational AlgebraElement::coefficient(std::size_t label) const {
  auto it = terms_.find(label);
  return it == terms_.end() ? Rational(0) : it->second;
}

void AlgebraElement::add(std::size_t label, const Rational& c) {
  if (sgn(c) == 0) return;
  auto [it, inserted] = terms_.try_emplace(label, c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

RationalVector AlgebraElement::dense() const {
  if (!owner_) fail(ErrorKind::invalid_input, "dense(): element has no algebra");
  RationalVector v(owner_->dim());
  for (const auto& [i, c] : terms_) v[i] = c;
  return v;
}

void AlgebraElement::check_owner(const AlgebraElement& other) const {
  if (owner_ != other.owner_) fail(ErrorKind::invalid_input, "elements belong to different algebras");
}

AlgebraElement& AlgebraElement::operator+=(const AlgebraElement& other) {
  check_owner(other);
  for (const auto& [i, c] : other.terms_) add(i, c);
  return *this;
}

AlgebraElement& AlgebraElement::operator-=(const AlgebraElement& other) {
  check_owner(other);
  for (const auto& [i, c] : other.terms_) add(i, -c);
  return *this;
}

AlgebraElement& AlgebraElement::operator*=(const Rational& c) {
  if (sgn(c) == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [i, v] : terms_) v *= c;
  return *this;
}

std::uint64_t n_abc(const Subspace& a, const Subspace& b, const Subspace& c) {
  const auto ab = gf2::intersect(a, b);
  const auto bc = gf2::intersect(b, c);
  const auto ac = gf2::intersect(a, c);
  const auto abc = gf2::intersect(ab, c);
  const std::uint64_t u = u_group_order(a, b, c);
  const int u_dim = std::countr_zero(u);
  const int exponent = u_dim + static_cast<int>(abc.dim()) - static_cast<int>(ab.dim()) -
                       static_cast<int>(bc.dim()) - static_cast<int>(ac.dim());
  if (exponent < 0) fail(ErrorKind::internal_error, "N_{A,B,C} is not an integer");
  return std::uint64_t{1} << exponent;
}

ConvolutionAlgebra::ConvolutionAlgebra(ESet x) : x_(std::move(x)) {
  strata_ = x_.strata();
  const std::size_t s = strata_.size();
  stratum_points_.resize(s);
  point_stratum_.resize(x_.size());
  for (std::size_t p = 0; p < x_.size(); ++p) {
    const std::size_t k = find_stratum(x_.stabilizer_of(p));
    point_stratum_[p] = k;
    stratum_points_[k].push_back(p);
  }

  meet2_.resize(s * s);
  for (std::size_t a = 0; a < s; ++a)
    for (std::size_t b = 0; b < s; ++b) meet2_[a * s + b] = gf2::intersect(strata_[a], strata_[b]);
  triples_.resize(s * s * s);
  for (std::size_t a = 0; a < s; ++a)
    for (std::size_t b = 0; b < s; ++b)
      for (std::size_t c = 0; c < s; ++c)
        triples_[triple_index(a, b, c)] = {gf2::intersect(meet(a, b), strata_[c]),
                                           n_abc(strata_[a], strata_[b], strata_[c])};

  const std::size_t n = x_.size();
  pair_orbit_of_.assign(n * n, 0);
  block_orbits_.resize(s * s);
  for (std::size_t a = 0; a < s; ++a)
    for (std::size_t b = 0; b < s; ++b)
      for (auto& orbit : pair_orbits(x_, strata_[a], strata_[b])) {
        const std::size_t id = pair_orbits_.size();
        for (const auto& [p, q] : orbit.members) pair_orbit_of_[p * n + q] = id;
        block_orbits_[a * s + b].push_back(id);
        block_of_.emplace_back(a, b);
        pair_orbits_.push_back(std::move(orbit));
      }
  transpose_.resize(pair_orbits_.size());
  for (std::size_t id = 0; id < pair_orbits_.size(); ++id) {
    const auto& [p, q] = pair_orbits_[id].rep();
    transpose_[id] = pair_orbit_of(q, p);
  }

  for (std::size_t id = 0; id < pair_orbits_.size(); ++id) {
    label_offset_.push_back(labels_.size());
    const auto [a, b] = block_of_[id];
    for (auto& eps : gf2::forms_on(meet(a, b))) labels_.push_back({id, std::move(eps)});
  }

  const std::size_t d = labels_.size();
  table_.resize(d * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) table_[i * d + j] = compute_product(i, j);
}

std::size_t ConvolutionAlgebra::find_stratum(const Subspace& a) const {
  auto it = std::lower_bound(strata_.begin(), strata_.end(), a);
  return (it != strata_.end() && *it == a) ? static_cast<std::size_t>(it - strata_.begin()) : strata_.size();
}

const std::vector<std::size_t>& ConvolutionAlgebra::block_orbits(std::size_t sa, std::size_t sb) const {
  return block_orbits_.at(sa * strata_.size() + sb);
}

std::size_t ConvolutionAlgebra::label_index(std::size_t orbit, std::uint32_t eps_values) const {
  const std::size_t i = label_offset_.at(orbit) + eps_values;
  if (i >= labels_.size() || labels_[i].orbit != orbit)
    fail(ErrorKind::invalid_input, "label_index: character out of range");
  return i;
}

std::size_t ConvolutionAlgebra::sharp_label(std::size_t i) const {
  const auto& l = label(i);
  return label_index(transpose(l.orbit), l.eps.values());
}

std::string ConvolutionAlgebra::label_text(std::size_t i) const {
  const auto& l = label(i);
  const auto& o = pair_orbit(l.orbit);
  return "[(" + std::to_string(o.rep().first) + "," + std::to_string(o.rep().second) + ")]^" +
         (l.eps.domain().dim() ? l.eps.to_string() : std::string("0")) + " in F" + o.a.to_string() +
         o.b.to_string();
}

void ConvolutionAlgebra::check_owner(const AlgebraElement& f) const {
  if (f.owner() != this) fail(ErrorKind::invalid_input, "element does not belong to this algebra");
}

AlgebraElement ConvolutionAlgebra::basis_element(std::size_t i) const {
  if (i >= dim()) fail(ErrorKind::invalid_input, "basis index out of range");
  AlgebraElement e(this);
  e.add(i, 1);
  return e;
}

AlgebraElement ConvolutionAlgebra::unit() const {
  AlgebraElement u(this);
  for (std::size_t s = 0; s < strata_.size(); ++s)
    for (auto id : block_orbits(s, s)) {
      const auto& [p, q] = pair_orbit(id).rep();
      if (p == q) u.add(label_index(id, 0), 1);
    }
  return u;
}

AlgebraElement ConvolutionAlgebra::from_dense(const RationalVector& v) const {
  if (v.size() != dim()) fail(ErrorKind::invalid_input, "from_dense: wrong length");
  AlgebraElement f(this);
  for (std::size_t i = 0; i < v.size(); ++i) f.add(i, v[i]);
  return f;
}

ProductTerms ConvolutionAlgebra::compute_product(std::size_t a, std::size_t b) const {
  const auto& la = labels_[a];
  const auto& lb = labels_[b];
  const auto [sa, sb] = block_of_[la.orbit];
  const auto [sb2, sc] = block_of_[lb.orbit];
  if (sb != sb2) return {};
  const auto& [x, y] = pair_orbit(la.orbit).rep();
  const auto& second = pair_orbit(lb.orbit);
  if (x_.orbit_of(y) != x_.orbit_of(second.rep().first)) return {};

  std::size_t z = 0;
  for (const auto& [y2, z2] : second.members)
    if (y2 == y) {
      z = z2;
      break;
    }
  std::vector<std::size_t> parts;
  for (auto bb : strata_[sb].elements()) parts.push_back(pair_orbit_of(x_.act(bb, x), z));
  std::sort(parts.begin(), parts.end());
  parts.erase(std::unique(parts.begin(), parts.end()), parts.end());

  const Triple& t = triples_[triple_index(sa, sb, sc)];
  const auto alpha = gf2::restrict(la.eps, t.meet_abc) + gf2::restrict(lb.eps, t.meet_abc);
  const auto eps_set = gf2::fiber(meet(sa, sc), t.meet_abc, alpha);

  ProductTerms out;
  for (auto p : parts)
    for (const auto& eps : eps_set)
      out.emplace_back(static_cast<std::uint32_t>(label_index(p, eps.values())),
                       static_cast<std::int64_t>(t.n_abc));
  std::sort(out.begin(), out.end());
  return out;
}

AlgebraElement ConvolutionAlgebra::star_orbit_level(std::size_t a, std::size_t b) const {
  if (a >= dim() || b >= dim()) fail(ErrorKind::invalid_input, "basis index out of range");
  AlgebraElement out(this);
  for (const auto& [k, v] : compute_product(a, b)) out.add(k, v);
  return out;
}

AlgebraElement ConvolutionAlgebra::star(const AlgebraElement& f, const AlgebraElement& g) const {
  check_owner(f);
  check_owner(g);
  std::map<std::size_t, Rational> acc;
  Rational cd;
  for (const auto& [i, c] : f.terms())
    for (const auto& [j, d] : g.terms()) {
      const auto& terms = product(i, j);
      if (terms.empty()) continue;
      cd = c * d;
      for (const auto& [k, v] : terms) acc[k] += cd * v;
    }
  AlgebraElement out(this);
  for (const auto& [k, v] : acc) out.add(k, v);
  return out;
}

AlgebraElement ConvolutionAlgebra::star_definitional(const AlgebraElement& f, const AlgebraElement& g) const {
  check_owner(f);
  check_owner(g);
  std::vector<std::pair<std::size_t, std::size_t>> f_blocks, g_blocks;
  for (const auto& [i, c] : f.terms()) f_blocks.push_back(block_of_[labels_[i].orbit]);
  for (const auto& [j, c] : g.terms()) g_blocks.push_back(block_of_[labels_[j].orbit]);
  for (auto* blocks : {&f_blocks, &g_blocks}) {
    std::sort(blocks->begin(), blocks->end());
    blocks->erase(std::unique(blocks->begin(), blocks->end()), blocks->end());
  }

  AlgebraElement out(this);
  for (const auto& [sa, sb] : f_blocks)
    for (const auto& [sb2, sc] : g_blocks) {
      if (sb != sb2) continue;
      const Subspace& d = triples_[triple_index(sa, sb, sc)].meet_abc;
      const Subspace& ab = meet(sa, sb);
      const Subspace& bc = meet(sb, sc);
      const Subspace& ac = meet(sa, sc);
      Rational weight(static_cast<unsigned long>(d.order()), static_cast<unsigned long>(ac.order()));
      weight.canonicalize();
      // restrictions to A meet B meet C, by value mask of the form
      auto restricted = [&d](const Subspace& v) {
        std::vector<std::uint32_t> r;
        for (const auto& phi : gf2::forms_on(v)) r.push_back(gf2::restrict(phi, d).values());
        return r;
      };
      const auto r_ab = restricted(ab);
      const auto r_bc = restricted(bc);
      const auto r_ac = restricted(ac);
      for (auto target : block_orbits(sa, sc)) {
        const auto& [x, z] = pair_orbit(target).rep();
        for (std::uint32_t eps = 0; eps < r_ac.size(); ++eps) {
          Rational sum = 0;
          for (auto y : stratum_points_[sb]) {
            const std::size_t o1 = pair_orbit_of(x, y);
            const std::size_t o2 = pair_orbit_of(y, z);
            for (std::uint32_t e1 = 0; e1 < r_ab.size(); ++e1) {
              const Rational c1 = f.coefficient(label_index(o1, e1));
              if (sgn(c1) == 0) continue;
              for (std::uint32_t e2 = 0; e2 < r_bc.size(); ++e2) {
                if ((r_ab[e1] ^ r_bc[e2] ^ r_ac[eps]) != 0) continue;
                sum += c1 * g.coefficient(label_index(o2, e2));
              }
            }
          }
          out.add(label_index(target, eps), sum * weight);
        }
      }
    }
  return out;
}

AlgebraElement ConvolutionAlgebra::sharp(const AlgebraElement& f) const {
  check_owner(f);
  AlgebraElement out(this);
  for (const auto& [i, c] : f.terms()) out.add(sharp_label(i), c);
  return out;
}

BulletResult ConvolutionAlgebra::bullet(std::size_t orbit, std::size_t orbit2) const {
  const auto [sa, sb] = block_of(orbit);
  const auto [sb2, sc] = block_of(orbit2);
  const auto& first = pair_orbit(orbit);
  const auto& second = pair_orbit(orbit2);
  if (sb != sb2 || x_.orbit_of(first.rep().second) != x_.orbit_of(second.rep().first))
    fail(ErrorKind::precondition_violation, "bullet: p2(O) and p1(O') are different E-orbits");
  BulletResult r;
  for (const auto& [p, y] : first.members)
    for (const auto& [y2, q] : second.members)
      if (y == y2) r.image.emplace_back(p, q);
  std::sort(r.image.begin(), r.image.end());
  r.image.erase(std::unique(r.image.begin(), r.image.end()), r.image.end());
  r.orbit = eb_orbit_of(x_, strata_[sb], r.image.front());
  r.n_abc = triples_[triple_index(sa, sb, sc)].n_abc;
  return r;
}

std::vector<std::size_t> ConvolutionAlgebra::eb_orbit_parts(const Subspace& b, std::size_t orbit) const {
  const auto& [p, q] = pair_orbit(orbit).rep();
  std::vector<std::size_t> parts;
  for (auto bb : b.elements()) parts.push_back(pair_orbit_of(x_.act(bb, p), q));
  std::sort(parts.begin(), parts.end());
  parts.erase(std::unique(parts.begin(), parts.end()), parts.end());
  return parts;
}

std::vector<Matrix> ConvolutionAlgebra::regular_representation() const {
  std::vector<Matrix> out;
  out.reserve(dim());
  for (std::size_t i = 0; i < dim(); ++i) out.push_back(right_multiplication(basis_element(i)));
  return out;
}

Matrix ConvolutionAlgebra::right_multiplication(const AlgebraElement& b) const {
  check_owner(b);
  Matrix m(dim(), dim());
  for (std::size_t k = 0; k < dim(); ++k)
    for (const auto& [i, c] : b.terms())
      for (const auto& [j, v] : product(k, i)) m(k, j) += c * v;
  return m;
}

std::size_t ConvolutionAlgebra::radical_dimension() const {
  const std::size_t d = dim();
  // trace of right multiplication by each basis element
  std::vector<std::int64_t> tr(d, 0);
  for (std::size_t k = 0; k < d; ++k)
    for (std::size_t c = 0; c < d; ++c)
      for (const auto& [j, v] : product(k, c))
        if (j == k) tr[c] += v;
  std::vector<std::vector<std::int64_t>> gram(d, std::vector<std::int64_t>(d, 0));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (const auto& [c, v] : product(i, j)) gram[i][j] += v * tr[c];
  // full rank modulo a prime certifies full rank over the rationals
  constexpr std::uint64_t prime = (std::uint64_t{1} << 61) - 1;
  if (rank_mod_p(gram, prime) == d) return 0;
  Matrix exact(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) exact(i, j) = static_cast<long>(gram[i][j]);
  return d - rank(exact);
}

}  // namespace fconv
