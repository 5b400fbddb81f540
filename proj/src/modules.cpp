#include "fconv/modules.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "fconv/error.hpp"

namespace fconv {

std::map<Subspace, std::size_t> orbit_counts(const ESet& x) {
  std::map<Subspace, std::size_t> counts;
  for (std::size_t o = 0; o < x.orbit_count(); ++o) ++counts[x.orbit_stabilizer(o)];
  return counts;
}

std::size_t dim_closed_form(const Subspace& a, const Subspace& b, const std::map<Subspace, std::size_t>& counts) {
  const std::uint64_t e_order = std::uint64_t{1} << a.ambient_dim();
  Rational total = 0;
  for (const auto& [c, count] : counts) {
    const auto abc = gf2::intersect(gf2::intersect(a, b), c);
    Rational term(static_cast<unsigned long>(count * e_order * u_group_order(a, b, c) * abc.order()),
                  static_cast<unsigned long>(a.order() * b.order() * c.order()));
    term.canonicalize();
    total += term;
  }
  if (total.get_den() != 1)
    fail(ErrorKind::internal_error, "dim_closed_form: non-integral value " + total.get_str());
  return total.get_num().get_ui();
}

PreorderVerdict preorder_leq(const Subspace& a, const Subspace& b_small, const Subspace& b_big) {
  PreorderVerdict v{a, b_small, b_big, false, false};
  v.holds = gf2::subspace_sum(a, b_small).contains(gf2::subspace_sum(a, b_big)) &&
            gf2::intersect(a, b_big).contains(gf2::intersect(a, b_small));
  return v;
}

CheckReport verify_containment(const ConvolutionAlgebra& alg, std::size_t orbit, const Subspace& b_small,
                               const Subspace& b_big) {
  const auto& a = alg.eset().orbit_stabilizer(orbit);
  if (!preorder_leq(a, b_small, b_big).holds)
    fail(ErrorKind::precondition_violation, "verify_containment: " + b_small.to_string() + " does not precede " +
                                                b_big.to_string() + " at " + a.to_string());
  CheckReport r;
  const auto small = ideal_basis(alg, orbit, b_small);
  const auto big = ideal_basis(alg, orbit, b_big);
  const auto span = span_of(alg, big.elements);
  for (std::size_t i = 0; i < small.elements.size(); ++i) {
    ++r.checked;
    auto coords = span.coordinates(small.elements[i].dense());
    if (!coords) {
      r.record_failure("element " + std::to_string(i) + " is not in the larger ideal");
      continue;
    }
    for (const auto& c : *coords)
      if (c != 0 && c != 1) {
        r.record_failure("element " + std::to_string(i) + " has coefficient " + c.get_str());
        break;
      }
  }
  for (const auto& s : small.index)
    for (const auto& g : big.index) {
      if (s.c_stratum != g.c_stratum) continue;
      ++r.checked;
      const bool inside = std::includes(s.parts.begin(), s.parts.end(), g.parts.begin(), g.parts.end());
      std::vector<std::size_t> common;
      std::set_intersection(s.parts.begin(), s.parts.end(), g.parts.begin(), g.parts.end(),
                            std::back_inserter(common));
      if (!inside && !common.empty()) r.record_failure("an E x B orbit is not a union of finer orbits");
    }
  return r;
}

ShiftIsomorphism shift_isomorphism(const ConvolutionAlgebra& alg, std::size_t orbit, std::size_t orbit2,
                                   const Subspace& b) {
  const ESet& x = alg.eset();
  if (orbit >= x.orbit_count() || orbit2 >= x.orbit_count())
    fail(ErrorKind::invalid_input, "shift_isomorphism: unknown orbit");
  if (x.orbit_stabilizer(orbit) != x.orbit_stabilizer(orbit2))
    fail(ErrorKind::invalid_input, "shift_isomorphism: orbits have different stabilizers");
  // gamma(e + x0) = e + x0'; O_gamma = {(gamma(x), x)} is the E-orbit of (x0', x0)
  const std::size_t x0 = x.orbit_points(orbit).front();
  const std::size_t x1 = x.orbit_points(orbit2).front();
  ShiftIsomorphism s;
  s.multiplier = alg.basis_element(alg.label_index(alg.pair_orbit_of(x1, x0), 0));

  const auto from = ideal_basis(alg, orbit, b);
  const auto to = ideal_basis(alg, orbit2, b);
  std::vector<bool> hit(to.elements.size(), false);
  s.bijective = from.elements.size() == to.elements.size();
  for (const auto& f : from.elements) {
    const auto image = alg.star(s.multiplier, f);
    auto it = std::find(to.elements.begin(), to.elements.end(), image);
    if (it == to.elements.end()) {
      s.bijective = false;
      s.image.push_back(to.elements.size());
      continue;
    }
    const auto j = static_cast<std::size_t>(it - to.elements.begin());
    if (hit[j]) s.bijective = false;
    hit[j] = true;
    s.image.push_back(j);
  }
  if (!s.bijective) return s;

  const auto act_from = right_ideal_action(alg, from.elements);
  const auto act_to = right_ideal_action(alg, to.elements);
  s.intertwines = true;
  for (std::size_t g = 0; g < alg.dim() && s.intertwines; ++g)
    for (std::size_t i = 0; i < from.elements.size(); ++i)
      for (std::size_t k = 0; k < from.elements.size(); ++k)
        if (act_from[g](i, k) != act_to[g](s.image[i], s.image[k])) s.intertwines = false;
  return s;
}

ModulePresentation submodule(const ConvolutionAlgebra& alg, std::vector<AlgebraElement> basis) {
  ModulePresentation m;
  m.dim = basis.size();
  m.action = right_ideal_action(alg, basis);
  m.basis = std::move(basis);
  return m;
}

ModulePresentation ideal_module(const ConvolutionAlgebra& alg, const IdealBasis& ib) {
  return submodule(alg, ib.elements);
}

ModulePresentation quotient_module(const ConvolutionAlgebra& alg, const ModulePresentation& m,
                                   const std::vector<AlgebraElement>& n) {
  const std::size_t k = m.dim;
  const auto parent = span_of(alg, m.basis);
  std::vector<RationalVector> coords;
  for (const auto& v : n) {
    auto c = parent.coordinates(v.dense());
    if (!c) fail(ErrorKind::invalid_input, "quotient_module: denominator is not contained in the module");
    coords.push_back(std::move(*c));
  }
  const RowSpace sub(k, coords);
  for (std::size_t r = 0; r < sub.rank(); ++r)
    for (const auto& a : m.action) {
      RationalVector moved(k);
      for (std::size_t j = 0; j < k; ++j)
        for (std::size_t i = 0; i < k; ++i)
          if (sgn(sub.reduced()(r, i)) != 0 && sgn(a(i, j)) != 0) moved[j] += sub.reduced()(r, i) * a(i, j);
      if (!sub.contains(moved)) fail(ErrorKind::invalid_input, "quotient_module: denominator is not a submodule");
    }

  std::vector<bool> pivot(k, false);
  for (auto p : sub.pivots()) pivot[p] = true;
  std::vector<std::size_t> keep;
  for (std::size_t j = 0; j < k; ++j)
    if (!pivot[j]) keep.push_back(j);

  ModulePresentation q;
  q.dim = keep.size();
  for (auto j : keep) q.basis.push_back(m.basis[j]);
  for (const auto& a : m.action) {
    Matrix out(q.dim, q.dim);
    for (std::size_t jj = 0; jj < keep.size(); ++jj) {
      RationalVector v(a.row(keep[jj]).begin(), a.row(keep[jj]).end());
      for (std::size_t r = 0; r < sub.rank(); ++r) {
        const Rational d = v[sub.pivots()[r]];
        if (sgn(d) == 0) continue;
        for (std::size_t i = 0; i < k; ++i)
          if (sgn(sub.reduced()(r, i)) != 0) v[i] -= d * sub.reduced()(r, i);
      }
      for (std::size_t kk = 0; kk < keep.size(); ++kk) out(jj, kk) = v[keep[kk]];
    }
    q.action.push_back(std::move(out));
  }
  return q;
}

Character character(const ModulePresentation& m) {
  Character c;
  c.reserve(m.action.size());
  for (const auto& a : m.action) c.push_back(a.trace());
  return c;
}

std::size_t action_algebra_dimension(const ModulePresentation& m) {
  const std::size_t k = m.dim;
  Matrix stacked(m.action.size(), k * k);
  for (std::size_t g = 0; g < m.action.size(); ++g)
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) stacked(g, i * k + j) = m.action[g](i, j);
  return rank(stacked);
}

bool is_simple(const ModulePresentation& m) {
  return m.dim > 0 && action_algebra_dimension(m) == m.dim * m.dim;
}

std::optional<Matrix> find_intertwiner(const ModulePresentation& m, const ModulePresentation& n,
                                       std::uint64_t seed) {
  if (m.dim != n.dim || m.action.size() != n.action.size()) return std::nullopt;
  const std::size_t k = m.dim;
  if (k == 0) return Matrix(0, 0);
  // unknown T(r, c) sits at column r * k + c; equation (g, i, j): (A_m T - T A_n)(i, j) = 0
  std::size_t active = 0;
  for (std::size_t g = 0; g < m.action.size(); ++g)
    if (!m.action[g].is_zero() || !n.action[g].is_zero()) ++active;
  Matrix eqs(active * k * k, k * k);
  std::size_t row = 0;
  for (std::size_t g = 0; g < m.action.size(); ++g) {
    if (m.action[g].is_zero() && n.action[g].is_zero()) continue;
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j, ++row)
        for (std::size_t l = 0; l < k; ++l) {
          eqs(row, l * k + j) += m.action[g](i, l);
          eqs(row, i * k + l) -= n.action[g](l, j);
        }
  }
  const auto kernel = nullspace(eqs);
  if (kernel.empty()) return std::nullopt;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coef(1, 97);
  for (int attempt = 0; attempt < 16; ++attempt) {
    Matrix t(k, k);
    for (std::size_t b = 0; b < kernel.size(); ++b) {
      const Rational w = kernel.size() == 1 ? Rational(1) : Rational(coef(rng));
      for (std::size_t r = 0; r < k; ++r)
        for (std::size_t c = 0; c < k; ++c) t(r, c) += w * kernel[b][r * k + c];
    }
    if (is_invertible(t)) return t;
    if (kernel.size() == 1) break;
  }
  return std::nullopt;
}

bool has_natural_action(const ModulePresentation& m) {
  return std::all_of(m.action.begin(), m.action.end(), [](const Matrix& a) { return a.is_natural(); });
}

Subspace dim2_subspace(const std::string& name) {
  std::vector<std::uint32_t> rows;
  if (name == "L1") rows = {0b01};
  else if (name == "L2") rows = {0b10};
  else if (name == "L3") rows = {0b11};
  else if (name == "E") rows = {0b01, 0b10};
  else if (name != "0") fail(ErrorKind::invalid_input, "unknown subspace name '" + name + "'");
  return gf2::span_bits(rows, 2);
}

bool Catalog::all_pass() const {
  for (const auto& e : entries) {
    if (!e.dims_match || !e.isomorphisms_hold || !e.equalities_hold || !e.simple) return false;
    for (const auto& p : e.presentations)
      if (!p.error.empty()) return false;
  }
  for (const auto& d : distinguished)
    if (d.dim && !d.positive) return false;
  return pairwise_nonisomorphic && complete;
}

namespace {

class CatalogBuilder {
 public:
  explicit CatalogBuilder(const ConvolutionAlgebra& alg) : alg_(alg) {}

  // The least orbit with stabilizer A, if X_A is nonempty.
  std::optional<std::size_t> orbit_for(const std::string& a) const {
    const auto orbits = e_orbits(alg_.eset(), dim2_subspace(a));
    if (orbits.empty()) return std::nullopt;
    return orbits.front();
  }

  const IdealBasis& ideal(const std::string& a, const std::string& b) {
    const auto key = std::make_pair(a, b);
    auto it = ideals_.find(key);
    if (it == ideals_.end()) it = ideals_.emplace(key, ideal_basis(alg_, *orbit_for(a), dim2_subspace(b))).first;
    return it->second;
  }

  CatalogPresentation present(const std::string& a, const std::string& num, std::vector<std::string> dens) {
    CatalogPresentation p{text(a, num, dens), a, num, std::move(dens), std::nullopt, false, false, {}};
    if (!orbit_for(a)) return p;
    auto m = ideal_module(alg_, ideal(a, num));
    try {
      if (!p.denominators.empty()) m = quotient_module(alg_, m, denominator(a, p.denominators));
    } catch (const Error& err) {
      if (err.kind() != ErrorKind::invalid_input) throw;
      p.error = err.what();
      return p;
    }
    p.simple = is_simple(m);
    p.natural_action = has_natural_action(m);
    p.module = std::move(m);
    return p;
  }

  bool same_subspaces(const CatalogPresentation& p, const CatalogPresentation& q) {
    if (p.a != q.a) return false;
    if (!same_span(span_of(alg_, ideal(p.a, p.numerator).elements), span_of(alg_, ideal(q.a, q.numerator).elements)))
      return false;
    return same_span(span_of(alg_, denominator(p.a, p.denominators)),
                     span_of(alg_, denominator(q.a, q.denominators)));
  }

 private:
  static std::string ideal_text(const std::string& a, const std::string& b) { return "[[" + a + b + "]]"; }

  static std::string text(const std::string& a, const std::string& num, const std::vector<std::string>& dens) {
    std::string s = ideal_text(a, num);
    if (dens.empty()) return s;
    s += "/";
    if (dens.size() > 1) s += "(";
    for (std::size_t i = 0; i < dens.size(); ++i) s += (i ? "+" : "") + ideal_text(a, dens[i]);
    if (dens.size() > 1) s += ")";
    return s;
  }

  std::vector<AlgebraElement> denominator(const std::string& a, const std::vector<std::string>& dens) {
    std::vector<AlgebraElement> n;
    for (const auto& b : dens) {
      const auto& els = ideal(a, b).elements;
      n.insert(n.end(), els.begin(), els.end());
    }
    return n;
  }

  const ConvolutionAlgebra& alg_;
  std::map<std::pair<std::string, std::string>, IdealBasis> ideals_;
};

void check_entry(CatalogEntry& e) {
  std::vector<const CatalogPresentation*> computed;
  for (const auto& p : e.presentations)
    if (p.module) computed.push_back(&p);
  e.dim = computed.empty() ? 0 : computed.front()->module->dim;
  for (auto* p : computed)
    if (p->module->dim != e.formula_dim) e.dims_match = false;
  if (computed.empty() && e.formula_dim != 0) e.dims_match = false;
  for (std::size_t i = 1; i < computed.size(); ++i) {
    const auto& first = *computed.front()->module;
    const auto& other = *computed[i]->module;
    if (character(first) != character(other) || !find_intertwiner(first, other)) e.isomorphisms_hold = false;
  }
  for (auto* p : computed)
    if (p->module->dim > 0 && !p->simple) e.simple = false;
}

}  // namespace

Catalog dim2_catalog(const ConvolutionAlgebra& alg) {
  if (alg.eset().e_dim() != 2) fail(ErrorKind::invalid_input, "dim2_catalog needs dim E = 2");
  const auto counts = orbit_counts(alg.eset());
  auto count = [&counts](const std::string& name) {
    auto it = counts.find(dim2_subspace(name));
    return it == counts.end() ? std::size_t{0} : it->second;
  };
  CatalogBuilder builder(alg);
  Catalog cat;
  cat.algebra_dim = alg.dim();
  const std::vector<std::string> lines = {"L1", "L2", "L3"};
  auto others = [&lines](std::size_t i) {
    std::vector<std::string> o;
    for (std::size_t j = 0; j < lines.size(); ++j)
      if (j != i) o.push_back(lines[j]);
    return o;
  };

  auto add_entry = [&](std::string formula, std::size_t dim, std::vector<CatalogPresentation> ps,
                       std::vector<std::pair<std::size_t, std::size_t>> eq) {
    CatalogEntry e{std::move(formula), dim, std::move(ps), std::move(eq)};
    check_entry(e);
    for (const auto& [i, j] : e.equalities) {
      const auto& p = e.presentations[i];
      const auto& q = e.presentations[j];
      if (p.module.has_value() != q.module.has_value() || (p.module && !builder.same_subspaces(p, q)))
        e.equalities_hold = false;
    }
    cat.entries.push_back(std::move(e));
  };

  for (std::size_t i = 0; i < 3; ++i) {
    const auto& li = lines[i];
    const auto o = others(i);
    add_entry("|Xbar_" + li + "| + |Xbar_0|", count(li) + count("0"),
              {builder.present("0", li, {"E"}), builder.present(li, "0", {o[0]}), builder.present(li, "0", {o[1]})},
              {{1, 2}});
  }
  for (std::size_t i = 0; i < 3; ++i) {
    const auto& li = lines[i];
    const auto o = others(i);
    add_entry("|Xbar_" + li + "| + |Xbar_E|", count(li) + count("E"),
              {builder.present(li, "E", {o[0]}), builder.present(li, "E", {o[1]}), builder.present("E", li, {"0"})},
              {{0, 1}});
  }
  for (std::size_t i = 0; i < 3; ++i) {
    const auto& li = lines[i];
    add_entry("|Xbar_" + li + "|", count(li), {builder.present(li, li, {"0", "E"})}, {});
  }
  {
    std::vector<CatalogPresentation> ps{builder.present("0", "E", {})};
    for (std::size_t i = 0; i < 3; ++i)
      for (const auto& lj : others(i)) ps.push_back(builder.present(lines[i], lj, {}));
    ps.push_back(builder.present("E", "0", {}));
    add_entry("|Xbar_0| + |Xbar_L1| + |Xbar_L2| + |Xbar_L3| + |Xbar_E|",
              count("0") + count("L1") + count("L2") + count("L3") + count("E"), std::move(ps),
              {{1, 2}, {3, 4}, {5, 6}});
  }

  std::vector<Character> simples;
  for (const auto& e : cat.entries) {
    if (e.dim == 0) continue;
    cat.sum_of_squares += e.dim * e.dim;
    for (const auto& p : e.presentations)
      if (p.module) {
        simples.push_back(character(*p.module));
        break;
      }
  }
  for (std::size_t i = 0; i < simples.size(); ++i)
    for (std::size_t j = i + 1; j < simples.size(); ++j)
      if (simples[i] == simples[j]) cat.pairwise_nonisomorphic = false;
  cat.complete = cat.sum_of_squares == cat.algebra_dim;

  const std::vector<std::pair<std::string, std::string>> distinguished = {
      {"0", "0"}, {"L1", "L1"}, {"L2", "L2"}, {"L3", "L3"}, {"E", "E"},
      {"0", "L1"}, {"0", "L2"}, {"L1", "E"}, {"L2", "E"}, {"0", "E"}};
  for (const auto& [a, b] : distinguished) {
    DistinguishedModule d{"[[" + a + b + "]]", std::nullopt, false};
    if (builder.orbit_for(a)) {
      const auto& ib = builder.ideal(a, b);
      d.dim = ib.elements.size();
      try {
        action_matrices(alg, ib);
        d.positive = true;
      } catch (const Error& err) {
        if (err.kind() != ErrorKind::positivity_violation) throw;
      }
    }
    cat.distinguished.push_back(std::move(d));
  }
  return cat;
}

}  // namespace fconv
