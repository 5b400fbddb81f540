#include "fconv/report.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <functional>
#include <iomanip>
#include <random>
#include <set>
#include <sstream>

#include "fconv/algebra.hpp"
#include "fconv/error.hpp"
#include "fconv/ideal.hpp"

namespace fconv {

namespace {

[[noreturn]] void parse_fail(const std::string& source, const std::string& field, const std::string& what) {
  fail(ErrorKind::parse_error, source + ": " + field + ": " + what);
}

std::string rational_text(const Rational& q) { return q.get_str(); }

Json rational_json(const Rational& q) {
  if (q.get_den() == 1 && q.get_num().fits_slong_p()) return q.get_num().get_si();
  return q.get_str();
}

std::string form_text(const gf2::LinearForm& f) { return f.domain().dim() ? f.to_string() : "0"; }

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string s;
  for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? sep : "") + parts[i];
  return s;
}

}  // namespace

// ---------------------------------------------------------------- instances

InstanceFile instance_from_json(const Json& j) { return parse_instance_text(j.dump(), "<json>"); }

InstanceFile parse_instance_text(std::string_view text, const std::string& source) {
  Json j;
  try {
    j = Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    // e.byte is one past the offending character
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    fail(ErrorKind::parse_error,
         source + ":" + std::to_string(line) + ":" + std::to_string(col) + ": malformed JSON");
  }
  if (!j.is_object()) parse_fail(source, "<root>", "expected an object");

  InstanceFile out;
  if (j.contains("name")) {
    if (!j["name"].is_string()) parse_fail(source, "name", "expected a string");
    out.name = j["name"].get<std::string>();
  }
  if (!j.contains("e_dim")) parse_fail(source, "e_dim", "missing");
  if (!j["e_dim"].is_number_unsigned()) parse_fail(source, "e_dim", "expected a natural number");
  const auto n64 = j["e_dim"].get<std::uint64_t>();
  if (n64 > gf2::max_ambient_dim)
    parse_fail(source, "e_dim", "at most " + std::to_string(gf2::max_ambient_dim) + " supported");
  const auto n = static_cast<unsigned>(n64);
  out.spec.e_dim = n;

  if (!j.contains("orbits") || !j["orbits"].is_array()) parse_fail(source, "orbits", "expected an array");
  if (j["orbits"].empty()) parse_fail(source, "orbits", "at least one orbit is required");
  for (std::size_t k = 0; k < j["orbits"].size(); ++k) {
    const auto& o = j["orbits"][k];
    const std::string at = "orbits[" + std::to_string(k) + "]";
    if (!o.is_object()) parse_fail(source, at, "expected an object");
    if (!o.contains("stabilizer") || !o["stabilizer"].is_array())
      parse_fail(source, at + ".stabilizer", "expected an array of bitstrings");
    std::vector<gf2::GF2Vector> gens;
    for (std::size_t i = 0; i < o["stabilizer"].size(); ++i) {
      const auto& b = o["stabilizer"][i];
      const std::string bat = at + ".stabilizer[" + std::to_string(i) + "]";
      if (!b.is_string()) parse_fail(source, bat, "expected a bitstring");
      const auto s = b.get<std::string>();
      if (s.size() != n)
        parse_fail(source, bat, "bitstring \"" + s + "\" has length " + std::to_string(s.size()) + ", expected " +
                                    std::to_string(n));
      if (s.find_first_not_of("01") != std::string::npos)
        parse_fail(source, bat, "bitstring \"" + s + "\" has characters other than 0 and 1");
      gens.push_back(gf2::GF2Vector::parse(s));
    }
    unsigned mult = 1;
    if (o.contains("multiplicity")) {
      if (!o["multiplicity"].is_number_unsigned()) parse_fail(source, at + ".multiplicity", "expected a natural number");
      const auto m = o["multiplicity"].get<std::uint64_t>();
      if (m == 0) parse_fail(source, at + ".multiplicity", "must be positive");
      if (m > 65536) parse_fail(source, at + ".multiplicity", "too large");
      mult = static_cast<unsigned>(m);
    }
    auto stab = gf2::canonicalize(gens, n);
    // A generating list that is not already the reduced basis gets a note.
    std::vector<std::string> given, canon;
    for (const auto& g : gens) given.push_back(g.to_string());
    for (const auto& g : stab.basis()) canon.push_back(g.to_string());
    if (given != canon) out.notes.push_back(at + ".stabilizer normalized to " + stab.to_string());
    out.spec.orbits.push_back({std::move(stab), mult});
  }
  try {
    ESet check(out.spec);
  } catch (const Error& e) {
    parse_fail(source, "orbits", e.what());
  }
  return out;
}

InstanceFile parse_instance(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::parse_error, path.string() + ": cannot open");
  std::stringstream ss;
  ss << in.rdbuf();
  auto inst = parse_instance_text(ss.str(), path.string());
  if (inst.name.empty()) inst.name = path.stem().string();
  return inst;
}

Json emit_instance(const InstanceFile& instance) {
  Json j;
  j["name"] = instance.name;
  j["e_dim"] = instance.spec.e_dim;
  j["orbits"] = Json::array();
  for (const auto& o : instance.spec.orbits) {
    Json stab = Json::array();
    for (const auto& v : o.stabilizer.basis()) stab.push_back(v.to_string());
    j["orbits"].push_back({{"stabilizer", stab}, {"multiplicity", o.multiplicity}});
  }
  return j;
}

Subspace parse_subspace(std::string_view text, unsigned n) {
  std::vector<gf2::GF2Vector> gens;
  std::size_t start = 0;
  while (start <= text.size() && !text.empty()) {
    auto end = text.find(',', start);
    if (end == std::string_view::npos) end = text.size();
    auto piece = text.substr(start, end - start);
    if (piece.size() != n || piece.find_first_not_of("01") != std::string_view::npos)
      fail(ErrorKind::invalid_input, "bad bitstring \"" + std::string(piece) + "\" for dim E = " + std::to_string(n));
    gens.push_back(gf2::GF2Vector::parse(piece));
    start = end + 1;
  }
  return gf2::canonicalize(gens, n);
}

std::size_t convolution_dimension(const ESet& x) {
  std::map<Subspace, std::uint64_t> sizes;
  for (std::size_t o = 0; o < x.orbit_count(); ++o) sizes[x.orbit_stabilizer(o)] += x.orbit_points(o).size();
  std::uint64_t total = 0;
  for (const auto& [a, na] : sizes)
    for (const auto& [b, nb] : sizes) {
      const auto m = gf2::intersect(a, b).order();
      total += na * nb * m * m / x.group_order();
    }
  return static_cast<std::size_t>(total);
}

// ---------------------------------------------------------------- describe

Json describe(const InstanceFile& instance) {
  ESet x(instance.spec);
  Json j;
  j["name"] = instance.name;
  j["e_dim"] = x.e_dim();
  j["points"] = x.size();
  j["orbits"] = x.orbit_count();
  j["dim_F"] = convolution_dimension(x);
  j["notes"] = instance.notes;
  j["strata"] = Json::array();
  for (const auto& a : x.strata())
    j["strata"].push_back({{"A", a.to_string()}, {"points", stratum(x, a).size()}, {"orbits", e_orbits(x, a).size()}});
  j["census"] = Json::array();
  for (const auto& a : x.strata())
    for (const auto& b : x.strata()) {
      const auto m = gf2::intersect(a, b);
      const auto pairs = stratum(x, a).size() * stratum(x, b).size() * m.order() / x.group_order();
      j["census"].push_back({{"A", a.to_string()},
                             {"B", b.to_string()},
                             {"meet_dim", m.dim()},
                             {"pair_orbits", pairs},
                             {"labels", pairs * m.order()}});
    }
  return j;
}

std::string describe_text(const Json& d) {
  std::ostringstream s;
  s << "instance " << d["name"].get<std::string>() << "\n";
  s << "dim E = " << d["e_dim"] << ", |X| = " << d["points"] << ", E-orbits = " << d["orbits"] << "\n";
  for (const auto& n : d["notes"]) s << "note: " << n.get<std::string>() << "\n";
  s << "strata:\n";
  for (const auto& st : d["strata"])
    s << "  X_" << st["A"].get<std::string>() << ": " << st["points"] << " points, " << st["orbits"] << " orbits\n";
  s << "basis census (A, B, pair orbits, labels):\n";
  for (const auto& c : d["census"])
    s << "  " << c["A"].get<std::string>() << " " << c["B"].get<std::string>() << " " << c["pair_orbits"] << " "
      << c["labels"] << "\n";
  s << "dim F = " << d["dim_F"] << "\n";
  return s.str();
}

// ---------------------------------------------------------------- verify

bool VerificationReport::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

const CheckResult* VerificationReport::find(std::string_view id) const {
  for (const auto& c : checks)
    if (c.id == id) return &c;
  return nullptr;
}

namespace {

class Verifier {
 public:
  Verifier(const ConvolutionAlgebra& alg, const VerifyOptions& opt)
      : alg_(alg), x_(alg.eset()), opt_(opt), rng_(opt.seed), subspaces_(gf2::all_subspaces(x_.e_dim())) {
    by_first_.resize(alg_.stratum_count());
    for (std::size_t i = 0; i < alg_.dim(); ++i) by_first_[first(i)].push_back(i);
  }

  std::vector<CheckResult> run() {
    std::vector<CheckResult> out;
    auto add = [&](std::string id, void (Verifier::*fn)(CheckResult&)) {
      CheckResult r;
      r.id = std::move(id);
      const auto t0 = std::chrono::steady_clock::now();
      try {
        (this->*fn)(r);
      } catch (const Error& e) {
        fail_with(r, std::string(to_string(e.kind())) + ": " + e.what());
      }
      r.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
      out.push_back(std::move(r));
    };
    add("block_grading", &Verifier::block_grading);
    add("associativity", &Verifier::associativity);
    add("unit", &Verifier::unit);
    add("antiautomorphism", &Verifier::antiautomorphism);
    add("integrality", &Verifier::integrality);
    add("differential_product", &Verifier::differential_product);
    add("semisimplicity", &Verifier::semisimplicity);
    add("pair_orbit_sizes", &Verifier::pair_orbit_sizes);
    add("eb_orbit_sizes", &Verifier::eb_orbit_sizes);
    add("bullet_single_orbit", &Verifier::bullet_single_orbit);
    add("n_power_of_two", &Verifier::n_power_of_two);
    add("ideal_independence", &Verifier::ideal_independence);
    add("right_ideal", &Verifier::right_ideal);
    add("positivity", &Verifier::positivity);
    add("label_partition", &Verifier::label_partition);
    add("bullet_cover", &Verifier::bullet_cover);
    add("generator_span", &Verifier::generator_span);
    add("dimension_formula", &Verifier::dimension_formula);
    add("direct_sum_case", &Verifier::direct_sum_case);
    add("equal_case", &Verifier::equal_case);
    add("preorder_containment", &Verifier::preorder_containment);
    add("shift_isomorphism", &Verifier::shift_isomorphism);
    if (x_.e_dim() == 2) add("catalog", &Verifier::catalog);
    return out;
  }

 private:
  static void fail_with(CheckResult& r, std::string w) {
    if (r.pass) r.witness = std::move(w);
    r.pass = false;
  }
  static void absorb(CheckResult& r, const CheckReport& c, const std::string& where) {
    r.count += c.checked;
    if (!c.pass) fail_with(r, where + ": " + c.witness);
  }

  std::size_t first(std::size_t label) const { return alg_.block_of(alg_.label(label).orbit).first; }
  std::size_t second(std::size_t label) const { return alg_.block_of(alg_.label(label).orbit).second; }

  std::string triple_text(std::size_t a, std::size_t b, std::size_t c) const {
    return "(" + alg_.label_text(a) + ", " + alg_.label_text(b) + ", " + alg_.label_text(c) + ")";
  }
  std::string pair_text(std::size_t a, std::size_t b) const {
    return "(" + alg_.label_text(a) + ", " + alg_.label_text(b) + ")";
  }

  // every basis pair, or a seeded sample of compatible and arbitrary pairs
  template <class F>
  void for_pairs(CheckResult& r, F&& f) {
    const auto d = alg_.dim();
    if (d * d <= opt_.max_exhaustive_pairs) {
      for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = 0; b < d; ++b) f(a, b);
      r.detail = "exhaustive";
      return;
    }
    std::uniform_int_distribution<std::size_t> pick(0, d - 1);
    for (std::size_t k = 0; k < opt_.max_exhaustive_pairs; ++k) {
      const auto a = pick(rng_);
      const auto& next = by_first_[second(a)];
      const auto b = (k % 2 == 0) ? next[std::uniform_int_distribution<std::size_t>(0, next.size() - 1)(rng_)]
                                  : pick(rng_);
      f(a, b);
    }
    r.detail = "sampled";
  }

  void block_grading(CheckResult& r) {
    for (std::size_t a = 0; a < alg_.dim(); ++a)
      for (std::size_t b = 0; b < alg_.dim(); ++b) {
        ++r.count;
        const auto& p = alg_.product(a, b);
        if (second(a) != first(b)) {
          if (!p.empty()) fail_with(r, "incompatible product nonzero " + pair_text(a, b));
          continue;
        }
        for (const auto& [t, c] : p)
          if (first(t) != first(a) || second(t) != second(b))
            fail_with(r, "product leaves its block " + pair_text(a, b));
      }
  }

  void check_triple(CheckResult& r, std::size_t a, std::size_t b, std::size_t c) {
    ++r.count;
    const auto ea = alg_.basis_element(a), eb = alg_.basis_element(b), ec = alg_.basis_element(c);
    if (alg_.star(alg_.star(ea, eb), ec) != alg_.star(ea, alg_.star(eb, ec))) fail_with(r, triple_text(a, b, c));
  }

  void associativity(CheckResult& r) {
    std::size_t compatible = 0;
    for (std::size_t a = 0; a < alg_.dim(); ++a)
      for (auto b : by_first_[second(a)]) compatible += by_first_[second(b)].size();
    if (compatible <= opt_.max_exhaustive_triples) {
      for (std::size_t a = 0; a < alg_.dim(); ++a)
        for (auto b : by_first_[second(a)])
          for (auto c : by_first_[second(b)]) check_triple(r, a, b, c);
      r.detail = "exhaustive over " + std::to_string(compatible) + " compatible triples";
    } else {
      r.detail = "compatible triples sampled";
    }
    // seeded chains a -> b -> c with matching strata
    std::uniform_int_distribution<std::size_t> pick(0, alg_.dim() - 1);
    for (std::size_t k = 0; k < opt_.random_triples; ++k) {
      const auto a = pick(rng_);
      const auto& nb = by_first_[second(a)];
      const auto b = nb[std::uniform_int_distribution<std::size_t>(0, nb.size() - 1)(rng_)];
      const auto& nc = by_first_[second(b)];
      const auto c = nc[std::uniform_int_distribution<std::size_t>(0, nc.size() - 1)(rng_)];
      check_triple(r, a, b, c);
    }
    r.detail += ", plus " + std::to_string(opt_.random_triples) + " seeded triples";
  }

  void unit(CheckResult& r) {
    const auto one = alg_.unit();
    for (std::size_t a = 0; a < alg_.dim(); ++a) {
      ++r.count;
      const auto e = alg_.basis_element(a);
      if (alg_.star(one, e) != e || alg_.star(e, one) != e) fail_with(r, alg_.label_text(a));
    }
  }

  void antiautomorphism(CheckResult& r) {
    for (std::size_t a = 0; a < alg_.dim(); ++a) {
      const auto e = alg_.basis_element(a);
      if (alg_.sharp(alg_.sharp(e)) != e) fail_with(r, "not an involution at " + alg_.label_text(a));
    }
    for_pairs(r, [&](std::size_t a, std::size_t b) {
      ++r.count;
      const auto ea = alg_.basis_element(a), eb = alg_.basis_element(b);
      if (alg_.sharp(alg_.star(ea, eb)) != alg_.star(alg_.sharp(eb), alg_.sharp(ea))) fail_with(r, pair_text(a, b));
    });
  }

  void integrality(CheckResult& r) {
    for (std::size_t a = 0; a < alg_.dim(); ++a)
      for (std::size_t b = 0; b < alg_.dim(); ++b)
        for (const auto& [t, c] : alg_.product(a, b)) {
          ++r.count;
          if (c <= 0) fail_with(r, pair_text(a, b) + " coefficient " + std::to_string(c));
        }
  }

  void differential_product(CheckResult& r) {
    for_pairs(r, [&](std::size_t a, std::size_t b) {
      ++r.count;
      const auto ea = alg_.basis_element(a), eb = alg_.basis_element(b);
      const auto def = alg_.star_definitional(ea, eb);
      if (def != alg_.star_orbit_level(a, b) || def != alg_.star(ea, eb)) fail_with(r, pair_text(a, b));
    });
  }

  void semisimplicity(CheckResult& r) {
    r.count = alg_.dim();
    const auto rad = alg_.radical_dimension();
    if (rad != 0) fail_with(r, "radical dimension " + std::to_string(rad));
  }

  void pair_orbit_sizes(CheckResult& r) {
    for (std::size_t o = 0; o < alg_.pair_orbit_count(); ++o) {
      ++r.count;
      const auto& p = alg_.pair_orbit(o);
      const auto want = x_.group_order() / gf2::intersect(p.a, p.b).order();
      if (p.members.size() != want)
        fail_with(r, "pair orbit " + std::to_string(o) + " has " + std::to_string(p.members.size()) + " members");
    }
  }

  void eb_orbit_sizes(CheckResult& r) {
    for (std::size_t sa = 0; sa < alg_.stratum_count(); ++sa)
      for (std::size_t sc = 0; sc < alg_.stratum_count(); ++sc)
        for (const auto& b : subspaces_) {
          const auto& a = alg_.stratum_subspace(sa);
          const auto& c = alg_.stratum_subspace(sc);
          const auto want = x_.group_order() * b.order() / u_group_order(a, b, c);
          std::size_t covered = 0;
          for (const auto& m : eb_orbits(x_, a, b, c)) {
            ++r.count;
            const std::string where = "M in X_" + a.to_string() + " x X_" + c.to_string() + " for B " + b.to_string();
            if (m.members.size() != want)
              fail_with(r, where + " has " + std::to_string(m.members.size()) + " members, expected " +
                               std::to_string(want));
            // a union of whole pair orbits
            std::map<std::size_t, std::size_t> hits;
            for (const auto& [p, q] : m.members) ++hits[alg_.pair_orbit_of(p, q)];
            for (const auto& [o, h] : hits)
              if (h != alg_.pair_orbit(o).members.size()) fail_with(r, where + " splits a pair orbit");
            covered += m.members.size();
          }
          if (covered != alg_.stratum_points(sa).size() * alg_.stratum_points(sc).size())
            fail_with(r, "E x B orbits do not cover X_" + a.to_string() + " x X_" + c.to_string());
        }
  }

  void bullet_single_orbit(CheckResult& r) {
    for (std::size_t o = 0; o < alg_.pair_orbit_count(); ++o) {
      const auto sb = alg_.block_of(o).second;
      for (std::size_t sc = 0; sc < alg_.stratum_count(); ++sc)
        for (auto o2 : alg_.block_orbits(sb, sc)) {
          if (x_.orbit_of(alg_.pair_orbit(o).rep().second) != x_.orbit_of(alg_.pair_orbit(o2).rep().first)) continue;
          ++r.count;
          const auto res = alg_.bullet(o, o2);
          const auto& po = alg_.pair_orbit(o);
          const auto& a = po.a;
          const auto& b = po.b;
          const auto& c = alg_.pair_orbit(o2).b;
          const auto want = x_.group_order() * b.order() / u_group_order(a, b, c);
          if (res.image != res.orbit.members)
            fail_with(r, "O . O' for pair orbits " + std::to_string(o) + ", " + std::to_string(o2) +
                             " is not one E x B orbit");
          else if (res.image.size() != want)
            fail_with(r, "O . O' for pair orbits " + std::to_string(o) + ", " + std::to_string(o2) + " has size " +
                             std::to_string(res.image.size()));
        }
    }
  }

  void n_power_of_two(CheckResult& r) {
    std::vector<Subspace> pool;
    if (x_.e_dim() <= 3) {
      pool = subspaces_;
      r.detail = "all subspace triples";
    } else {
      for (std::size_t s = 0; s < alg_.stratum_count(); ++s) pool.push_back(alg_.stratum_subspace(s));
      r.detail = "stratum triples";
    }
    for (const auto& a : pool)
      for (const auto& b : pool)
        for (const auto& c : pool) {
          ++r.count;
          const Rational q(mpz_class(std::to_string(u_group_order(a, b, c) * gf2::intersect(gf2::intersect(a, b), c).order())),
                           mpz_class(std::to_string(gf2::intersect(a, b).order() * gf2::intersect(b, c).order() *
                                                    gf2::intersect(a, c).order())));
          Rational n = q;
          n.canonicalize();
          const bool integral = n.get_den() == 1;
          const auto v = integral ? n.get_num().get_ui() : 0;
          if (!integral || v == 0 || (v & (v - 1)) != 0 || v != n_abc(a, b, c))
            fail_with(r, "N for (" + a.to_string() + ", " + b.to_string() + ", " + c.to_string() + ") = " +
                             rational_text(n));
        }
  }

  // (orbit, B) over every E-orbit and every subspace
  template <class F>
  void for_ideals(F&& f) {
    for (std::size_t o = 0; o < x_.orbit_count(); ++o)
      for (const auto& b : subspaces_) f(o, b, ideal_basis(alg_, o, b));
  }
  std::string ideal_text(std::size_t o, const Subspace& b) const {
    return "[[o" + std::to_string(o) + " " + b.to_string() + "]]";
  }

  void ideal_independence(CheckResult& r) {
    for_ideals([&](std::size_t o, const Subspace& b, const IdealBasis& ib) {
      absorb(r, verify_independent(alg_, ib), ideal_text(o, b));
    });
  }

  void right_ideal(CheckResult& r) {
    for_ideals([&](std::size_t o, const Subspace& b, const IdealBasis& ib) {
      absorb(r, verify_right_ideal(alg_, ib), ideal_text(o, b));
    });
  }

  void positivity(CheckResult& r) {
    for_ideals([&](std::size_t o, const Subspace& b, const IdealBasis& ib) {
      const auto mats = right_ideal_action(alg_, ib.elements);
      for (std::size_t g = 0; g < mats.size(); ++g) {
        const auto& m = mats[g];
        for (std::size_t i = 0; i < m.rows(); ++i)
          for (std::size_t j = 0; j < m.cols(); ++j) {
            ++r.count;
            const auto& v = m(i, j);
            if (v < 0 || v.get_den() != 1)
              fail_with(r, ideal_text(o, b) + " generator " + alg_.label_text(g) + " entry (" + std::to_string(i) +
                               "," + std::to_string(j) + ") = " + rational_text(v));
          }
      }
    });
  }

  void label_partition(CheckResult& r) {
    for_ideals([&](std::size_t o, const Subspace& b, const IdealBasis& ib) {
      ++r.count;
      const auto p = partition_structure(alg_, ib);
      if (!p.disjoint || !p.covers)
        fail_with(r, ideal_text(o, b) + (p.disjoint ? " does not cover" : " overlaps"));
    });
  }

  void bullet_cover(CheckResult& r) {
    for (std::size_t o = 0; o < alg_.pair_orbit_count(); ++o)
      absorb(r, verify_bullet_cover(alg_, o), "pair orbit " + std::to_string(o));
  }

  void generator_span(CheckResult& r) {
    for (std::size_t o = 0; o < x_.orbit_count(); ++o) {
      const auto sa = alg_.stratum_of_point(x_.orbit_points(o).front());
      for (std::size_t sb = 0; sb < alg_.stratum_count(); ++sb) {
        const auto ib = ideal_basis(alg_, o, alg_.stratum_subspace(sb));
        const auto target = span_of(alg_, ib.elements);
        for (auto po : alg_.block_orbits(sa, sb)) {
          if (x_.orbit_of(alg_.pair_orbit(po).rep().first) != o) continue;
          const auto meet = alg_.meet(sa, sb);
          for (const auto& eps : gf2::forms_on(meet)) {
            ++r.count;
            if (!same_span(fconv::generator_span(alg_, po, eps.values()), target))
              fail_with(r, "[O]^eps * F for " + alg_.label_text(alg_.label_index(po, eps.values())));
          }
        }
      }
    }
  }

  void dimension_formula(CheckResult& r) {
    const auto counts = orbit_counts(x_);
    for_ideals([&](std::size_t o, const Subspace& b, const IdealBasis& ib) {
      ++r.count;
      const auto want = dim_closed_form(x_.orbit_stabilizer(o), b, counts);
      if (want != ib.elements.size())
        fail_with(r, ideal_text(o, b) + " has " + std::to_string(ib.elements.size()) + " elements, formula " +
                         std::to_string(want));
    });
  }

  void direct_sum_case(CheckResult& r) {
    const auto full = Subspace::full(x_.e_dim());
    for_ideals([&](std::size_t o, const Subspace& b, const IdealBasis& ib) {
      const auto& a = x_.orbit_stabilizer(o);
      if (gf2::intersect(a, b).dim() != 0 || gf2::subspace_sum(a, b) != full) return;
      ++r.count;
      if (ib.elements.size() != x_.orbit_count())
        fail_with(r, ideal_text(o, b) + " has " + std::to_string(ib.elements.size()) + " elements, " +
                         std::to_string(x_.orbit_count()) + " E-orbits");
      // each element is the full sum over o x o' and every eps
      for (std::size_t i = 0; i < ib.elements.size(); ++i) {
        const auto& entry = ib.index[i];
        const auto parts = entry.parts.size();
        const auto meet_ac = gf2::intersect(a, alg_.stratum_subspace(entry.c_stratum));
        if (ib.elements[i].terms().size() != parts * meet_ac.order())
          fail_with(r, ideal_text(o, b) + " element " + std::to_string(i) + " is not a full orbit sum");
      }
    });
  }

  void equal_case(CheckResult& r) {
    const auto counts = orbit_counts(x_);
    for (std::size_t o = 0; o < x_.orbit_count(); ++o) {
      const auto& a = x_.orbit_stabilizer(o);
      const auto ib = ideal_basis(alg_, o, a);
      ++r.count;
      std::uint64_t want = 0;
      for (const auto& [c, k] : counts) {
        const auto m = gf2::intersect(a, c).order();
        want += k * x_.group_order() * m * m / (a.order() * c.order());
      }
      if (ib.elements.size() != want)
        fail_with(r, ideal_text(o, a) + " has " + std::to_string(ib.elements.size()) + " elements, expected " +
                         std::to_string(want));
      for (std::size_t i = 0; i < ib.index.size(); ++i)
        if (ib.index[i].parts.size() != 1 || ib.elements[i].terms().size() != 1)
          fail_with(r, ideal_text(o, a) + " element " + std::to_string(i) + " is not a single label");
    }
  }

  void preorder_containment(CheckResult& r) {
    for (std::size_t o = 0; o < x_.orbit_count(); ++o) {
      const auto& a = x_.orbit_stabilizer(o);
      for (const auto& bs : subspaces_)
        for (const auto& bb : subspaces_) {
          if (bs == bb || !preorder_leq(a, bs, bb).holds) continue;
          absorb(r, verify_containment(alg_, o, bs, bb),
                 ideal_text(o, bs) + " in " + ideal_text(o, bb));
        }
    }
  }

  void shift_isomorphism(CheckResult& r) {
    for (const auto& a : x_.strata()) {
      const auto orbits = e_orbits(x_, a);
      for (std::size_t k = 1; k < orbits.size(); ++k)
        for (const auto& b : subspaces_) {
          ++r.count;
          const auto s = fconv::shift_isomorphism(alg_, orbits[0], orbits[k], b);
          if (!s.bijective || !s.intertwines)
            fail_with(r, ideal_text(orbits[0], b) + " -> " + ideal_text(orbits[k], b) +
                             (s.bijective ? " does not intertwine" : " is not a bijection"));
        }
    }
    if (r.count == 0) r.detail = "no stabilizer carries two orbits";
  }

  void catalog(CheckResult& r) {
    const auto cat = dim2_catalog(alg_);
    r.count = cat.entries.size();
    if (!cat.all_pass()) {
      for (std::size_t i = 0; i < cat.entries.size(); ++i) {
        const auto& e = cat.entries[i];
        if (!e.dims_match || !e.isomorphisms_hold || !e.equalities_hold || !e.simple)
          fail_with(r, "entry " + std::to_string(i) + " (" + e.dim_formula + ")");
      }
      if (cat.sum_of_squares != cat.algebra_dim)
        fail_with(r, "sum of squares " + std::to_string(cat.sum_of_squares) + " vs dim F " +
                         std::to_string(cat.algebra_dim));
      if (!cat.pairwise_nonisomorphic) fail_with(r, "two entries are isomorphic");
      fail_with(r, "catalog incomplete");
    }
  }

  const ConvolutionAlgebra& alg_;
  const ESet& x_;
  VerifyOptions opt_;
  std::mt19937_64 rng_;
  std::vector<Subspace> subspaces_;
  std::vector<std::vector<std::size_t>> by_first_;
};

void check_bound(const ESet& x, std::size_t max_dim) {
  const auto d = convolution_dimension(x);
  if (d > max_dim)
    fail(ErrorKind::resource_limit,
         "dim F = " + std::to_string(d) + " exceeds the bound " + std::to_string(max_dim) + " (raise --max-dim)");
}

}  // namespace

VerificationReport verify(const InstanceFile& instance, const VerifyOptions& options) {
  ESet x(instance.spec);
  check_bound(x, options.max_dim);
  ConvolutionAlgebra alg(std::move(x));
  VerificationReport rep;
  rep.name = instance.name;
  rep.dim_f = alg.dim();
  rep.seed = options.seed;
  rep.checks = Verifier(alg, options).run();
  return rep;
}

Json to_json(const VerificationReport& report, bool with_timings) {
  Json j;
  j["name"] = report.name;
  j["dim_F"] = report.dim_f;
  j["seed"] = report.seed;
  j["status"] = report.pass() ? "pass" : "fail";
  j["checks"] = Json::array();
  for (const auto& c : report.checks) {
    Json cj{{"id", c.id}, {"status", c.pass ? "pass" : "fail"}, {"count", c.count}};
    if (!c.detail.empty()) cj["detail"] = c.detail;
    if (c.witness) cj["witness"] = *c.witness;
    if (with_timings) cj["elapsed_ms"] = c.elapsed_ms;
    j["checks"].push_back(std::move(cj));
  }
  return j;
}

std::string to_text(const VerificationReport& report, bool with_timings) {
  std::ostringstream s;
  s << "instance " << report.name << ": dim F = " << report.dim_f << ", seed " << report.seed << "\n";
  for (const auto& c : report.checks) {
    s << (c.pass ? "PASS " : "FAIL ") << c.id << " (" << c.count << ")";
    if (!c.detail.empty()) s << " " << c.detail;
    if (with_timings) s << " " << static_cast<long long>(c.elapsed_ms) << " ms";
    s << "\n";
    if (c.witness) s << "     witness: " << *c.witness << "\n";
  }
  s << (report.pass() ? "all checks pass" : "some checks FAILED") << "\n";
  return s.str();
}

// ---------------------------------------------------------------- ideal

Json ideal_report(const InstanceFile& instance, const Subspace& a, std::size_t orbit_index, const Subspace& b,
                  std::size_t max_dim) {
  ESet x(instance.spec);
  if (a.ambient_dim() != x.e_dim() || b.ambient_dim() != x.e_dim())
    fail(ErrorKind::invalid_input, "subspace of the wrong ambient dimension");
  const auto orbits = e_orbits(x, a);
  if (orbit_index >= orbits.size())
    fail(ErrorKind::invalid_input, "no orbit " + std::to_string(orbit_index) + " with stabilizer " + a.to_string() +
                                       " (" + std::to_string(orbits.size()) + " present)");
  check_bound(x, max_dim);
  ConvolutionAlgebra alg(std::move(x));
  const auto ib = ideal_basis(alg, orbits[orbit_index], b);
  const auto mats = action_matrices(alg, ib);

  Json j;
  j["name"] = instance.name;
  j["A"] = a.to_string();
  j["B"] = b.to_string();
  j["orbit_index"] = orbit_index;
  j["orbit"] = orbits[orbit_index];
  j["dim_F"] = alg.dim();
  j["dim"] = ib.elements.size();
  j["elements"] = Json::array();
  for (std::size_t i = 0; i < ib.elements.size(); ++i) {
    const auto& e = ib.index[i];
    Json terms = Json::array();
    for (const auto& [l, c] : ib.elements[i].terms())
      terms.push_back({{"label", l}, {"text", alg.label_text(l)}, {"coef", rational_json(c)}});
    std::vector<std::size_t> parts(e.parts.begin(), e.parts.end());
    j["elements"].push_back({{"C", alg.stratum_subspace(e.c_stratum).to_string()},
                             {"alpha", form_text(e.alpha)},
                             {"eb_orbit_parts", parts},
                             {"terms", terms}});
  }
  j["matrices"] = Json::array();
  for (const auto& m : mats) {
    Json rows = Json::array();
    for (std::size_t r = 0; r < m.matrix.rows(); ++r) {
      Json row = Json::array();
      for (std::size_t c = 0; c < m.matrix.cols(); ++c) row.push_back(rational_json(m.matrix(r, c)));
      rows.push_back(std::move(row));
    }
    j["matrices"].push_back({{"generator", m.generator}, {"text", alg.label_text(m.generator)}, {"rows", rows}});
  }
  return j;
}

std::string ideal_text(const Json& j) {
  std::ostringstream s;
  s << "ideal [[o B]] with A = " << j["A"].get<std::string>() << ", orbit " << j["orbit_index"] << " (E-orbit "
    << j["orbit"] << "), B = " << j["B"].get<std::string>() << ": dim " << j["dim"] << "\n";
  std::size_t i = 0;
  for (const auto& e : j["elements"]) {
    s << "  f" << i++ << " (C " << e["C"].get<std::string>() << ", alpha " << e["alpha"].get<std::string>() << ") =";
    bool firstterm = true;
    for (const auto& t : e["terms"]) {
      s << (firstterm ? " " : " + ");
      if (t["coef"] != 1) s << t["coef"].dump() << "*";
      s << t["text"].get<std::string>();
      firstterm = false;
    }
    s << "\n";
  }
  s << "action matrices (row i = f_i * g^#):\n";
  for (const auto& m : j["matrices"]) {
    s << "  g = " << m["text"].get<std::string>() << "\n";
    for (const auto& row : m["rows"]) {
      s << "   ";
      for (const auto& v : row) s << " " << v.dump();
      s << "\n";
    }
  }
  return s.str();
}

// ---------------------------------------------------------------- catalog

Json to_json(const Catalog& cat) {
  Json j;
  j["entries"] = Json::array();
  for (const auto& e : cat.entries) {
    Json ps = Json::array();
    for (const auto& p : e.presentations) {
      Json pj{{"text", p.text},
              {"A", p.a},
              {"numerator", p.numerator},
              {"denominators", p.denominators},
              {"present", p.module.has_value()}};
      if (p.module) {
        pj["dim"] = p.module->dim;
        pj["simple"] = p.simple;
        pj["natural_action"] = p.natural_action;
      }
      if (!p.error.empty()) pj["error"] = p.error;
      ps.push_back(std::move(pj));
    }
    Json eq = Json::array();
    for (const auto& [a, b] : e.equalities) eq.push_back({a, b});
    j["entries"].push_back({{"dim_formula", e.dim_formula},
                            {"formula_dim", e.formula_dim},
                            {"dim", e.dim},
                            {"dims_match", e.dims_match},
                            {"isomorphisms_hold", e.isomorphisms_hold},
                            {"equalities_hold", e.equalities_hold},
                            {"simple", e.simple},
                            {"equalities", eq},
                            {"presentations", ps}});
  }
  j["distinguished"] = Json::array();
  for (const auto& d : cat.distinguished) {
    Json dj{{"name", d.name}, {"positive", d.positive}};
    dj["dim"] = d.dim ? Json(*d.dim) : Json(nullptr);
    j["distinguished"].push_back(std::move(dj));
  }
  j["sum_of_squares"] = cat.sum_of_squares;
  j["dim_F"] = cat.algebra_dim;
  j["pairwise_nonisomorphic"] = cat.pairwise_nonisomorphic;
  j["complete"] = cat.complete;
  j["status"] = cat.all_pass() ? "pass" : "fail";
  return j;
}

Json catalog_report(const InstanceFile& instance, std::size_t max_dim) {
  ESet x(instance.spec);
  if (x.e_dim() != 2) fail(ErrorKind::invalid_input, "the catalog needs dim E = 2, got " + std::to_string(x.e_dim()));
  check_bound(x, max_dim);
  ConvolutionAlgebra alg(std::move(x));
  auto j = to_json(dim2_catalog(alg));
  j["name"] = instance.name;
  return j;
}

std::string catalog_text(const Json& j) {
  std::ostringstream s;
  s << "simple modules for " << j["name"].get<std::string>() << " (dim F = " << j["dim_F"] << ")\n";
  std::size_t i = 0;
  for (const auto& e : j["entries"]) {
    std::vector<std::string> texts;
    for (const auto& p : e["presentations"]) {
      std::string t = p["text"].get<std::string>();
      if (!p["present"].get<bool>()) t += " (absent)";
      texts.push_back(t);
    }
    s << std::setw(2) << i++ << "  dim " << e["dim"] << " = " << e["dim_formula"].get<std::string>() << "  "
      << (e["dims_match"].get<bool>() && e["isomorphisms_hold"].get<bool>() && e["equalities_hold"].get<bool>() &&
                  e["simple"].get<bool>()
              ? "ok"
              : "FAIL")
      << "\n      " << join(texts, " ~ ") << "\n";
  }
  s << "distinguished right ideals:\n";
  for (const auto& d : j["distinguished"])
    s << "  " << d["name"].get<std::string>() << " dim " << (d["dim"].is_null() ? std::string("-") : d["dim"].dump())
      << (d["positive"].get<bool>() ? " positive" : "") << "\n";
  s << "sum of squares " << j["sum_of_squares"] << " vs dim F " << j["dim_F"] << "; "
    << (j["pairwise_nonisomorphic"].get<bool>() ? "pairwise non-isomorphic" : "isomorphic entries present") << "; "
    << (j["complete"].get<bool>() ? "complete" : "incomplete") << "\n";
  return s.str();
}

}  // namespace fconv
