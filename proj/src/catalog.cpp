#include "lgmirror/catalog.hpp"

#include <algorithm>
#include <atomic>
#include <condition_variable>
#include <mutex>
#include <optional>
#include <random>
#include <set>
#include <thread>

#include "lgmirror/frobenius.hpp"
#include "lgmirror/parse.hpp"
#include "lgmirror/statespace.hpp"

namespace lgm {

namespace {

Json integer_json(const Integer& x) {
  if (x.fits_slong_p()) return x.get_si();
  return to_string(x);
}

Json rationals_json(const std::vector<Rational>& xs) {
  Json a = Json::array();
  for (const auto& x : xs) a.push_back(to_string(x));
  return a;
}

void exponent_tuples(int len, int max_exp, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == len) {
    out.push_back(cur);
    return;
  }
  for (int a = 2; a <= max_exp; ++a) {
    cur.push_back(a);
    exponent_tuples(len, max_exp, cur, out);
    cur.pop_back();
  }
}

bool minimal_rotation(const std::vector<int>& a) {
  for (std::size_t r = 1; r < a.size(); ++r) {
    std::vector<int> b(a.begin() + r, a.end());
    b.insert(b.end(), a.begin(), a.begin() + r);
    if (b < a) return false;
  }
  return true;
}

// canonical atoms of each length, sorted by (kind, exponents)
std::vector<Atom> atoms_up_to(int n, int max_exp) {
  std::vector<Atom> out;
  for (AtomKind kind : {AtomKind::Fermat, AtomKind::Loop, AtomKind::Chain}) {
    for (int len = 1; len <= n; ++len) {
      if ((kind == AtomKind::Fermat) != (len == 1)) continue;
      std::vector<std::vector<int>> tuples;
      std::vector<int> cur;
      exponent_tuples(len, max_exp, cur, tuples);
      for (auto& t : tuples) {
        if (kind == AtomKind::Loop && !minimal_rotation(t)) continue;
        Atom a;
        a.kind = kind;
        a.exponents = std::move(t);
        out.push_back(std::move(a));
      }
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const Atom& x, const Atom& y) {
    return std::tie(x.kind, x.exponents) < std::tie(y.kind, y.exponents);
  });
  return out;
}

void choose_atoms(const std::vector<Atom>& atoms, std::size_t from, int remaining, std::vector<Atom>& cur,
                  std::vector<std::vector<Atom>>& out) {
  if (remaining == 0) {
    out.push_back(cur);
    return;
  }
  for (std::size_t i = from; i < atoms.size(); ++i) {
    int len = static_cast<int>(atoms[i].exponents.size());
    if (len > remaining) continue;
    cur.push_back(atoms[i]);
    choose_atoms(atoms, i, remaining - len, cur, out);
    cur.pop_back();
  }
}

std::string error_text(const std::exception& e) {
  if (auto* le = dynamic_cast<const Error*>(&e)) return le->kind() + ": " + le->what();
  return e.what();
}

struct Battery {
  const InvertiblePolynomial& poly;
  const VerifyOptions& options;
  const Json* stored;
  GroupPtr host;
  GroupPtr dual_host;
  std::vector<Subgroup> subgroups;
  bool exhaustive = false;

  Battery(const InvertiblePolynomial& p, const VerifyOptions& o, const Json* s)
      : poly(p), options(o), stored(s), host(make_group(p)), dual_host(make_group(transpose(p))) {
    if (host->order() <= options.max_group) {
      subgroups = enumerate_subgroups(host, options.max_group);
      exhaustive = true;
    } else {
      for (auto g : {trivial_subgroup(host), j_subgroup(host), sl_subgroup(host), full_subgroup(host)})
        if (std::find(subgroups.begin(), subgroups.end(), g) == subgroups.end()) subgroups.push_back(g);
    }
  }

  void canonical_id(CheckResult& c) const {
    AtomDecomposition d = decompose(poly);
    c.cases = 1;
    if (stored && stored->contains("id") && (*stored)["id"] != d.canonical_id()) {
      c.status = "fail";
      c.detail = "stored id differs from " + d.canonical_id();
    }
  }

  void charge_check(CheckResult& c) const {
    ChargeVector q = charges(poly);
    const std::size_t n = poly.n_vars();
    for (std::size_t i = 0; i < n; ++i) {
      Rational s = 0;
      for (std::size_t j = 0; j < n; ++j) s += poly.exponent(i, j) * q.charges[j];
      if (s != 1) {
        c.status = "fail";
        c.detail = "monomial " + std::to_string(i + 1) + " has degree " + to_string(s);
        return;
      }
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (q.charges[j] <= 0 || q.charges[j] > make_rational(1, 2) || q.weights[j] != q.degree * q.charges[j]) {
        c.status = "fail";
        c.detail = "charge " + to_string(q.charges[j]) + " out of range";
        return;
      }
    }
    if (stored) {
      const Json& s = *stored;
      if ((s.contains("charges") && s["charges"] != rationals_json(q.charges)) ||
          (s.contains("degree") && s["degree"] != integer_json(q.degree))) {
        c.status = "fail";
        c.detail = "stored charges differ from E^{-1} 1";
        return;
      }
    }
    c.cases = n;
  }

  void milnor_check(CheckResult& c) const {
    auto cache = std::make_shared<const MilnorCache>(poly);
    std::set<std::vector<int>> loci;
    for (const auto& g : host->elements()) loci.insert(fixed_indices(g));
    std::mt19937 rng(2024);
    const ChargeVector& q = cache->charges();
    for (const auto& locus : loci) {
      RingPtr r = cache->get(locus);
      Rational expected = 1;
      for (int j : locus) expected *= 1 / q.charges[j] - 1;
      if (Rational(static_cast<long>(r->mu())) != expected) {
        c.status = "fail";
        c.detail = "basis size " + std::to_string(r->mu()) + " differs from " + to_string(expected);
        return;
      }
      if (locus.size() == poly.n_vars() && stored && stored->contains("milnor_number") &&
          (*stored)["milnor_number"] != integer_json(Integer(static_cast<unsigned long>(r->mu())))) {
        c.status = "fail";
        c.detail = "stored Milnor number differs";
        return;
      }
      // the Gram matrix pairs degree l with |I| - l
      std::map<Rational, std::vector<std::size_t>> by_degree;
      for (std::size_t i = 0; i < r->mu(); ++i) by_degree[r->basis_degrees()[i]].push_back(i);
      const Rational total(static_cast<long>(locus.size()));
      for (const auto& [l, rows] : by_degree) {
        auto it = by_degree.find(total - l);
        if (it == by_degree.end() || it->second.size() != rows.size()) {
          c.status = "fail";
          c.detail = "graded pieces of degree " + to_string(l) + " and " + to_string(total - l) + " differ";
          return;
        }
        if (l > total - l) continue;
        RationalMatrix block(rows.size(), rows.size());
        for (std::size_t a = 0; a < rows.size(); ++a)
          for (std::size_t b = 0; b < rows.size(); ++b) block(a, b) = r->basis_pairing(rows[a], it->second[b]);
        if (determinant(block) == 0) {
          c.status = "fail";
          c.detail = "residue pairing degenerate on locus of size " + std::to_string(locus.size());
          return;
        }
      }
      std::uniform_int_distribution<std::size_t> pick(0, r->mu() - 1);
      for (unsigned k = 0; k < options.random_triples; ++k) {
        Poly a = poly_from_monomial(r->basis()[pick(rng)]);
        Poly b = poly_from_monomial(r->basis()[pick(rng)]);
        Poly d = poly_from_monomial(r->basis()[pick(rng)]);
        if (r->residue_pairing(poly_mul(a, b), d) != r->residue_pairing(a, poly_mul(b, d))) {
          c.status = "fail";
          c.detail = "Frobenius property fails";
          return;
        }
      }
      ++c.cases;
    }
  }

  void duality_check(CheckResult& c) const {
    std::vector<Subgroup> duals;
    for (const auto& g : subgroups) {
      Subgroup d = dual_group(g, dual_host);
      if (!(dual_group(d, host) == g)) {
        c.status = "fail";
        c.detail = "double dual differs for |G| = " + std::to_string(g.order());
        return;
      }
      if (g.order() * d.order() != host->order()) {
        c.status = "fail";
        c.detail = "|G| |G^vee| differs from |Aut(W)|";
        return;
      }
      duals.push_back(std::move(d));
    }
    for (std::size_t a = 0; a < subgroups.size(); ++a)
      for (std::size_t b = 0; b < subgroups.size(); ++b)
        if (subgroups[a].is_subgroup_of(subgroups[b]) && !duals[b].is_subgroup_of(duals[a])) {
          c.status = "fail";
          c.detail = "inclusion not reversed";
          return;
        }
    if (!(dual_group(trivial_subgroup(host), dual_host) == full_subgroup(dual_host)) ||
        !(dual_group(j_subgroup(host), dual_host) == sl_subgroup(dual_host))) {
      c.status = "fail";
      c.detail = "{1} or <j> has the wrong dual";
      return;
    }
    c.cases = subgroups.size();
  }

  void krawitz_check(CheckResult& c) const {
    for (const auto& g : subgroups) {
      if (!admissibility(g).a_admissible) continue;
      if (!krawitz_compare(g).pass) {
        c.status = "fail";
        c.detail = "bigraded tables differ for |G| = " + std::to_string(g.order());
        return;
      }
      ++c.cases;
    }
  }

  void mirror_check_all(CheckResult& c) const {
    if (charges(poly).sum() != 1) {
      c.status = "skipped";
      c.detail = "not Calabi-Yau";
      return;
    }
    for (const auto& g : subgroups) {
      if (!is_calabi_yau_type(g)) continue;
      if (!mirror_check(g).pass) {
        c.status = "fail";
        c.detail = "diamond does not flip for |G| = " + std::to_string(g.order());
        return;
      }
      ++c.cases;
    }
  }

  void pairing_check(CheckResult& c) const {
    auto cache = std::make_shared<const MilnorCache>(poly);
    for (const auto& g : subgroups) {
      Admissibility adm = admissibility(g);
      for (Flavor f : {Flavor::A, Flavor::B}) {
        if ((f == Flavor::A && !adm.a_admissible) || (f == Flavor::B && !adm.b_admissible)) continue;
        StateSpace s = build_state_space(f, g, cache);
        if (pairing_rank(s) != s.total_dim()) {
          c.status = "fail";
          c.detail = to_string(f) + " pairing degenerate for |G| = " + std::to_string(g.order());
          return;
        }
        ++c.cases;
      }
    }
  }

  void frobenius_check(CheckResult& c) const {
    auto cache = std::make_shared<const MilnorCache>(poly);
    for (const auto& g : subgroups) {
      if (!admissibility(g).b_admissible || g.order() > options.frobenius_order) continue;
      AlgebraLaws laws = check_algebra_laws(FrobeniusAlgebra(g, cache));
      if (!laws.unit || !laws.grading || !laws.associative) {
        c.status = "fail";
        c.detail = std::string(!laws.unit ? "unit law" : !laws.grading ? "grading" : "associativity") +
                   " fails for |G| = " + std::to_string(g.order());
        return;
      }
      ++c.cases;
    }
  }
};

}  // namespace

AlgebraLaws check_algebra_laws(const FrobeniusAlgebra& a) {
  AlgebraLaws laws;
  const std::size_t n = a.sector_count();
  auto one = a.identity();
  for (const auto& cls : a.space().classes()) {
    auto x = a.class_element(cls);
    if (!equal(a.multiply(one, x), x) || !equal(a.multiply(x, one), x)) laws.unit = false;
  }
  std::vector<std::vector<FrobeniusAlgebra::Element>> prod(n, std::vector<FrobeniusAlgebra::Element>(n));
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      prod[x][y] = a.multiply(a.unit(x), a.unit(y));
      if (is_zero(prod[x][y])) continue;
      auto bx = a.bidegree(a.unit(x)), by = a.bidegree(a.unit(y)), bxy = a.bidegree(prod[x][y]);
      if (!bx || !by || !bxy || bxy->first != bx->first + by->first || bxy->second != bx->second + by->second)
        laws.grading = false;
    }
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z) {
        ++laws.triples;
        if (!equal(a.multiply(prod[x][y], a.unit(z)), a.multiply(a.unit(x), prod[y][z]))) laws.associative = false;
      }
  return laws;
}

CatalogEntry make_entry(const InvertiblePolynomial& p) {
  CatalogEntry e;
  e.id = decompose(p).canonical_id();
  e.polynomial = p;
  e.charges = charges(p);
  e.predicates = predicates(p);
  Integer det = determinant(p.exponent_matrix());
  e.aut_order = Integer(abs(det)).get_ui();
  return e;
}

std::vector<InvertiblePolynomial> enumerate_atom_sums(int n_vars, int max_exp) {
  if (n_vars < 1) throw InvalidArgument("need at least one variable");
  if (max_exp < 2) throw InvalidArgument("exponents start at 2");
  std::vector<Atom> atoms = atoms_up_to(n_vars, max_exp);
  std::vector<std::vector<Atom>> choices;
  std::vector<Atom> cur;
  choose_atoms(atoms, 0, n_vars, cur, choices);
  std::vector<InvertiblePolynomial> out;
  std::set<std::string> seen;
  for (const auto& c : choices) {
    InvertiblePolynomial p = from_atoms(c);
    if (seen.insert(decompose(p).canonical_id()).second) out.push_back(std::move(p));
  }
  return out;
}

std::vector<CatalogEntry> enumerate_catalog(int n_vars, int max_exp, bool cy_only, unsigned threads) {
  std::vector<InvertiblePolynomial> polys = enumerate_atom_sums(n_vars, max_exp);
  std::vector<std::optional<CatalogEntry>> slots(polys.size());
  ordered_parallel(
      polys.size(), threads,
      [&](std::size_t i) {
        if (!cy_only || charges(polys[i]).sum() == 1) slots[i] = make_entry(polys[i]);
        return std::string();
      },
      [](std::size_t, const std::string&) {});
  std::vector<CatalogEntry> out;
  for (auto& s : slots)
    if (s) out.push_back(std::move(*s));
  return out;
}

Json entry_to_json(const CatalogEntry& e) {
  Json j;
  j["id"] = e.id;
  j["polynomial"] = e.polynomial.to_dsl();
  j["exponents"] = e.polynomial.exponents();
  j["charges"] = rationals_json(e.charges.charges);
  j["degree"] = integer_json(e.charges.degree);
  Json w = Json::array();
  for (const auto& x : e.charges.weights) w.push_back(integer_json(x));
  j["weights"] = w;
  j["central_charge"] = to_string(e.charges.central_charge);
  j["calabi_yau"] = e.predicates.is_calabi_yau;
  j["gorenstein"] = e.predicates.is_gorenstein;
  j["milnor_number"] = integer_json(e.predicates.milnor_number);
  j["aut_order"] = e.aut_order;
  return j;
}

const std::vector<std::string>& check_names() {
  static const std::vector<std::string> names = {"canonical_id", "charges", "milnor",  "duality",
                                                 "krawitz",      "mirror",  "pairing", "frobenius"};
  return names;
}

EntryReport verify_polynomial(const InvertiblePolynomial& p, const VerifyOptions& options, const Json* stored) {
  EntryReport rep;
  try {
    rep.id = decompose(p).canonical_id();
    Battery b(p, options, stored);
    rep.exhaustive = b.exhaustive;
    rep.subgroups = b.subgroups.size();
    using Step = void (Battery::*)(CheckResult&) const;
    const std::vector<Step> steps = {&Battery::canonical_id, &Battery::charge_check,     &Battery::milnor_check,
                                     &Battery::duality_check, &Battery::krawitz_check,   &Battery::mirror_check_all,
                                     &Battery::pairing_check, &Battery::frobenius_check};
    for (std::size_t i = 0; i < steps.size(); ++i) {
      CheckResult c;
      c.name = check_names()[i];
      c.status = "pass";
      try {
        (b.*steps[i])(c);
      } catch (const std::exception& e) {
        c.status = "fail";
        c.detail = error_text(e);
      }
      rep.checks.push_back(std::move(c));
    }
  } catch (const Error& e) {
    rep.error_kind = e.kind();
    rep.error_message = e.what();
  }
  rep.pass = rep.error_kind.empty() &&
             std::none_of(rep.checks.begin(), rep.checks.end(), [](const CheckResult& c) { return c.status == "fail"; });
  return rep;
}

EntryReport verify_entry(const std::string& line, const VerifyOptions& options) {
  Json doc;
  try {
    doc = Json::parse(line);
    if (!doc.is_object()) throw SyntaxError("catalog line is not a JSON object");
    std::optional<InvertiblePolynomial> p;
    if (doc.contains("exponents")) {
      Json grid;
      grid["exponents"] = doc["exponents"];
      p = parse_exponent_json(grid.dump());
      if (doc.contains("polynomial") && doc["polynomial"].is_string() &&
          !(parse_polynomial(doc["polynomial"].get<std::string>()) == *p))
        throw InvalidArgument("\"polynomial\" and \"exponents\" disagree");
    } else if (doc.contains("polynomial") && doc["polynomial"].is_string()) {
      p = parse_polynomial(doc["polynomial"].get<std::string>());
    } else {
      throw SyntaxError("catalog line needs \"exponents\" or \"polynomial\"");
    }
    return verify_polynomial(*p, options, &doc);
  } catch (const Json::exception& e) {
    EntryReport rep;
    rep.error_kind = "SyntaxError";
    rep.error_message = e.what();
    return rep;
  } catch (const Error& e) {
    EntryReport rep;
    if (doc.is_object() && doc.contains("id") && doc["id"].is_string()) rep.id = doc["id"].get<std::string>();
    rep.error_kind = e.kind();
    rep.error_message = e.what();
    return rep;
  }
}

Json report_to_json(const EntryReport& r) {
  Json j;
  j["id"] = r.id;
  j["pass"] = r.pass;
  if (!r.error_kind.empty()) {
    j["error"] = {{"kind", r.error_kind}, {"message", r.error_message}};
    return j;
  }
  j["exhaustive"] = r.exhaustive;
  j["subgroups"] = r.subgroups;
  Json checks = Json::object();
  for (const auto& c : r.checks) {
    Json cj;
    cj["status"] = c.status;
    cj["cases"] = c.cases;
    if (!c.detail.empty()) cj["detail"] = c.detail;
    checks[c.name] = cj;
  }
  j["checks"] = checks;
  return j;
}

void VerifySummary::add(const EntryReport& r) {
  ++entries;
  if (!r.error_kind.empty())
    ++rejected;
  else if (r.pass)
    ++passed;
  else
    ++failed;
  for (const auto& c : r.checks) ++by_check[c.name][c.status];
}

Json summary_to_json(const VerifySummary& s) {
  Json j;
  j["entries"] = s.entries;
  j["passed"] = s.passed;
  j["failed"] = s.failed;
  j["rejected"] = s.rejected;
  Json checks = Json::object();
  for (const auto& name : check_names()) {
    Json cj = {{"pass", 0}, {"fail", 0}, {"skipped", 0}};
    auto it = s.by_check.find(name);
    if (it != s.by_check.end())
      for (const auto& [status, n] : it->second) cj[status] = n;
    checks[name] = cj;
  }
  j["checks"] = checks;
  return j;
}

void ordered_parallel(std::size_t n, unsigned threads, const std::function<std::string(std::size_t)>& work,
                      const std::function<void(std::size_t, const std::string&)>& sink) {
  if (threads <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) sink(i, work(i));
    return;
  }
  std::vector<std::optional<std::string>> done(n);
  std::vector<std::exception_ptr> errors(n);
  std::mutex m;
  std::condition_variable ready;
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    while (true) {
      std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      std::string out;
      std::exception_ptr err;
      try {
        out = work(i);
      } catch (...) {
        err = std::current_exception();
      }
      std::lock_guard<std::mutex> lock(m);
      done[i] = std::move(out);
      errors[i] = err;
      ready.notify_all();
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < std::min<std::size_t>(threads, n); ++t) pool.emplace_back(worker);
  std::exception_ptr first;
  for (std::size_t i = 0; i < n; ++i) {
    std::unique_lock<std::mutex> lock(m);
    ready.wait(lock, [&] { return done[i].has_value(); });
    std::string out = std::move(*done[i]);
    std::exception_ptr err = errors[i];
    lock.unlock();
    if (err) {
      if (!first) first = err;
      continue;
    }
    if (!first) sink(i, out);
  }
  for (auto& t : pool) t.join();
  if (first) std::rethrow_exception(first);
}

}  // namespace lgm
