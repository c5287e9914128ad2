#include "lgmirror/cli.hpp"

#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "lgmirror/catalog.hpp"
#include "lgmirror/fjrw.hpp"
#include "lgmirror/frobenius.hpp"
#include "lgmirror/parse.hpp"
#include "lgmirror/statespace.hpp"

namespace lgm {

namespace {

enum class Format { Json, Tsv, Text };

class IoError : public Error {
 public:
  explicit IoError(const std::string& m) : Error("IoError", m) {}
};

const std::map<std::string, int>& exit_codes() {
  static const std::map<std::string, int> codes = {
      {"UsageError", 2},         {"SyntaxError", 3},         {"NotSquare", 4},
      {"RepeatedMonomial", 5},   {"SingularMatrix", 6},      {"ChargeOutOfRange", 7},
      {"NotInvertibleType", 8},  {"NonIntegerMilnor", 9},    {"DegenerateRestriction", 10},
      {"NonIntegralDegree", 11}, {"NotAAdmissible", 12},     {"NotCalabiYau", 13},
      {"NonScalarRelation", 14}, {"UnstableCurve", 15},      {"NotConcave", 16},
      {"BroadNodeEncountered", 17}, {"GroupTooLarge", 18},   {"InvalidArgument", 19},
      {"IoError", 20},           {"VerificationFailed", 21}, {"InternalError", 70}};
  return codes;
}

Json phases_json(const SymmetryElement& g) {
  Json a = Json::array();
  for (std::size_t j = 0; j < g.size(); ++j) a.push_back(to_string(g.phase(j)));
  return a;
}

Json rationals(const std::vector<Rational>& xs) {
  Json a = Json::array();
  for (const auto& x : xs) a.push_back(to_string(x));
  return a;
}

Json integer(const Integer& x) {
  if (x.fits_slong_p()) return x.get_si();
  return to_string(x);
}

std::string monomial_text(const Monomial& m, const std::vector<std::string>& names) {
  std::string s;
  for (std::size_t j = 0; j < m.size(); ++j) {
    if (m[j] == 0) continue;
    if (!s.empty()) s += "*";
    s += names[j];
    if (m[j] != 1) s += "^" + std::to_string(m[j]);
  }
  return s.empty() ? "1" : s;
}

Json names_of(const std::vector<int>& idx, const std::vector<std::string>& names) {
  Json a = Json::array();
  for (int i : idx) a.push_back(names[i]);
  return a;
}

Json charges_json(const ChargeVector& q) {
  Json j;
  j["q"] = rationals(q.charges);
  j["degree"] = integer(q.degree);
  Json w = Json::array();
  for (const auto& x : q.weights) w.push_back(integer(x));
  j["weights"] = w;
  j["central_charge"] = to_string(q.central_charge);
  return j;
}

Json atoms_json(const AtomDecomposition& d, const std::vector<std::string>& names) {
  Json j;
  j["id"] = d.canonical_id();
  Json atoms = Json::array();
  for (const auto& a : d.atoms) {
    Json aj;
    aj["kind"] = to_string(a.kind);
    aj["exponents"] = a.exponents;
    aj["variables"] = names_of(a.variables, names);
    atoms.push_back(aj);
  }
  j["atoms"] = atoms;
  j["permutation"] = names_of(d.permutation, names);
  return j;
}

Json predicates_json(const Predicates& p) {
  return Json{{"calabi_yau", p.is_calabi_yau}, {"gorenstein", p.is_gorenstein},
              {"milnor_number", integer(p.milnor_number)}};
}

Json group_json(const Subgroup& g) {
  Json j;
  j["order"] = g.order();
  Json gens = Json::array();
  for (const auto& x : g.generators()) gens.push_back(phases_json(x));
  j["generators"] = gens;
  Admissibility a = admissibility(g);
  j["a_admissible"] = a.a_admissible;
  j["b_admissible"] = a.b_admissible;
  j["calabi_yau_type"] = is_calabi_yau_type(g);
  return j;
}

Json bidegree_table(const std::map<Bidegree, std::size_t>& t) {
  Json a = Json::array();
  for (const auto& [b, n] : t) a.push_back({{"p", to_string(b.first)}, {"q", to_string(b.second)}, {"dim", n}});
  return a;
}

Json diffs_json(const std::vector<DegreeDiff>& d) {
  Json a = Json::array();
  for (const auto& x : d)
    a.push_back({{"p", to_string(x.bidegree.first)},
                 {"q", to_string(x.bidegree.second)},
                 {"left", x.left},
                 {"right", x.right}});
  return a;
}

Json diamond_json(const Diamond& d) {
  Json j;
  j["dimension"] = d.dimension;
  Json grid = Json::array();
  for (long p = 0; p <= d.dimension; ++p) {
    Json row = Json::array();
    for (long q = 0; q <= d.dimension; ++q) row.push_back(d.at(p, q));
    grid.push_back(row);
  }
  j["h"] = grid;
  j["fractional"] = bidegree_table(d.fractional);
  return j;
}

std::string scalar_text(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return "null";
  return v.dump();
}

void flatten(const Json& v, const std::string& path, std::vector<std::pair<std::string, std::string>>& out) {
  if (v.is_object()) {
    for (const auto& [k, x] : v.items()) flatten(x, path.empty() ? k : path + "." + k, out);
  } else if (v.is_array()) {
    bool scalars = true;
    for (const auto& x : v) scalars = scalars && !x.is_structured();
    if (scalars) {
      std::string s;
      for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + scalar_text(v[i]);
      out.emplace_back(path, s);
    } else {
      for (std::size_t i = 0; i < v.size(); ++i) flatten(v[i], path + "[" + std::to_string(i) + "]", out);
    }
  } else {
    out.emplace_back(path, scalar_text(v));
  }
}

std::string render_flat(const Json& doc, Format f) {
  std::vector<std::pair<std::string, std::string>> rows;
  flatten(doc, "", rows);
  std::ostringstream s;
  for (const auto& [k, v] : rows) s << k << (f == Format::Tsv ? "\t" : ": ") << v << "\n";
  return s.str();
}

std::string render_diamond(const Json& d, Format f) {
  const long n = d["dimension"].get<long>();
  const Json& h = d["h"];
  std::ostringstream s;
  if (f == Format::Tsv) {
    s << "p\\q";
    for (long q = 0; q <= n; ++q) s << "\t" << q;
    s << "\n";
    for (long p = 0; p <= n; ++p) {
      s << p;
      for (long q = 0; q <= n; ++q) s << "\t" << h[p][q].get<std::size_t>();
      s << "\n";
    }
    return s.str();
  }
  std::size_t width = 1;
  for (const auto& row : h)
    for (const auto& x : row) width = std::max(width, std::to_string(x.get<std::size_t>()).size());
  width += 1;
  for (long k = 2 * n; k >= 0; --k) {
    long lo = std::max(0L, k - n), hi = std::min(k, n);
    long count = hi - lo + 1;
    s << std::string(static_cast<std::size_t>((n + 1 - count)) * width, ' ');
    for (long p = hi; p >= lo; --p) {
      std::string v = std::to_string(h[p][k - p].get<std::size_t>());
      s << std::string(2 * width - v.size(), ' ') << v;
    }
    s << "\n";
  }
  return s.str();
}

std::string render_table(const Json& table, Format f) {
  std::ostringstream s;
  if (f == Format::Tsv) s << "p\tq\tdim\n";
  for (const auto& row : table) {
    if (f == Format::Tsv)
      s << row["p"].get<std::string>() << "\t" << row["q"].get<std::string>() << "\t" << row["dim"] << "\n";
    else
      s << "(" << row["p"].get<std::string>() << ", " << row["q"].get<std::string>() << "): " << row["dim"] << "\n";
  }
  return s.str();
}

struct Session {
  Format format = Format::Json;
  std::string out_path;
  std::ostream* out = nullptr;
  std::unique_ptr<std::ofstream> file;

  std::ostream& stream() {
    if (out_path.empty()) return *out;
    if (!file) {
      file = std::make_unique<std::ofstream>(out_path, std::ios::binary | std::ios::trunc);
      if (!*file) throw IoError("cannot write " + out_path);
    }
    return *file;
  }

  void emit(const Json& doc, const std::function<std::string(const Json&, Format)>& custom = nullptr) {
    std::ostream& o = stream();
    if (format == Format::Json)
      o << doc.dump(2) << "\n";
    else if (custom)
      o << custom(doc, format);
    else
      o << render_flat(doc, format);
    o.flush();
    if (!o) throw IoError("write failed");
  }
};

struct PolyArgs {
  std::string positional;
  std::string option;

  void attach(CLI::App* cmd) {
    cmd->add_option("polynomial", positional, "DSL text, exponent-matrix JSON, @file, or a preset");
    cmd->add_option("--poly,-p", option, "same as the positional argument");
  }
  InvertiblePolynomial load() const {
    if (!positional.empty() && !option.empty()) throw InvalidArgument("give the polynomial once");
    const std::string& s = option.empty() ? positional : option;
    if (s.empty()) throw InvalidArgument("no polynomial given");
    return load_polynomial(s);
  }
};

Subgroup group_from(const GroupPtr& host, const std::vector<std::string>& tokens, const std::string& fallback) {
  if (tokens.empty()) return parse_group(host, {fallback});
  return parse_group(host, tokens);
}

Json analyze(const InvertiblePolynomial& p) {
  Json j;
  j["polynomial"] = p.to_dsl();
  j["variables"] = p.names();
  j["exponents"] = p.exponents();
  j["charges"] = charges_json(charges(p));
  j["atoms"] = atoms_json(decompose(p), p.names());
  j["predicates"] = predicates_json(predicates(p));
  j["aut_order"] = integer(Integer(abs(determinant(p.exponent_matrix()))));
  j["transpose"] = transpose(p).to_dsl();
  return j;
}

Json statespace_json(const StateSpace& s, bool with_classes) {
  const auto& names = s.polynomial().names();
  Json j;
  j["flavor"] = to_string(s.flavor());
  j["polynomial"] = s.polynomial().to_dsl();
  j["group"] = group_json(s.group());
  j["dimension"] = s.total_dim();
  j["table"] = bidegree_table(s.table());
  std::map<std::size_t, std::size_t> per_sector;
  for (const auto& c : s.classes()) ++per_sector[c.sector];
  Json sectors = Json::array();
  for (std::size_t i = 0; i < s.sectors().size(); ++i) {
    const Sector& sec = s.sectors()[i];
    sectors.push_back({{"element", phases_json(sec.g)},
                       {"age", to_string(sec.age)},
                       {"fixed", names_of(sec.fixed, names)},
                       {"narrow", sec.narrow()},
                       {"dim", per_sector[i]}});
  }
  j["sectors"] = sectors;
  if (with_classes) {
    Json cls = Json::array();
    for (const auto& c : s.classes())
      cls.push_back({{"sector", c.sector},
                     {"monomial", monomial_text(s.monomial(c), names)},
                     {"p", to_string(c.bidegree.first)},
                     {"q", to_string(c.bidegree.second)}});
    j["classes"] = cls;
  }
  return j;
}

Json profile_json(const ModuliProfile& m) {
  Json j;
  j["genus"] = m.genus;
  j["markings"] = m.markings;
  j["nonempty"] = m.nonempty;
  j["line_degrees"] = rationals(m.line_degrees);
  j["virtual_codim"] = to_string(m.virtual_codim);
  j["cycle_degree"] = to_string(m.cycle_degree);
  j["cover_degree"] = to_string(m.cover_degree);
  return j;
}

Json correlator_json(const CorrelatorResult& r) {
  Json j;
  j["status"] = r.status;
  if (r.status == "ok") {
    j["value"] = to_string(r.value);
    j["normalization"] = to_string(r.normalization);
    j["raw"] = to_string(r.raw);
  }
  j["virtual_codim"] = to_string(r.virtual_codim);
  if (r.coordinate) j["coordinate"] = *r.coordinate;
  return j;
}

std::vector<SymmetryElement> parse_insertions(const SymmetryGroup& host, const std::vector<std::string>& tokens) {
  std::vector<SymmetryElement> out;
  for (const auto& t : tokens) out.push_back(parse_element(host, t));
  return out;
}

// multisets of narrow elements of g of the given size, by group index
std::vector<std::vector<SymmetryElement>> narrow_multisets(const Subgroup& g, std::size_t size) {
  std::vector<SymmetryElement> narrow;
  for (auto idx : g.member_indices()) {
    SymmetryElement e = g.host()->element_at(idx);
    if (fixed_indices(e).empty()) narrow.push_back(e);
  }
  std::vector<std::vector<SymmetryElement>> out;
  std::vector<SymmetryElement> cur;
  std::function<void(std::size_t)> rec = [&](std::size_t from) {
    if (cur.size() == size) {
      out.push_back(cur);
      return;
    }
    for (std::size_t i = from; i < narrow.size(); ++i) {
      cur.push_back(narrow[i]);
      rec(i);
      cur.pop_back();
    }
  };
  rec(0);
  return out;
}

unsigned resolve_threads(unsigned requested) {
  if (requested > 0) return requested;
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

std::string catalog_tsv(const Json& e) {
  std::string w;
  for (std::size_t i = 0; i < e["weights"].size(); ++i) w += (i ? "," : "") + scalar_text(e["weights"][i]);
  std::ostringstream s;
  s << e["id"].get<std::string>() << "\t" << e["polynomial"].get<std::string>() << "\t" << scalar_text(e["degree"])
    << "\t" << w << "\t" << e["calabi_yau"] << "\t" << e["gorenstein"] << "\t" << scalar_text(e["milnor_number"])
    << "\t" << e["aut_order"];
  return s.str();
}

std::string report_tsv(const Json& r) {
  std::ostringstream s;
  s << r["id"].get<std::string>() << "\t" << (r["pass"].get<bool>() ? "pass" : "fail");
  if (r.contains("error")) {
    s << "\t" << r["error"]["kind"].get<std::string>();
  } else {
    for (const auto& [name, c] : r["checks"].items()) s << "\t" << name << "=" << c["status"].get<std::string>();
  }
  return s.str();
}

void print_error(std::ostream& err, Format f, const std::string& kind, const std::string& message, int code,
                 const LocatedError* loc) {
  if (f == Format::Json) {
    Json e;
    e["kind"] = kind;
    e["message"] = message;
    e["exit_code"] = code;
    if (loc && loc->line() > 0) {
      e["line"] = loc->line();
      e["column"] = loc->column();
      e["offset"] = loc->offset();
    }
    err << Json{{"error", e}}.dump() << "\n";
  } else {
    err << "error: " << kind << ": " << message << "\n";
  }
}

}  // namespace

int exit_code_for(const std::string& kind) {
  auto it = exit_codes().find(kind);
  return it == exit_codes().end() ? 70 : it->second;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Session session;
  session.out = &out;

  CLI::App app{"Landau-Ginzburg mirror symmetry toolkit", "lgmirror"};
  app.require_subcommand(1);
  bool as_json = false, as_tsv = false, as_text = false;
  auto* fj = app.add_flag("--json", as_json, "JSON output (default)");
  auto* ft = app.add_flag("--tsv", as_tsv, "tab-separated output");
  auto* fx = app.add_flag("--text", as_text, "plain text output");
  fj->excludes(ft)->excludes(fx);
  ft->excludes(fx);
  app.add_option("--out,-o", session.out_path, "write the result to a file");

  std::function<void()> action;
  PolyArgs poly;
  std::vector<std::string> group_tokens;
  auto add_group = [&](CLI::App* cmd, const std::string& fallback) {
    cmd->add_option("-G,--group", group_tokens,
                    "trivial, j, sl, aut, j^k, rho<i>, or a phase vector a,b,...; default " + fallback);
  };

  auto* analyze_cmd = app.add_subcommand("analyze", "charges, atoms and predicates");
  poly.attach(analyze_cmd);
  analyze_cmd->callback([&] { action = [&] { session.emit(analyze(poly.load())); }; });

  auto* transpose_cmd = app.add_subcommand("transpose", "Berglund-Hubsch transpose");
  poly.attach(transpose_cmd);
  transpose_cmd->callback([&] {
    action = [&] {
      InvertiblePolynomial p = poly.load();
      InvertiblePolynomial t = transpose(p);
      Json j;
      j["polynomial"] = p.to_dsl();
      j["transpose"] = analyze(t);
      session.emit(j);
    };
  });

  bool list_subgroups = false;
  auto* group_cmd = app.add_subcommand("group", "maximal diagonal symmetry group");
  poly.attach(group_cmd);
  group_cmd->add_flag("--subgroups", list_subgroups, "list every subgroup (|Aut| capped by LGMIRROR_MAX_GROUP)");
  group_cmd->callback([&] {
    action = [&] {
      InvertiblePolynomial p = poly.load();
      GroupPtr host = make_group(p);
      Json j;
      j["polynomial"] = p.to_dsl();
      j["order"] = host->order();
      j["exponent"] = host->exponent();
      Json f = Json::array();
      for (const auto& x : host->invariant_factors()) f.push_back(integer(x));
      j["invariant_factors"] = f;
      Json gens = Json::array();
      for (const auto& g : host->generators()) gens.push_back(phases_json(g));
      j["generators"] = gens;
      SymmetryElement jw = host->j_element();
      j["j"] = {{"phases", phases_json(jw)}, {"order", element_order(jw)}};
      j["sl"] = group_json(sl_subgroup(host));
      if (list_subgroups) {
        Json subs = Json::array();
        for (const auto& s : enumerate_subgroups(host, max_group_order())) subs.push_back(group_json(s));
        j["subgroups"] = subs;
      }
      session.emit(j);
    };
  });

  auto* dual_cmd = app.add_subcommand("dualgroup", "dual group in Aut of the transpose");
  poly.attach(dual_cmd);
  add_group(dual_cmd, "j");
  dual_cmd->callback([&] {
    action = [&] {
      InvertiblePolynomial p = poly.load();
      GroupPtr host = make_group(p);
      Subgroup g = group_from(host, group_tokens, "j");
      GroupPtr dual_host = make_group(transpose(p));
      Json j;
      j["polynomial"] = p.to_dsl();
      j["group"] = group_json(g);
      j["transpose"] = dual_host->polynomial().to_dsl();
      j["dual"] = group_json(dual_group(g, dual_host));
      session.emit(j);
    };
  });

  std::string flavor = "A";
  bool with_classes = false;
  auto* ss_cmd = app.add_subcommand("statespace", "bigraded state space");
  poly.attach(ss_cmd);
  add_group(ss_cmd, "j for A, trivial for B");
  ss_cmd->add_option("--flavor", flavor, "A or B")->check(CLI::IsMember({"A", "B", "a", "b"}));
  ss_cmd->add_flag("--classes", with_classes, "list every class");
  ss_cmd->callback([&] {
    action = [&] {
      InvertiblePolynomial p = poly.load();
      GroupPtr host = make_group(p);
      bool a = flavor == "A" || flavor == "a";
      Subgroup g = group_from(host, group_tokens, a ? "j" : "trivial");
      StateSpace s = a ? a_state_space(g) : b_state_space(g);
      session.emit(statespace_json(s, with_classes), [](const Json& d, Format f) {
        return render_table(d["table"], f);
      });
    };
  });

  auto* diamond_cmd = app.add_subcommand("diamond", "Hodge diamond of a Calabi-Yau pair (W, G)");
  poly.attach(diamond_cmd);
  add_group(diamond_cmd, "j");
  diamond_cmd->callback([&] {
    action = [&] {
      InvertiblePolynomial p = poly.load();
      GroupPtr host = make_group(p);
      Subgroup g = group_from(host, group_tokens, "j");
      Json j = diamond_json(lg_cy_diamond(g));
      j["polynomial"] = p.to_dsl();
      j["group"] = group_json(g);
      session.emit(j, render_diamond);
    };
  });

  auto* mirror_cmd = app.add_subcommand("mirror-check", "diamond flip against the transpose pair");
  poly.attach(mirror_cmd);
  add_group(mirror_cmd, "j");
  mirror_cmd->callback([&] {
    action = [&] {
      InvertiblePolynomial p = poly.load();
      GroupPtr host = make_group(p);
      Subgroup g = group_from(host, group_tokens, "j");
      MirrorReport m = mirror_check(g);
      KrawitzReport k = krawitz_compare(g);
      Subgroup dual = dual_group(g, make_group(transpose(p)));
      Json j;
      j["pass"] = m.pass && k.pass;
      j["diamond_flip"] = m.pass;
      j["conjugate_match"] = m.conjugate_match;
      j["left"] = {{"polynomial", p.to_dsl()}, {"group", group_json(g)}, {"diamond", diamond_json(m.left)}};
      j["right"] = {{"polynomial", transpose(p).to_dsl()},
                    {"group", group_json(dual)},
                    {"diamond", diamond_json(m.right)}};
      j["mismatches"] = diffs_json(m.mismatches);
      j["krawitz"] = {{"pass", k.pass}, {"diffs", diffs_json(k.diffs)}};
      session.emit(j);
    };
  });

  bool with_constants = false;
  auto* frob_cmd = app.add_subcommand("frobenius", "B-model product structure");
  poly.attach(frob_cmd);
  add_group(frob_cmd, "trivial");
  frob_cmd->add_flag("--constants", with_constants, "list gamma for every pair of sectors");
  frob_cmd->callback([&] {
    action = [&] {
      InvertiblePolynomial p = poly.load();
      GroupPtr host = make_group(p);
      Subgroup g = group_from(host, group_tokens, "trivial");
      FrobeniusAlgebra a(g);
      AlgebraLaws laws = check_algebra_laws(a);
      Json j;
      j["polynomial"] = p.to_dsl();
      j["group"] = group_json(g);
      j["sectors"] = a.sector_count();
      j["dimension"] = a.space().total_dim();
      j["unit_law"] = laws.unit;
      j["grading"] = laws.grading;
      j["associative"] = laws.associative;
      j["triples"] = laws.triples;
      if (with_constants) {
        const auto& sec = a.space().sectors();
        Json cs = Json::array();
        for (const auto& [s, t, gm] : a.structure_constants()) {
          Json c;
          c["g"] = phases_json(sec[s].g);
          c["h"] = phases_json(sec[t].g);
          c["zero"] = gm.zero;
          if (!gm.zero) {
            c["scalar"] = to_string(gm.scalar);
            c["support"] = names_of(gm.support, p.names());
          }
          cs.push_back(c);
        }
        j["structure_constants"] = cs;
      }
      session.emit(j);
    };
  });

  int genus = 0;
  std::vector<std::string> insertions;
  int grr_level = -1;
  auto* moduli_cmd = app.add_subcommand("moduli", "moduli of W-structures");
  poly.attach(moduli_cmd);
  add_group(moduli_cmd, "j");
  moduli_cmd->add_option("-g,--genus", genus, "genus")->check(CLI::NonNegativeNumber);
  moduli_cmd->add_option("-i,--insertion", insertions, "insertion element (j^k, phase vector, ...)");
  moduli_cmd->add_option("--grr", grr_level, "also print the GRR row of this level for every coordinate");
  moduli_cmd->callback([&] {
    action = [&] {
      InvertiblePolynomial p = poly.load();
      GroupPtr host = make_group(p);
      Subgroup g = group_from(host, group_tokens, "j");
      auto ins = parse_insertions(*host, insertions);
      Json j;
      j["polynomial"] = p.to_dsl();
      j["group"] = group_json(g);
      Json ij = Json::array();
      for (const auto& h : ins) ij.push_back(phases_json(h));
      j["insertions"] = ij;
      j["profile"] = profile_json(moduli_profile(g, genus, ins));
      if (grr_level >= 0) {
        Json rows = Json::array();
        for (std::size_t c = 0; c < p.n_vars(); ++c) {
          GRRRow r = grr_expansion(g, genus, ins, static_cast<int>(c), static_cast<unsigned>(grr_level));
          Json b = Json::array();
          for (const auto& [t, v] : r.boundary) b.push_back({{"theta", to_string(t)}, {"coefficient", to_string(v)}});
          rows.push_back({{"coordinate", p.names()[c]},
                          {"h", r.h},
                          {"kappa", to_string(r.kappa)},
                          {"psi", rationals(r.psi)},
                          {"boundary", b}});
        }
        j["grr"] = rows;
      }
      session.emit(j);
    };
  });

  bool allow_broad = false;
  std::size_t sweep = 0;
  auto* corr_cmd = app.add_subcommand("correlator", "genus-zero concave correlators");
  poly.attach(corr_cmd);
  add_group(corr_cmd, "j");
  corr_cmd->add_option("-i,--insertion", insertions, "insertion element (j^k, phase vector, ...)");
  corr_cmd->add_flag("--allow-broad-nodes", allow_broad, "evaluate boundary terms at broad nodes");
  corr_cmd->add_option("--sweep", sweep, "every multiset of this many narrow insertions, as JSON lines")
      ->check(CLI::IsMember({3, 4}));
  corr_cmd->callback([&] {
    action = [&] {
      InvertiblePolynomial p = poly.load();
      GroupPtr host = make_group(p);
      Subgroup g = group_from(host, group_tokens, "j");
      CorrelatorOptions opts;
      opts.allow_broad_nodes = allow_broad;
      if (sweep == 0) {
        auto ins = parse_insertions(*host, insertions);
        Json j;
        j["polynomial"] = p.to_dsl();
        j["genus"] = 0;
        Json ij = Json::array();
        for (const auto& h : ins) ij.push_back(phases_json(h));
        j["insertions"] = ij;
        j["correlator"] = correlator_json(genus0_correlator(g, ins, opts));
        session.emit(j);
        return;
      }
      if (!insertions.empty()) throw InvalidArgument("--sweep and --insertion exclude each other");
      const std::string id = decompose(p).canonical_id();
      std::ostream& o = session.stream();
      for (const auto& ins : narrow_multisets(g, sweep)) {
        Json j;
        j["id"] = id;
        j["genus"] = 0;
        Json ij = Json::array();
        for (const auto& h : ins) ij.push_back(phases_json(h));
        j["insertions"] = ij;
        try {
          CorrelatorResult r = genus0_correlator(g, ins, opts);
          j["status"] = r.status;
          if (r.status == "ok") j["value"] = to_string(r.value);
        } catch (const Error& e) {
          j["status"] = e.kind();
        }
        o << j.dump() << "\n";
      }
      o.flush();
    };
  });

  auto* catalog_cmd = app.add_subcommand("catalog", "enumerate and verify catalogs of atom sums");
  catalog_cmd->require_subcommand(1);
  int vars = 0, max_exp = 0;
  bool cy_only = false;
  unsigned threads = 0;
  auto* enum_cmd = catalog_cmd->add_subcommand("enumerate", "JSON-lines catalog of atom sums");
  enum_cmd->add_option("--vars", vars, "number of variables")->required()->check(CLI::Range(1, 8));
  enum_cmd->add_option("--max-exp", max_exp, "largest exponent")->required()->check(CLI::Range(2, 64));
  enum_cmd->add_flag("--cy", cy_only, "Calabi-Yau entries only");
  enum_cmd->add_option("--threads,-j", threads, "worker threads, 0 for all cores");
  enum_cmd->callback([&] {
    action = [&] {
      auto entries = enumerate_catalog(vars, max_exp, cy_only, resolve_threads(threads));
      std::ostream& o = session.stream();
      for (const auto& e : entries) {
        Json j = entry_to_json(e);
        o << (session.format == Format::Tsv ? catalog_tsv(j) : j.dump()) << "\n";
      }
      o.flush();
      if (!o) throw IoError("write failed");
    };
  });

  std::string catalog_file;
  bool strict = false;
  VerifyOptions vopts;
  vopts.max_group = max_group_order();
  auto* verify_cmd = catalog_cmd->add_subcommand("verify", "run the theorem battery on every catalog line");
  verify_cmd->add_option("file", catalog_file, "catalog JSON-lines file, - for stdin")->required();
  verify_cmd->add_option("--threads,-j", threads, "worker threads, 0 for all cores");
  verify_cmd->add_option("--frobenius-order", vopts.frobenius_order, "largest |G| for associativity");
  verify_cmd->add_flag("--strict", strict, "exit nonzero when an entry fails");
  verify_cmd->callback([&] {
    action = [&] {
      std::vector<std::string> lines;
      {
        std::ifstream file;
        std::istream* in = &std::cin;
        if (catalog_file != "-") {
          file.open(catalog_file);
          if (!file) throw IoError("cannot read " + catalog_file);
          in = &file;
        }
        std::string line;
        while (std::getline(*in, line))
          if (line.find_first_not_of(" \t\r") != std::string::npos) lines.push_back(line);
      }
      VerifySummary summary;
      std::ostream& o = session.stream();
      ordered_parallel(
          lines.size(), resolve_threads(threads),
          [&](std::size_t i) { return report_to_json(verify_entry(lines[i], vopts)).dump(); },
          [&](std::size_t, const std::string& text) {
            Json r = Json::parse(text);
            EntryReport rep;
            rep.pass = r["pass"].get<bool>();
            if (r.contains("error")) rep.error_kind = r["error"]["kind"].get<std::string>();
            if (r.contains("checks"))
              for (const auto& [name, c] : r["checks"].items())
                rep.checks.push_back({name, c["status"].get<std::string>(), "", 0});
            summary.add(rep);
            o << (session.format == Format::Tsv ? report_tsv(r) : text) << "\n";
          });
      Json s = summary_to_json(summary);
      if (session.format == Format::Tsv)
        o << "summary\t" << s["passed"] << "/" << s["entries"] << "\n";
      else
        o << Json{{"summary", s}}.dump() << "\n";
      o.flush();
      if (!o) throw IoError("write failed");
      if (strict && summary.passed != summary.entries)
        throw Error("VerificationFailed", std::to_string(summary.entries - summary.passed) + " entries did not pass");
    };
  });

  std::vector<std::string> argv_store;
  argv_store.push_back("lgmirror");
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_store) argv.push_back(a.data());

  auto format_of = [&] { return as_tsv ? Format::Tsv : as_text ? Format::Text : Format::Json; };
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return 0;
    }
    const int code = exit_code_for("UsageError");
    print_error(err, format_of(), "UsageError", e.what(), code, nullptr);
    return code;
  }
  session.format = format_of();
  try {
    if (action) action();
    return 0;
  } catch (const LocatedError& e) {
    const int code = exit_code_for(e.kind());
    print_error(err, session.format, e.kind(), e.what(), code, &e);
    return code;
  } catch (const Error& e) {
    const int code = exit_code_for(e.kind());
    print_error(err, session.format, e.kind(), e.what(), code, nullptr);
    return code;
  } catch (const std::exception& e) {
    const int code = exit_code_for("InternalError");
    print_error(err, session.format, "InternalError", e.what(), code, nullptr);
    return code;
  }
}

}  // namespace lgm
