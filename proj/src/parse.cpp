#include "lgmirror/parse.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"

namespace lgm {

namespace {

struct Position {
  int line = 1;
  int column = 1;
  long offset = 0;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  void skip_space() {
    while (pos_.offset < static_cast<long>(text_.size()) && std::isspace(static_cast<unsigned char>(peek()))) advance();
  }
  bool done() const { return pos_.offset >= static_cast<long>(text_.size()); }
  char peek() const { return text_[pos_.offset]; }
  const Position& pos() const { return pos_; }

  void advance() {
    if (text_[pos_.offset] == '\n') {
      ++pos_.line;
      pos_.column = 1;
    } else {
      ++pos_.column;
    }
    ++pos_.offset;
  }

  [[noreturn]] void fail(const std::string& what) const { fail_at(pos_, what); }
  [[noreturn]] static void fail_at(const Position& p, const std::string& what) {
    throw SyntaxError(what + " at line " + std::to_string(p.line) + ", column " + std::to_string(p.column), p.line,
                      p.column, p.offset);
  }

  std::string found() const {
    if (done()) return "end of input";
    return std::string("'") + peek() + "'";
  }

 private:
  std::string_view text_;
  Position pos_;
};

struct Term {
  Position start;
  std::map<std::string, int> powers;
};

// letter first, then no suffix before numeric suffixes in increasing order
bool name_less(const std::string& a, const std::string& b) {
  if (a[0] != b[0]) return a[0] < b[0];
  if (a.size() == 1 || b.size() == 1) return a.size() < b.size();
  std::string_view da(a.data() + 1, a.size() - 1), db(b.data() + 1, b.size() - 1);
  auto strip = [](std::string_view s) {
    std::size_t k = s.find_first_not_of('0');
    return k == std::string_view::npos ? std::string_view("0") : s.substr(k);
  };
  std::string_view sa = strip(da), sb = strip(db);
  if (sa.size() != sb.size()) return sa.size() < sb.size();
  if (sa != sb) return sa < sb;
  return da < db;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Position position_of(std::string_view text, std::size_t offset) {
  Position p;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++p.line;
      p.column = 1;
    } else {
      ++p.column;
    }
  }
  p.offset = static_cast<long>(offset);
  return p;
}

}  // namespace

InvertiblePolynomial parse_polynomial(std::string_view text) {
  Lexer lx(text);
  std::vector<Term> terms;
  lx.skip_space();
  if (lx.done()) lx.fail("empty polynomial");
  while (true) {
    lx.skip_space();
    Term term;
    term.start = lx.pos();
    while (true) {
      lx.skip_space();
      if (lx.done() || !std::isalpha(static_cast<unsigned char>(lx.peek())))
        lx.fail("expected a variable, found " + lx.found());
      std::string name(1, lx.peek());
      lx.advance();
      while (!lx.done() && std::isdigit(static_cast<unsigned char>(lx.peek()))) {
        name += lx.peek();
        lx.advance();
      }
      if (!lx.done() && std::isalpha(static_cast<unsigned char>(lx.peek())))
        lx.fail("expected '*' between variables, found " + lx.found());
      lx.skip_space();
      long e = 1;
      if (!lx.done() && lx.peek() == '^') {
        lx.advance();
        lx.skip_space();
        if (lx.done() || !std::isdigit(static_cast<unsigned char>(lx.peek())))
          lx.fail("expected an exponent, found " + lx.found());
        Position at = lx.pos();
        e = 0;
        while (!lx.done() && std::isdigit(static_cast<unsigned char>(lx.peek()))) {
          e = e * 10 + (lx.peek() - '0');
          if (e > 1000000) Lexer::fail_at(at, "exponent too large");
          lx.advance();
        }
        if (e == 0) Lexer::fail_at(at, "exponent must be positive");
      }
      long total = term.powers[name] + e;
      if (total > 1000000) lx.fail("exponent too large");
      term.powers[name] = static_cast<int>(total);
      lx.skip_space();
      if (!lx.done() && lx.peek() == '*') {
        lx.advance();
        continue;
      }
      break;
    }
    terms.push_back(std::move(term));
    lx.skip_space();
    if (lx.done()) break;
    if (lx.peek() != '+') lx.fail("expected '+', '*' or '^', found " + lx.found());
    lx.advance();
  }

  std::vector<std::string> names;
  for (const auto& t : terms)
    for (const auto& [name, e] : t.powers) names.push_back(name);
  std::sort(names.begin(), names.end(), name_less);
  names.erase(std::unique(names.begin(), names.end()), names.end());

  if (terms.size() != names.size()) {
    const Position& p = terms.size() > names.size() ? terms[names.size()].start : lx.pos();
    throw NotSquare(std::to_string(terms.size()) + " monomials in " + std::to_string(names.size()) + " variables",
                    p.line, p.column, p.offset);
  }
  std::vector<std::vector<int>> rows;
  for (const auto& t : terms) {
    std::vector<int> row(names.size(), 0);
    for (const auto& [name, e] : t.powers) {
      auto it = std::find(names.begin(), names.end(), name);
      row[it - names.begin()] = e;
    }
    if (std::find(rows.begin(), rows.end(), row) != rows.end())
      throw RepeatedMonomial("monomial repeated at line " + std::to_string(t.start.line) + ", column " +
                                 std::to_string(t.start.column),
                             t.start.line, t.start.column, t.start.offset);
    rows.push_back(std::move(row));
  }
  return InvertiblePolynomial(std::move(rows), std::move(names));
}

InvertiblePolynomial parse_exponent_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    std::size_t at = e.byte > 0 ? e.byte - 1 : 0;
    Position p = position_of(text, at);
    throw SyntaxError("invalid JSON at line " + std::to_string(p.line) + ", column " + std::to_string(p.column), p.line,
                      p.column, p.offset);
  }
  nlohmann::json grid = doc;
  std::vector<std::string> names;
  if (doc.is_object()) {
    if (!doc.contains("exponents")) throw SyntaxError("JSON object needs an \"exponents\" field");
    grid = doc["exponents"];
    if (doc.contains("names")) {
      if (!doc["names"].is_array()) throw SyntaxError("\"names\" must be an array of strings");
      for (const auto& n : doc["names"]) {
        if (!n.is_string()) throw SyntaxError("\"names\" must be an array of strings");
        names.push_back(n.get<std::string>());
      }
    }
  }
  if (!grid.is_array() || grid.empty()) throw SyntaxError("exponent matrix must be a nonempty array of arrays");
  std::vector<std::vector<int>> rows;
  for (const auto& r : grid) {
    if (!r.is_array()) throw SyntaxError("exponent matrix must be an array of arrays");
    std::vector<int> row;
    for (const auto& v : r) {
      if (!v.is_number_integer() || v.get<long long>() < 0 || v.get<long long>() > 1000000)
        throw SyntaxError("exponents must be nonnegative integers");
      row.push_back(v.get<int>());
    }
    if (row.size() != grid.size()) throw NotSquare("exponent matrix must be square");
    if (std::find(rows.begin(), rows.end(), row) != rows.end())
      throw RepeatedMonomial("row " + std::to_string(rows.size() + 1) + " repeats an earlier row");
    rows.push_back(std::move(row));
  }
  return InvertiblePolynomial(std::move(rows), std::move(names));
}

std::optional<InvertiblePolynomial> preset(std::string_view name) {
  if (name == "quintic") return parse_polynomial("x1^5+x2^5+x3^5+x4^5+x5^5");
  if (name == "chain-quintic") return parse_polynomial("x1^4*x2+x2^4*x3+x3^4*x4+x4^4*x5+x5^5");
  if (name == "p8") return parse_polynomial("x^3+y^3+z^3");
  if (name == "d4") return parse_polynomial("x^3+x*y^2");
  return std::nullopt;
}

std::vector<std::string> preset_names() { return {"chain-quintic", "d4", "p8", "quintic"}; }

InvertiblePolynomial load_polynomial(std::string_view source) {
  if (auto p = preset(source)) return *p;
  std::string text(source);
  if (!text.empty() && text[0] == '@') text = read_file(text.substr(1));
  std::size_t k = text.find_first_not_of(" \t\r\n");
  if (k != std::string::npos && (text[k] == '[' || text[k] == '{')) return parse_exponent_json(text);
  return parse_polynomial(text);
}

SymmetryElement parse_element(const SymmetryGroup& host, std::string_view token) {
  std::string t(token);
  t.erase(std::remove_if(t.begin(), t.end(), [](unsigned char c) { return std::isspace(c); }), t.end());
  if (t.empty()) throw InvalidArgument("empty group element");
  if (t == "e" || t == "id") return host.identity();
  if (t == "j") return host.j_element();
  if (t.rfind("j^", 0) == 0) {
    try {
      std::size_t used = 0;
      long long k = std::stoll(t.substr(2), &used);
      if (used == t.size() - 2) return power(host.j_element(), k);
    } catch (const std::exception&) {
    }
    throw InvalidArgument("bad power of j: " + t);
  }
  if (t.rfind("rho", 0) == 0) {
    try {
      std::size_t used = 0;
      long long i = std::stoll(t.substr(3), &used);
      if (used == t.size() - 3 && i >= 1 && static_cast<std::size_t>(i) <= host.n_vars())
        return host.generators()[i - 1];
    } catch (const std::exception&) {
    }
    throw InvalidArgument("bad generator name: " + t);
  }
  if ((t.front() == '(' && t.back() == ')') || (t.front() == '[' && t.back() == ']')) t = t.substr(1, t.size() - 2);
  std::vector<Rational> phases;
  std::size_t start = 0;
  while (true) {
    std::size_t comma = t.find(',', start);
    std::string part = t.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    try {
      phases.push_back(parse_rational(part));
    } catch (const Error&) {
      throw InvalidArgument("bad phase '" + part + "' in " + std::string(token));
    }
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (phases.size() != host.n_vars())
    throw InvalidArgument("phase vector has " + std::to_string(phases.size()) + " entries, W has " +
                          std::to_string(host.n_vars()) + " variables");
  if (!host.contains(phases)) throw InvalidArgument(std::string(token) + " is not a diagonal symmetry of W");
  return host.from_phases(phases);
}

Subgroup parse_group(const GroupPtr& host, const std::vector<std::string>& tokens) {
  std::vector<SymmetryElement> gens;
  for (const auto& token : tokens) {
    std::size_t start = 0;
    while (start <= token.size()) {
      std::size_t semi = token.find(';', start);
      std::string item = token.substr(start, semi == std::string::npos ? std::string::npos : semi - start);
      item.erase(std::remove_if(item.begin(), item.end(), [](unsigned char c) { return std::isspace(c); }),
                 item.end());
      std::string lower = item;
      std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
      if (lower == "trivial" || lower == "1") {
      } else if (lower == "sl") {
        auto s = sl_subgroup(host).generators();
        gens.insert(gens.end(), s.begin(), s.end());
      } else if (lower == "aut" || lower == "full") {
        gens.insert(gens.end(), host->generators().begin(), host->generators().end());
      } else {
        gens.push_back(parse_element(*host, item));
      }
      if (semi == std::string::npos) break;
      start = semi + 1;
    }
  }
  return Subgroup(host, gens);
}

}  // namespace lgm
