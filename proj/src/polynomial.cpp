#include "lgmirror/polynomial.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <tuple>

namespace lgm {

InvertiblePolynomial::InvertiblePolynomial(std::vector<std::vector<int>> exponents,
                                           std::vector<std::string> names)
    : exponents_(std::move(exponents)), names_(std::move(names)) {
  const std::size_t n = exponents_.size();
  if (n == 0) throw InvalidArgument("polynomial needs at least one variable");
  for (const auto& row : exponents_) {
    if (row.size() != n) throw NotSquare("exponent matrix must be square");
    for (int e : row)
      if (e < 0) throw InvalidArgument("negative exponent");
  }
  if (names_.empty()) {
    for (std::size_t i = 0; i < n; ++i) names_.push_back("x" + std::to_string(i + 1));
  } else if (names_.size() != n) {
    throw InvalidArgument("variable name count differs from matrix size");
  }
  if (determinant(exponent_matrix()) == 0) throw SingularMatrix("exponent matrix has zero determinant");
}

IntMatrix InvertiblePolynomial::exponent_matrix() const {
  IntMatrix m(n_vars(), n_vars());
  for (std::size_t i = 0; i < n_vars(); ++i)
    for (std::size_t j = 0; j < n_vars(); ++j) m(i, j) = exponents_[i][j];
  return m;
}

std::string InvertiblePolynomial::to_dsl() const {
  std::ostringstream out;
  for (std::size_t i = 0; i < n_vars(); ++i) {
    if (i) out << " + ";
    bool first = true;
    for (std::size_t j = 0; j < n_vars(); ++j) {
      int e = exponents_[i][j];
      if (e == 0) continue;
      if (!first) out << "*";
      first = false;
      out << names_[j];
      if (e != 1) out << "^" << e;
    }
  }
  return out.str();
}

Rational ChargeVector::sum() const {
  Rational s = 0;
  for (const auto& q : charges) s += q;
  return s;
}

ChargeVector charges(const InvertiblePolynomial& p) {
  const std::size_t n = p.n_vars();
  RationalMatrix e = to_rational(p.exponent_matrix());
  RationalMatrix inv = invert(e);
  ChargeVector cv;
  cv.charges.assign(n, Rational(0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) cv.charges[i] += inv(i, j);
  std::vector<Rational> check = e * cv.charges;
  for (const auto& c : check)
    if (c != 1) throw ChargeOutOfRange("E q != 1");
  cv.degree = 1;
  for (std::size_t j = 0; j < n; ++j) {
    const Rational& q = cv.charges[j];
    if (q <= 0 || q >= 1)
      throw ChargeOutOfRange("charge q" + std::to_string(j + 1) + " = " + to_string(q) + " outside (0,1)");
    cv.degree = lcm(cv.degree, q.get_den());
  }
  cv.central_charge = 0;
  for (const auto& q : cv.charges) {
    Rational w = q * cv.degree;
    cv.weights.push_back(w.get_num());
    cv.central_charge += 1 - 2 * q;
  }
  return cv;
}

std::string to_string(AtomKind kind) {
  switch (kind) {
    case AtomKind::Fermat: return "Fermat";
    case AtomKind::Loop: return "Loop";
    case AtomKind::Chain: return "Chain";
  }
  return "?";
}

std::string atom_id(const Atom& atom) {
  std::string s = to_string(atom.kind) + "(";
  for (std::size_t i = 0; i < atom.exponents.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(atom.exponents[i]);
  }
  return s + ")";
}

std::string AtomDecomposition::canonical_id() const {
  std::vector<std::string> ids;
  for (const auto& a : atoms) ids.push_back(atom_id(a));
  std::sort(ids.begin(), ids.end());
  std::string s;
  for (std::size_t i = 0; i < ids.size(); ++i) s += (i ? "+" : "") + ids[i];
  return s;
}

namespace {

bool atom_less(const Atom& a, const Atom& b) {
  return std::tie(a.kind, a.exponents, a.variables) < std::tie(b.kind, b.exponents, b.variables);
}

}  // namespace

AtomDecomposition decompose(const InvertiblePolynomial& p) {
  const int n = static_cast<int>(p.n_vars());
  std::vector<int> main_of_row(n, -1), pointer_of_row(n, -1);
  for (int i = 0; i < n; ++i) {
    std::vector<int> support;
    for (int j = 0; j < n; ++j)
      if (p.exponent(i, j) > 0) support.push_back(j);
    if (support.size() == 1) {
      if (p.exponent(i, support[0]) < 2)
        throw NotInvertibleType("monomial " + std::to_string(i + 1) + " is linear");
      main_of_row[i] = support[0];
    } else if (support.size() == 2) {
      int a = p.exponent(i, support[0]), b = p.exponent(i, support[1]);
      if (a == 1 && b >= 2) {
        main_of_row[i] = support[1];
        pointer_of_row[i] = support[0];
      } else if (b == 1 && a >= 2) {
        main_of_row[i] = support[0];
        pointer_of_row[i] = support[1];
      } else {
        throw NotInvertibleType("monomial " + std::to_string(i + 1) + " is not of the form x^a y with a >= 2");
      }
    } else {
      throw NotInvertibleType("monomial " + std::to_string(i + 1) + " involves " +
                              std::to_string(support.size()) + " variables");
    }
  }

  std::vector<int> row_of_main(n, -1), next(n, -1), prev(n, -1), expo(n, 0);
  for (int i = 0; i < n; ++i) {
    int v = main_of_row[i];
    if (row_of_main[v] != -1) throw NotInvertibleType("variable " + p.names()[v] + " leads two monomials");
    row_of_main[v] = i;
    next[v] = pointer_of_row[i];
    expo[v] = p.exponent(i, v);
  }
  for (int v = 0; v < n; ++v) {
    if (next[v] < 0) continue;
    if (prev[next[v]] != -1)
      throw NotInvertibleType("variable " + p.names()[next[v]] + " appears linearly in two monomials");
    prev[next[v]] = v;
  }

  AtomDecomposition out;
  std::vector<bool> seen(n, false);
  for (int v = 0; v < n; ++v) {
    if (prev[v] != -1) continue;
    Atom atom;
    for (int u = v; u != -1; u = next[u]) {
      atom.variables.push_back(u);
      atom.exponents.push_back(expo[u]);
      seen[u] = true;
    }
    atom.kind = atom.variables.size() == 1 ? AtomKind::Fermat : AtomKind::Chain;
    out.atoms.push_back(std::move(atom));
  }
  for (int v = 0; v < n; ++v) {
    if (seen[v]) continue;
    std::vector<int> cycle;
    for (int u = v; !seen[u]; u = next[u]) {
      seen[u] = true;
      cycle.push_back(u);
    }
    // rotate to the lexicographically smallest exponent sequence
    const std::size_t k = cycle.size();
    Atom best;
    for (std::size_t r = 0; r < k; ++r) {
      Atom cand;
      cand.kind = AtomKind::Loop;
      for (std::size_t t = 0; t < k; ++t) {
        int u = cycle[(r + t) % k];
        cand.variables.push_back(u);
        cand.exponents.push_back(expo[u]);
      }
      if (r == 0 || std::tie(cand.exponents, cand.variables) < std::tie(best.exponents, best.variables))
        best = std::move(cand);
    }
    out.atoms.push_back(std::move(best));
  }
  std::sort(out.atoms.begin(), out.atoms.end(), atom_less);
  for (const auto& a : out.atoms)
    out.permutation.insert(out.permutation.end(), a.variables.begin(), a.variables.end());
  return out;
}

InvertiblePolynomial transpose(const InvertiblePolynomial& p) {
  const std::size_t n = p.n_vars();
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) t[j][i] = p.exponent(i, j);
  return InvertiblePolynomial(std::move(t), p.names());
}

Integer milnor_number(const std::vector<Rational>& qs) {
  Rational mu = 1;
  for (const auto& q : qs) mu *= (1 / q - 1);
  if (!is_integer(mu)) throw NonIntegerMilnor("prod(1/q - 1) = " + to_string(mu));
  return mu.get_num();
}

Predicates predicates(const InvertiblePolynomial& p) {
  ChargeVector cv = charges(p);
  Predicates pr;
  pr.is_calabi_yau = cv.sum() == 1;
  pr.is_gorenstein = std::all_of(cv.weights.begin(), cv.weights.end(),
                                 [&](const Integer& w) { return cv.degree % w == 0; });
  pr.milnor_number = milnor_number(cv.charges);
  return pr;
}

InvertiblePolynomial fermat(int a) { return InvertiblePolynomial(std::vector<std::vector<int>>{{a}}); }

InvertiblePolynomial loop(const std::vector<int>& a) {
  const std::size_t k = a.size();
  std::vector<std::vector<int>> e(k, std::vector<int>(k, 0));
  for (std::size_t i = 0; i < k; ++i) {
    e[i][i] = a[i];
    e[i][(i + 1) % k] += 1;
  }
  return InvertiblePolynomial(std::move(e));
}

InvertiblePolynomial chain(const std::vector<int>& a) {
  const std::size_t k = a.size();
  std::vector<std::vector<int>> e(k, std::vector<int>(k, 0));
  for (std::size_t i = 0; i < k; ++i) {
    e[i][i] = a[i];
    if (i + 1 < k) e[i][i + 1] = 1;
  }
  return InvertiblePolynomial(std::move(e));
}

InvertiblePolynomial direct_sum(const std::vector<InvertiblePolynomial>& parts) {
  std::size_t n = 0;
  for (const auto& p : parts) n += p.n_vars();
  std::vector<std::vector<int>> e(n, std::vector<int>(n, 0));
  std::size_t off = 0;
  for (const auto& p : parts) {
    for (std::size_t i = 0; i < p.n_vars(); ++i)
      for (std::size_t j = 0; j < p.n_vars(); ++j) e[off + i][off + j] = p.exponent(i, j);
    off += p.n_vars();
  }
  return InvertiblePolynomial(std::move(e));
}

InvertiblePolynomial from_atoms(const std::vector<Atom>& atoms) {
  std::vector<InvertiblePolynomial> parts;
  for (const auto& a : atoms) {
    switch (a.kind) {
      case AtomKind::Fermat: parts.push_back(fermat(a.exponents.at(0))); break;
      case AtomKind::Loop: parts.push_back(loop(a.exponents)); break;
      case AtomKind::Chain: parts.push_back(chain(a.exponents)); break;
    }
  }
  return direct_sum(parts);
}

}  // namespace lgm
