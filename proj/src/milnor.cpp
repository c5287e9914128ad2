#include "lgmirror/milnor.hpp"

#include <algorithm>
#include <functional>

namespace lgm {

Poly poly_from_monomial(const Monomial& m, const Rational& c) {
  Poly p;
  if (c != 0) p[m] = c;
  return p;
}

Poly poly_add(const Poly& a, const Poly& b) {
  Poly out = a;
  for (const auto& [m, c] : b) {
    Rational& t = out[m];
    t += c;
    if (t == 0) out.erase(m);
  }
  return out;
}

Poly poly_scale(const Poly& a, const Rational& c) {
  if (c == 0) return {};
  Poly out;
  for (const auto& [m, x] : a) out[m] = x * c;
  return out;
}

Poly poly_mul(const Poly& a, const Poly& b) {
  Poly out;
  for (const auto& [ma, ca] : a)
    for (const auto& [mb, cb] : b) {
      Monomial m(ma.size());
      for (std::size_t i = 0; i < m.size(); ++i) m[i] = ma[i] + mb[i];
      Rational& t = out[m];
      t += ca * cb;
      if (t == 0) out.erase(m);
    }
  return out;
}

Poly poly_derivative(const Poly& a, int var) {
  Poly out;
  for (const auto& [m, c] : a) {
    if (m[var] == 0) continue;
    Monomial d = m;
    d[var] -= 1;
    out[d] = c * m[var];
  }
  return out;
}

Poly poly_restrict(const Poly& a, const std::vector<int>& keep) {
  Poly out;
  for (const auto& [m, c] : a) {
    bool ok = true;
    for (std::size_t j = 0; j < m.size() && ok; ++j)
      if (m[j] != 0 && std::find(keep.begin(), keep.end(), static_cast<int>(j)) == keep.end()) ok = false;
    if (ok) out[m] = c;
  }
  return out;
}

Poly poly_of(const InvertiblePolynomial& p) {
  Poly out;
  for (const auto& row : p.exponents()) out[row] += 1;
  return out;
}

Poly restriction(const InvertiblePolynomial& p, const std::vector<int>& index_set) {
  return poly_restrict(poly_of(p), index_set);
}

namespace {

Poly determinant_of(std::vector<std::vector<Poly>> m, std::size_t n) {
  if (n == 0) return poly_from_monomial(Monomial(), Rational(1));
  // Laplace expansion along the first row, skipping zero entries.
  std::function<Poly(std::vector<int>&, std::size_t)> rec = [&](std::vector<int>& cols, std::size_t row) -> Poly {
    if (row == n) return {};
    Poly total;
    int sign = 1;
    for (std::size_t k = 0; k < cols.size(); ++k) {
      int c = cols[k];
      const Poly& entry = m[row][c];
      if (!entry.empty()) {
        Poly term;
        if (cols.size() == 1) {
          term = entry;
        } else {
          std::vector<int> rest = cols;
          rest.erase(rest.begin() + k);
          Poly minor = rec(rest, row + 1);
          term = poly_mul(entry, minor);
        }
        total = poly_add(total, sign > 0 ? term : poly_scale(term, Rational(-1)));
      }
      sign = -sign;
    }
    return total;
  };
  std::vector<int> cols(n);
  for (std::size_t i = 0; i < n; ++i) cols[i] = static_cast<int>(i);
  return rec(cols, 0);
}

using SparseRow = std::map<std::size_t, Rational>;

void axpy(SparseRow& row, const Rational& c, const SparseRow& other) {
  for (const auto& [col, x] : other) {
    Rational& t = row[col];
    t -= c * x;
    if (t == 0) row.erase(col);
  }
}

}  // namespace

Poly hessian(const Poly& w, const std::vector<int>& vars) {
  const std::size_t k = vars.size();
  if (k == 0) {
    std::size_t n = w.empty() ? 0 : w.begin()->first.size();
    return poly_from_monomial(Monomial(n, 0), Rational(1));
  }
  std::vector<std::vector<Poly>> m(k, std::vector<Poly>(k));
  for (std::size_t a = 0; a < k; ++a) {
    Poly da = poly_derivative(w, vars[a]);
    for (std::size_t b = 0; b < k; ++b) m[a][b] = poly_derivative(da, vars[b]);
  }
  return determinant_of(std::move(m), k);
}

GradedMilnorRing::GradedMilnorRing(const InvertiblePolynomial& p, const ChargeVector& q, std::vector<int> index_set)
    : n_(p.n_vars()), index_set_(std::move(index_set)), weights_(q.weights), charges_(q.charges), degree_(q.degree) {
  std::sort(index_set_.begin(), index_set_.end());
  index_set_.erase(std::unique(index_set_.begin(), index_set_.end()), index_set_.end());
  for (int j : index_set_)
    if (j < 0 || static_cast<std::size_t>(j) >= n_) throw InvalidArgument("index out of range");

  const long d = degree_.get_si();
  std::vector<long> w(n_);
  for (std::size_t j = 0; j < n_; ++j) w[j] = weights_[j].get_si();

  Poly wi = restriction(p, index_set_);
  std::vector<Poly> jac;
  long max_w = 1;
  top_ = 0;
  Rational expected_mu = 1;
  for (int j : index_set_) {
    Poly dj = poly_derivative(wi, j);
    if (dj.empty()) throw DegenerateRestriction("restriction does not involve " + p.names()[j]);
    jac.push_back(std::move(dj));
    max_w = std::max(max_w, w[j]);
    top_ += d - 2 * w[j];
    expected_mu *= 1 / charges_[j] - 1;
  }
  if (!is_integer(expected_mu)) throw DegenerateRestriction("restricted Milnor number is not an integer");
  if (top_ < 0) throw DegenerateRestriction("negative top degree");
  top_degree_ = make_rational(top_, d);

  // monomials in x_I of each weighted degree, ascending lex
  std::map<long, std::vector<Monomial>> by_degree;
  auto monomials_of = [&](long s) -> const std::vector<Monomial>& {
    auto it = by_degree.find(s);
    if (it != by_degree.end()) return it->second;
    std::vector<Monomial> out;
    Monomial m(n_, 0);
    std::function<void(std::size_t, long)> rec = [&](std::size_t k, long left) {
      if (k == index_set_.size()) {
        if (left == 0) out.push_back(m);
        return;
      }
      int j = index_set_[k];
      for (int e = 0; e * w[j] <= left; ++e) {
        m[j] = e;
        rec(k + 1, left - e * w[j]);
      }
      m[j] = 0;
    };
    rec(0, s);
    std::sort(out.begin(), out.end());
    return by_degree.emplace(s, std::move(out)).first->second;
  };

  for (long s = 0; s <= top_ + max_w; ++s) {
    const std::vector<Monomial>& monos = monomials_of(s);
    if (monos.empty()) continue;
    std::map<Monomial, std::size_t> index;
    for (std::size_t i = 0; i < monos.size(); ++i) index[monos[i]] = i;

    std::map<std::size_t, SparseRow> pivots;
    for (std::size_t k = 0; k < index_set_.size(); ++k) {
      long s2 = s - (d - w[index_set_[k]]);
      if (s2 < 0) continue;
      for (const Monomial& m : monomials_of(s2)) {
        SparseRow row;
        for (const auto& [dm, c] : jac[k]) {
          Monomial prod = m;
          for (std::size_t i = 0; i < n_; ++i) prod[i] += dm[i];
          row[index.at(prod)] += c;
        }
        for (auto it = row.begin(); it != row.end();) it = it->second == 0 ? row.erase(it) : std::next(it);
        while (!row.empty()) {
          auto lead = std::prev(row.end());
          auto pv = pivots.find(lead->first);
          if (pv == pivots.end()) {
            Rational inv = 1 / lead->second;
            for (auto& [col, x] : row) x *= inv;
            pivots.emplace(lead->first, std::move(row));
            break;
          }
          Rational c = lead->second;
          axpy(row, c, pv->second);
        }
      }
    }

    if (s > top_) {
      if (pivots.size() != monos.size())
        throw DegenerateRestriction("Jacobian quotient is nonzero above the top degree");
      continue;
    }

    // back-substitute to reduced echelon form
    for (auto& [lead, row] : pivots) {
      std::vector<std::size_t> hits;
      for (const auto& [col, x] : row)
        if (col != lead && pivots.count(col)) hits.push_back(col);
      for (auto it = hits.rbegin(); it != hits.rend(); ++it) {
        auto f = row.find(*it);
        if (f == row.end()) continue;
        Rational c = f->second;
        axpy(row, c, pivots.at(*it));
      }
    }

    Piece piece;
    piece.monomials = monos;
    piece.index = index;
    std::map<std::size_t, std::size_t> global;
    for (std::size_t i = 0; i < monos.size(); ++i) {
      if (pivots.count(i)) continue;
      global[i] = basis_.size();
      basis_pos_[monos[i]] = basis_.size();
      basis_.push_back(monos[i]);
      degrees_.push_back(form_degree(monos[i]));
    }
    piece.nf.resize(monos.size());
    for (std::size_t i = 0; i < monos.size(); ++i) {
      auto g = global.find(i);
      if (g != global.end()) {
        piece.nf[i].emplace_back(g->second, Rational(1));
        continue;
      }
      for (const auto& [col, x] : pivots.at(i))
        if (col != i) piece.nf[i].emplace_back(global.at(col), -x);
    }
    pieces_.emplace(s, std::move(piece));
  }

  if (Rational(static_cast<long>(basis_.size())) != expected_mu)
    throw DegenerateRestriction("Jacobian quotient has dimension " + std::to_string(basis_.size()) +
                                ", expected " + to_string(expected_mu));
  auto top_piece = pieces_.find(top_);
  std::size_t top_count = 0;
  for (std::size_t i = 0; i < basis_.size(); ++i)
    if (weighted_degree(basis_[i]) == top_) {
      ++top_count;
      top_index_ = i;
    }
  if (top_piece == pieces_.end() || top_count != 1) throw DegenerateRestriction("top piece is not one-dimensional");

  hessian_ = hessian(wi.empty() ? poly_from_monomial(Monomial(n_, 0)) : wi, index_set_);
  hessian_nf_ = normal_form(hessian_);
  if (hessian_nf_[top_index_] == 0) throw DegenerateRestriction("Hessian vanishes in the Jacobian quotient");
  top_scale_ = hessian_nf_[top_index_] / Rational(static_cast<long>(basis_.size()));
}

long GradedMilnorRing::weighted_degree(const Monomial& m) const {
  long s = 0;
  for (std::size_t j = 0; j < n_; ++j) s += m[j] * weights_[j].get_si();
  return s;
}

Rational GradedMilnorRing::form_degree(const Monomial& m) const {
  Rational l = 0;
  for (int j : index_set_) l += (m[j] + 1) * charges_[j];
  return l;
}

Rational GradedMilnorRing::top_form_degree() const {
  Rational l = 0;
  for (int j : index_set_) l += 1 - charges_[j];
  return l;
}

std::map<Rational, std::size_t> GradedMilnorRing::dims_by_degree() const {
  std::map<Rational, std::size_t> out;
  for (const auto& l : degrees_) ++out[l];
  return out;
}

std::vector<Rational> GradedMilnorRing::normal_form(const Monomial& m) const {
  std::vector<Rational> out(basis_.size(), Rational(0));
  for (std::size_t j = 0; j < n_; ++j)
    if (m[j] != 0 && !std::binary_search(index_set_.begin(), index_set_.end(), static_cast<int>(j))) return out;
  long s = weighted_degree(m);
  if (s > top_) return out;
  auto it = pieces_.find(s);
  if (it == pieces_.end()) return out;
  std::size_t pos = it->second.index.at(m);
  for (const auto& [g, x] : it->second.nf[pos]) out[g] += x;
  return out;
}

std::vector<Rational> GradedMilnorRing::normal_form(const Poly& f) const {
  std::vector<Rational> out(basis_.size(), Rational(0));
  for (const auto& [m, c] : f) {
    std::vector<Rational> part = normal_form(m);
    for (std::size_t i = 0; i < out.size(); ++i)
      if (part[i] != 0) out[i] += c * part[i];
  }
  return out;
}

long GradedMilnorRing::basis_index(const Monomial& m) const {
  auto it = basis_pos_.find(m);
  return it == basis_pos_.end() ? -1 : static_cast<long>(it->second);
}

Rational GradedMilnorRing::top_coefficient(const std::vector<Rational>& nf) const {
  return nf.at(top_index_) / top_scale_;
}

Rational GradedMilnorRing::residue_pairing(const Poly& f, const Poly& g) const {
  return top_coefficient(normal_form(poly_mul(f, g)));
}

Rational GradedMilnorRing::basis_pairing(std::size_t a, std::size_t b) const {
  Monomial m(n_);
  for (std::size_t j = 0; j < n_; ++j) m[j] = basis_[a][j] + basis_[b][j];
  if (weighted_degree(m) != top_) return 0;
  auto it = pieces_.find(top_);
  if (it == pieces_.end()) return 0;
  const Piece& piece = it->second;
  for (const auto& [g, x] : piece.nf[piece.index.at(m)])
    if (g == top_index_) return x / top_scale_;
  return 0;
}

MilnorCache::MilnorCache(InvertiblePolynomial p) : poly_(std::move(p)), charges_(lgm::charges(poly_)) {}

RingPtr MilnorCache::get(const std::vector<int>& index_set) const {
  std::vector<int> key = index_set;
  std::sort(key.begin(), key.end());
  {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = rings_.find(key);
    if (it != rings_.end()) return it->second;
  }
  auto ring = std::make_shared<const GradedMilnorRing>(poly_, charges_, key);
  std::lock_guard<std::mutex> lock(mutex_);
  return rings_.emplace(key, ring).first->second;
}

Rational action_character(const GradedMilnorRing& r, const Monomial& m, const SymmetryElement& h) {
  std::int64_t s = 0;
  for (int j : r.index_set()) s = (s + (m[j] + 1) * h.num[j]) % h.den;
  return make_rational(static_cast<long>(s), static_cast<long>(h.den));
}

std::vector<InvariantElement> invariant_basis(const GradedMilnorRing& r, const Subgroup& g) {
  const bool has_j = g.contains(g.host()->j_element());
  std::vector<InvariantElement> out;
  for (std::size_t i = 0; i < r.mu(); ++i) {
    const Monomial& m = r.basis()[i];
    bool fixed = true;
    for (const auto& h : g.generators())
      if (action_character(r, m, h) != 0) {
        fixed = false;
        break;
      }
    if (!fixed) continue;
    if (has_j && !is_integer(r.basis_degrees()[i]))
      throw NonIntegralDegree("invariant element of non-integral degree " + to_string(r.basis_degrees()[i]));
    out.push_back({i, m, r.basis_degrees()[i]});
  }
  return out;
}

}  // namespace lgm
