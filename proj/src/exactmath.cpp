#include "lgmirror/exactmath.hpp"

#include <algorithm>
#include <mutex>
#include <utility>

namespace lgm {

Rational make_rational(const Integer& p, const Integer& q) {
  if (q == 0) throw InvalidArgument("zero denominator");
  Rational r(p, q);
  r.canonicalize();
  return r;
}

Rational make_rational(long p, long q) { return make_rational(Integer(p), Integer(q)); }

Integer floor_of(const Rational& x) {
  Integer out;
  mpz_fdiv_q(out.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return out;
}

Rational frac(const Rational& x) { return x - Rational(floor_of(x)); }

bool is_integer(const Rational& x) { return x.get_den() == 1; }

std::string to_string(const Integer& x) { return x.get_str(); }

std::string to_string(const Rational& x) {
  if (x.get_den() == 1) return x.get_num().get_str();
  return x.get_num().get_str() + "/" + x.get_den().get_str();
}

Rational parse_rational(std::string_view text) {
  auto parse_int = [&](std::string_view s) {
    std::string_view digits = s;
    if (!digits.empty() && (digits[0] == '-' || digits[0] == '+')) digits.remove_prefix(1);
    if (digits.empty() || !std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; }))
      throw InvalidArgument("not a rational: '" + std::string(text) + "'");
    std::string buf(s[0] == '+' ? s.substr(1) : s);
    return Integer(buf);
  };
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text));
  return make_rational(parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));
}

Integer gcd(const Integer& a, const Integer& b) {
  Integer g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

Integer lcm(const Integer& a, const Integer& b) {
  Integer l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

Integer factorial(unsigned n) {
  Integer f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return f;
}

Integer binomial(unsigned n, unsigned k) {
  Integer b;
  mpz_bin_uiui(b.get_mpz_t(), n, k);
  return b;
}

// ---- Matrix ----

template <class T>
Matrix<T>::Matrix(const std::vector<std::vector<T>>& grid)
    : rows_(grid.size()), cols_(grid.empty() ? 0 : grid[0].size()) {
  data_.reserve(rows_ * cols_);
  for (const auto& r : grid) {
    if (r.size() != cols_) throw InvalidArgument("ragged matrix");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

template <class T>
Matrix<T> Matrix<T>::identity(std::size_t n) {
  Matrix m(n, n, T(0));
  for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
  return m;
}

template <class T>
std::vector<T> Matrix<T>::row(std::size_t i) const {
  return std::vector<T>(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
}

template <class T>
std::vector<T> Matrix<T>::col(std::size_t j) const {
  std::vector<T> out(rows_);
  for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
  return out;
}

template <class T>
Matrix<T> Matrix<T>::transposed() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

template <class T>
std::vector<std::vector<T>> Matrix<T>::to_grid() const {
  std::vector<std::vector<T>> g(rows_);
  for (std::size_t i = 0; i < rows_; ++i) g[i] = row(i);
  return g;
}

template <class T>
Matrix<T> operator*(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.cols() != b.rows()) throw InvalidArgument("matrix product dimension mismatch");
  Matrix<T> c(a.rows(), b.cols(), T(0));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += a(i, k) * b(k, j);
    }
  return c;
}

template <class T>
std::vector<T> operator*(const Matrix<T>& a, const std::vector<T>& v) {
  if (a.cols() != v.size()) throw InvalidArgument("matrix-vector dimension mismatch");
  std::vector<T> out(a.rows(), T(0));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) out[i] += a(i, k) * v[k];
  return out;
}

template class Matrix<Rational>;
template class Matrix<Integer>;
template Matrix<Rational> operator*(const Matrix<Rational>&, const Matrix<Rational>&);
template Matrix<Integer> operator*(const Matrix<Integer>&, const Matrix<Integer>&);
template std::vector<Rational> operator*(const Matrix<Rational>&, const std::vector<Rational>&);
template std::vector<Integer> operator*(const Matrix<Integer>&, const std::vector<Integer>&);

RationalMatrix to_rational(const IntMatrix& m) {
  RationalMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = Rational(m(i, j));
  return r;
}

IntMatrix int_matrix(const std::vector<std::vector<long>>& grid) {
  IntMatrix m(grid.size(), grid.empty() ? 0 : grid[0].size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (grid[i].size() != m.cols()) throw InvalidArgument("ragged matrix");
    for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = grid[i][j];
  }
  return m;
}

// ---- determinants and inverse ----

Rational determinant(const RationalMatrix& m) {
  if (!m.square()) throw InvalidArgument("determinant of non-square matrix");
  RationalMatrix a = m;
  const std::size_t n = a.rows();
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a(p, c) == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(p, j), a(c, j));
      det = -det;
    }
    det *= a(c, c);
    for (std::size_t r = c + 1; r < n; ++r) {
      if (a(r, c) == 0) continue;
      Rational f = a(r, c) / a(c, c);
      for (std::size_t j = c; j < n; ++j) a(r, j) -= f * a(c, j);
    }
  }
  return det;
}

Integer determinant(const IntMatrix& m) {
  Rational d = determinant(to_rational(m));
  return d.get_num();
}

RationalMatrix invert(const RationalMatrix& m) {
  if (!m.square() || m.rows() == 0) throw InvalidArgument("inverse of non-square matrix");
  const std::size_t n = m.rows();
  RationalMatrix a = m;
  RationalMatrix inv = RationalMatrix::identity(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a(p, c) == 0) ++p;
    if (p == n) throw SingularMatrix("matrix has zero determinant");
    if (p != c)
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a(p, j), a(c, j));
        std::swap(inv(p, j), inv(c, j));
      }
    Rational piv = a(c, c);
    for (std::size_t j = 0; j < n; ++j) {
      a(c, j) /= piv;
      inv(c, j) /= piv;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a(r, c) == 0) continue;
      Rational f = a(r, c);
      for (std::size_t j = 0; j < n; ++j) {
        a(r, j) -= f * a(c, j);
        inv(r, j) -= f * inv(c, j);
      }
    }
  }
  return inv;
}

// ---- Smith normal form ----

namespace {

void swap_rows(IntMatrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(a, j), m(b, j));
}

void swap_cols(IntMatrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < m.rows(); ++i) std::swap(m(i, a), m(i, b));
}

// row[dst] += f * row[src]
void add_row(IntMatrix& m, std::size_t dst, std::size_t src, const Integer& f) {
  if (f == 0) return;
  for (std::size_t j = 0; j < m.cols(); ++j) m(dst, j) += f * m(src, j);
}

void add_col(IntMatrix& m, std::size_t dst, std::size_t src, const Integer& f) {
  if (f == 0) return;
  for (std::size_t i = 0; i < m.rows(); ++i) m(i, dst) += f * m(i, src);
}

void negate_row(IntMatrix& m, std::size_t r) {
  for (std::size_t j = 0; j < m.cols(); ++j) m(r, j) = -m(r, j);
}

Integer floor_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

}  // namespace

SmithDecomposition smith_normal_form(const IntMatrix& m) {
  if (!m.square() || m.rows() == 0) throw InvalidArgument("Smith form needs a square matrix");
  if (determinant(m) == 0) throw SingularMatrix("matrix has zero determinant");
  const std::size_t n = m.rows();
  IntMatrix a = m;
  IntMatrix left = IntMatrix::identity(n);
  IntMatrix right = IntMatrix::identity(n);

  for (std::size_t t = 0; t < n; ++t) {
    for (;;) {
      // smallest nonzero entry of the trailing block moves to (t, t)
      std::size_t pi = t, pj = t;
      bool found = false;
      for (std::size_t i = t; i < n; ++i)
        for (std::size_t j = t; j < n; ++j)
          if (a(i, j) != 0 && (!found || abs(a(i, j)) < abs(a(pi, pj)))) {
            pi = i;
            pj = j;
            found = true;
          }
      swap_rows(a, t, pi);
      swap_rows(left, t, pi);
      swap_cols(a, t, pj);
      swap_cols(right, t, pj);

      bool clean = true;
      for (std::size_t i = t + 1; i < n; ++i) {
        if (a(i, t) == 0) continue;
        Integer f = -floor_div(a(i, t), a(t, t));
        add_row(a, i, t, f);
        add_row(left, i, t, f);
        if (a(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (a(t, j) == 0) continue;
        Integer f = -floor_div(a(t, j), a(t, t));
        add_col(a, j, t, f);
        add_col(right, j, t, f);
        if (a(t, j) != 0) clean = false;
      }
      if (!clean) continue;

      // divisibility: fold an offending row into row t and repeat
      bool divides = true;
      for (std::size_t i = t + 1; i < n && divides; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (a(i, j) % a(t, t) != 0) {
            add_row(a, t, i, Integer(1));
            add_row(left, t, i, Integer(1));
            divides = false;
            break;
          }
      if (divides) break;
    }
    if (a(t, t) < 0) {
      negate_row(a, t);
      negate_row(left, t);
    }
  }

  SmithDecomposition out;
  out.diagonal.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.diagonal[i] = a(i, i);
  out.left = std::move(left);
  out.right = std::move(right);
  return out;
}

// ---- Hermite normal form ----

HermiteDecomposition hermite_decomposition(const IntMatrix& m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  IntMatrix a = m;
  IntMatrix u = IntMatrix::identity(rows);
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    // gcd-combine column c of rows r.. into row r
    for (std::size_t i = r + 1; i < rows; ++i) {
      if (a(i, c) == 0) continue;
      if (a(r, c) == 0) {
        swap_rows(a, r, i);
        swap_rows(u, r, i);
        continue;
      }
      Integer g, s, t;
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a(r, c).get_mpz_t(), a(i, c).get_mpz_t());
      Integer x = a(r, c) / g, y = a(i, c) / g;
      // [s t; -y x] has determinant 1
      for (IntMatrix* mat : {&a, &u}) {
        IntMatrix& z = *mat;
        for (std::size_t j = 0; j < z.cols(); ++j) {
          Integer top = s * z(r, j) + t * z(i, j);
          Integer bot = -y * z(r, j) + x * z(i, j);
          z(r, j) = std::move(top);
          z(i, j) = std::move(bot);
        }
      }
    }
    if (a(r, c) == 0) continue;
    if (a(r, c) < 0) {
      negate_row(a, r);
      negate_row(u, r);
    }
    for (std::size_t i = 0; i < r; ++i) {
      Integer f = -floor_div(a(i, c), a(r, c));
      add_row(a, i, r, f);
      add_row(u, i, r, f);
    }
    ++r;
  }
  HermiteDecomposition out;
  out.rank = r;
  out.basis = IntMatrix(r, cols);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < cols; ++j) out.basis(i, j) = a(i, j);
  out.transform = std::move(u);
  return out;
}

IntMatrix hermite_normal_form(const IntMatrix& m) { return hermite_decomposition(m).basis; }

IntMatrix integer_kernel(const IntMatrix& m) {
  const std::size_t n = m.cols();
  HermiteDecomposition h = hermite_decomposition(m.transposed());
  IntMatrix k(n - h.rank, n);
  for (std::size_t i = h.rank; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) k(i - h.rank, j) = h.transform(i, j);
  return k;
}

IntMatrix rational_annihilator(const std::vector<std::vector<Rational>>& rows, std::size_t n) {
  if (rows.empty()) return IntMatrix::identity(n);
  Integer den = 1;
  for (const auto& r : rows) {
    if (r.size() != n) throw InvalidArgument("annihilator row length mismatch");
    for (const auto& x : r) den = lcm(den, x.get_den());
  }
  // l is admissible iff (den*R) l = den*y for some integer y: kernel of [den*R | -den*I]
  const std::size_t m = rows.size();
  IntMatrix a(m, n + m, Integer(0));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      Rational v = rows[i][j] * den;
      a(i, j) = v.get_num();
    }
    a(i, n + i) = -den;
  }
  IntMatrix ker = integer_kernel(a);
  IntMatrix proj(ker.rows(), n);
  for (std::size_t i = 0; i < ker.rows(); ++i)
    for (std::size_t j = 0; j < n; ++j) proj(i, j) = ker(i, j);
  return hermite_normal_form(proj);
}

// ---- Bernoulli ----

namespace {
std::mutex bernoulli_mutex;
std::vector<Rational> bernoulli_cache{Rational(1)};
}  // namespace

Rational bernoulli_number(unsigned n) {
  std::lock_guard<std::mutex> lock(bernoulli_mutex);
  while (bernoulli_cache.size() <= n) {
    const unsigned m = static_cast<unsigned>(bernoulli_cache.size());
    Rational acc = 0;
    for (unsigned k = 0; k < m; ++k) acc += Rational(binomial(m + 1, k)) * bernoulli_cache[k];
    bernoulli_cache.push_back(-acc / Rational(m + 1));
  }
  return bernoulli_cache[n];
}

Rational bernoulli_eval(unsigned n, const Rational& x) {
  // Horner over B_n(x) = sum_k C(n,k) B_k x^(n-k)
  Rational acc = 0;
  for (unsigned k = 0; k <= n; ++k) acc = acc * x + Rational(binomial(n, k)) * bernoulli_number(k);
  return acc;
}

}  // namespace lgm
