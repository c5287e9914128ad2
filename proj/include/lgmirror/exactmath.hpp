#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "lgmirror/errors.hpp"

namespace lgm {

using Integer = mpz_class;
using Rational = mpq_class;

// Builds p/q in lowest terms with a positive denominator.
Rational make_rational(const Integer& p, const Integer& q);
Rational make_rational(long p, long q = 1);

// Fractional part in [0, 1).
Rational frac(const Rational& x);
Integer floor_of(const Rational& x);
bool is_integer(const Rational& x);

// "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& x);
std::string to_string(const Integer& x);
// Accepts "p", "p/q", with optional sign.
Rational parse_rational(std::string_view text);

Integer gcd(const Integer& a, const Integer& b);
Integer lcm(const Integer& a, const Integer& b);
Integer factorial(unsigned n);
Integer binomial(unsigned n, unsigned k);

template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  Matrix(std::size_t rows, std::size_t cols, const T& fill)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  explicit Matrix(const std::vector<std::vector<T>>& grid);

  static Matrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::vector<T> row(std::size_t i) const;
  std::vector<T> col(std::size_t j) const;
  Matrix transposed() const;
  std::vector<std::vector<T>> to_grid() const;

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using RationalMatrix = Matrix<Rational>;
using IntMatrix = Matrix<Integer>;

template <class T>
Matrix<T> operator*(const Matrix<T>& a, const Matrix<T>& b);
template <class T>
std::vector<T> operator*(const Matrix<T>& a, const std::vector<T>& v);

RationalMatrix to_rational(const IntMatrix& m);
IntMatrix int_matrix(const std::vector<std::vector<long>>& grid);

Rational determinant(const RationalMatrix& m);
Integer determinant(const IntMatrix& m);

// Exact inverse. Throws SingularMatrix.
RationalMatrix invert(const RationalMatrix& m);

struct SmithDecomposition {
  std::vector<Integer> diagonal;  // d_1 | d_2 | ... | d_N, all positive
  IntMatrix left;                 // unimodular
  IntMatrix right;                // unimodular; left * m * right = diag
};

// Square nonsingular integer matrices only. Throws SingularMatrix.
SmithDecomposition smith_normal_form(const IntMatrix& m);

struct HermiteDecomposition {
  IntMatrix basis;      // nonzero rows of the row-style HNF
  IntMatrix transform;  // unimodular, transform * m = [basis; 0]
  std::size_t rank = 0;
};

// Row-style Hermite normal form: pivots positive, entries above a pivot in [0, pivot).
HermiteDecomposition hermite_decomposition(const IntMatrix& m);
IntMatrix hermite_normal_form(const IntMatrix& m);

// Rows form a basis of {x in Z^n : m x = 0}.
IntMatrix integer_kernel(const IntMatrix& m);

// Basis (HNF rows) of {l in Z^n : r . l in Z for every row r}.
IntMatrix rational_annihilator(const std::vector<std::vector<Rational>>& rows, std::size_t n);

// Bernoulli numbers with B_1 = -1/2, and polynomials B_n(x).
Rational bernoulli_number(unsigned n);
Rational bernoulli_eval(unsigned n, const Rational& x);

}  // namespace lgm
