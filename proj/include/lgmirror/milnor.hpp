#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "lgmirror/exactmath.hpp"
#include "lgmirror/polynomial.hpp"
#include "lgmirror/symmetry.hpp"

namespace lgm {

// Exponent vector over all N variables of W.
using Monomial = std::vector<int>;
using Poly = std::map<Monomial, Rational>;

Poly poly_from_monomial(const Monomial& m, const Rational& c = Rational(1));
Poly poly_add(const Poly& a, const Poly& b);
Poly poly_scale(const Poly& a, const Rational& c);
Poly poly_mul(const Poly& a, const Poly& b);
Poly poly_derivative(const Poly& a, int var);
// Sets every variable outside keep to zero.
Poly poly_restrict(const Poly& a, const std::vector<int>& keep);
Poly poly_of(const InvertiblePolynomial& p);
Poly restriction(const InvertiblePolynomial& p, const std::vector<int>& index_set);
// det of the second-derivative matrix in the given variables; 1 when empty.
Poly hessian(const Poly& w, const std::vector<int>& vars);

// Q_{W_I} = C[x_I] / Jac(W|_I), graded by l(m) = sum_{j in I} (m_j + 1) q_j.
class GradedMilnorRing {
 public:
  GradedMilnorRing(const InvertiblePolynomial& p, const ChargeVector& q, std::vector<int> index_set);

  const std::vector<int>& index_set() const { return index_set_; }
  std::size_t n_vars() const { return n_; }
  std::size_t mu() const { return basis_.size(); }
  const std::vector<Monomial>& basis() const { return basis_; }
  const std::vector<Rational>& basis_degrees() const { return degrees_; }
  // Monomial weighted degree of the top piece, sum_{j in I} (1 - 2 q_j).
  Rational top_degree() const { return top_degree_; }
  // l of the top piece, sum_{j in I} (1 - q_j).
  Rational top_form_degree() const;
  Rational form_degree(const Monomial& m) const;
  const Poly& hessian_poly() const { return hessian_; }
  const std::vector<Rational>& hessian_nf() const { return hessian_nf_; }
  // Dimension of each graded piece keyed by l.
  std::map<Rational, std::size_t> dims_by_degree() const;

  // Coefficients on basis(); products of degree above the top vanish.
  std::vector<Rational> normal_form(const Poly& f) const;
  std::vector<Rational> normal_form(const Monomial& m) const;
  // index in basis(), or -1
  long basis_index(const Monomial& m) const;

  // fg = <f,g> hess/mu + lower terms
  Rational residue_pairing(const Poly& f, const Poly& g) const;
  Rational basis_pairing(std::size_t a, std::size_t b) const;
  // Coefficient of hess/mu in the top piece of NF(f).
  Rational top_coefficient(const std::vector<Rational>& nf) const;

 private:
  struct Piece {
    std::vector<Monomial> monomials;            // ascending lex
    std::map<Monomial, std::size_t> index;      // monomial -> position
    std::vector<std::vector<std::pair<std::size_t, Rational>>> nf;  // per monomial, over global basis
  };
  long weighted_degree(const Monomial& m) const;

  std::size_t n_ = 0;
  std::vector<int> index_set_;
  std::vector<Integer> weights_;
  std::vector<Rational> charges_;
  Integer degree_;
  long top_ = 0;  // weighted units
  Rational top_degree_;
  std::map<long, Piece> pieces_;
  std::vector<Monomial> basis_;
  std::vector<Rational> degrees_;
  std::map<Monomial, std::size_t> basis_pos_;
  Poly hessian_;
  std::vector<Rational> hessian_nf_;
  std::size_t top_index_ = 0;
  Rational top_scale_;  // (hessian top coefficient) / mu
};

using RingPtr = std::shared_ptr<const GradedMilnorRing>;

// Thread-safe memo of restrictions of one polynomial.
class MilnorCache {
 public:
  explicit MilnorCache(InvertiblePolynomial p);
  const InvertiblePolynomial& polynomial() const { return poly_; }
  const ChargeVector& charges() const { return charges_; }
  RingPtr get(const std::vector<int>& index_set) const;

 private:
  InvertiblePolynomial poly_;
  ChargeVector charges_;
  mutable std::mutex mutex_;
  mutable std::map<std::vector<int>, RingPtr> rings_;
};

// sum_{j in I} (m_j + 1) phase_j(h) mod 1
Rational action_character(const GradedMilnorRing& r, const Monomial& m, const SymmetryElement& h);

struct InvariantElement {
  std::size_t basis_index = 0;
  Monomial monomial;
  Rational degree;  // l(m)
};

// Basis elements fixed by every generator of g. Throws NonIntegralDegree if
// j_W is in g and some invariant has non-integral l.
std::vector<InvariantElement> invariant_basis(const GradedMilnorRing& r, const Subgroup& g);

}  // namespace lgm
