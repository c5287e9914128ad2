#pragma once

#include <string>
#include <vector>

#include "lgmirror/exactmath.hpp"

namespace lgm {

// N monomials in N variables, all coefficients 1. Row i of the exponent
// matrix is monomial i.
class InvertiblePolynomial {
 public:
  InvertiblePolynomial() = default;
  explicit InvertiblePolynomial(std::vector<std::vector<int>> exponents,
                                std::vector<std::string> names = {});

  std::size_t n_vars() const { return exponents_.size(); }
  const std::vector<std::vector<int>>& exponents() const { return exponents_; }
  int exponent(std::size_t monomial, std::size_t var) const { return exponents_[monomial][var]; }
  const std::vector<std::string>& names() const { return names_; }

  IntMatrix exponent_matrix() const;
  // Text in the polynomial DSL, monomials in row order.
  std::string to_dsl() const;

  friend bool operator==(const InvertiblePolynomial& a, const InvertiblePolynomial& b) {
    return a.exponents_ == b.exponents_;
  }

 private:
  std::vector<std::vector<int>> exponents_;
  std::vector<std::string> names_;
};

struct ChargeVector {
  std::vector<Rational> charges;
  Integer degree;                // lcm of the charge denominators
  std::vector<Integer> weights;  // degree * charges
  Rational central_charge;       // sum (1 - 2 q_j)
  Rational sum() const;
};

// q = E^{-1} (1,...,1). Throws SingularMatrix, ChargeOutOfRange.
ChargeVector charges(const InvertiblePolynomial& p);

enum class AtomKind { Fermat, Loop, Chain };
std::string to_string(AtomKind kind);

struct Atom {
  AtomKind kind = AtomKind::Fermat;
  std::vector<int> exponents;  // along the atom, a_1..a_k
  std::vector<int> variables;  // original variable indices in atom order
};

struct AtomDecomposition {
  std::vector<Atom> atoms;
  std::vector<int> permutation;  // slot -> original variable
  // Permutation-invariant identifier, e.g. "Chain(4,4,4,4,5)+Fermat(3)".
  std::string canonical_id() const;
};

// Throws NotInvertibleType when no relabeling gives Fermat/loop/chain atoms
// with all exponents >= 2.
AtomDecomposition decompose(const InvertiblePolynomial& p);

std::string atom_id(const Atom& atom);

// Exponent matrix transposed; variable names kept.
InvertiblePolynomial transpose(const InvertiblePolynomial& p);

struct Predicates {
  bool is_calabi_yau = false;
  bool is_gorenstein = false;
  Integer milnor_number;
};

// Throws NonIntegerMilnor.
Integer milnor_number(const std::vector<Rational>& charges);
Predicates predicates(const InvertiblePolynomial& p);

// Builders for the three atom shapes.
InvertiblePolynomial fermat(int a);
InvertiblePolynomial loop(const std::vector<int>& a);
InvertiblePolynomial chain(const std::vector<int>& a);
// Block-diagonal sum in disjoint variables.
InvertiblePolynomial direct_sum(const std::vector<InvertiblePolynomial>& parts);
InvertiblePolynomial from_atoms(const std::vector<Atom>& atoms);

}  // namespace lgm
