#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "lgmirror/exactmath.hpp"
#include "lgmirror/polynomial.hpp"

namespace lgm {

// Diagonal symmetry Diag(exp(2 pi i num_j / den)); 0 <= num_j < den.
struct SymmetryElement {
  std::vector<std::int64_t> num;
  std::int64_t den = 1;

  std::size_t size() const { return num.size(); }
  Rational phase(std::size_t j) const { return make_rational(num[j], den); }
  std::vector<Rational> phases() const;
  bool is_identity() const;

  friend bool operator==(const SymmetryElement& a, const SymmetryElement& b) {
    return a.den == b.den && a.num == b.num;
  }
  friend bool operator<(const SymmetryElement& a, const SymmetryElement& b) { return a.num < b.num; }
};

// Phases are reduced mod 1; den must be a multiple of every phase denominator.
SymmetryElement element_from_phases(const std::vector<Rational>& phases, std::int64_t den);
SymmetryElement multiply(const SymmetryElement& a, const SymmetryElement& b);
SymmetryElement inverse(const SymmetryElement& a);
SymmetryElement power(const SymmetryElement& a, std::int64_t k);
std::int64_t element_order(const SymmetryElement& a);
Rational age(const SymmetryElement& g);
std::vector<int> fixed_indices(const SymmetryElement& g);
std::vector<Rational> phases_to_rationals(const SymmetryElement& g);

// The maximal diagonal symmetry group Aut(W) = Z^N / E Z^N.
class SymmetryGroup {
 public:
  explicit SymmetryGroup(const InvertiblePolynomial& p);

  const InvertiblePolynomial& polynomial() const { return poly_; }
  std::size_t n_vars() const { return poly_.n_vars(); }
  std::uint64_t order() const { return order_; }
  std::int64_t exponent() const { return exponent_; }  // delta
  const std::vector<Integer>& invariant_factors() const { return factors_; }

  // rho_j: column j of E^{-1} mod 1.
  const std::vector<SymmetryElement>& generators() const { return rho_; }
  SymmetryElement identity() const;
  SymmetryElement j_element() const;

  // Membership test for an arbitrary phase vector.
  bool contains(const std::vector<Rational>& phases) const;
  SymmetryElement from_phases(const std::vector<Rational>& phases) const;
  // k coordinates: phases = E^{-1} k mod 1.
  std::vector<Integer> k_coordinates(const SymmetryElement& g) const;
  SymmetryElement from_k(const std::vector<Integer>& k) const;

  // Deterministic enumeration indexed by Smith coordinates.
  SymmetryElement element_at(std::uint64_t index) const;
  std::uint64_t index_of(const SymmetryElement& g) const;
  std::vector<SymmetryElement> elements() const;

  const RationalMatrix& inverse_exponents() const { return inverse_; }

 private:
  InvertiblePolynomial poly_;
  IntMatrix e_;
  RationalMatrix inverse_;
  std::vector<Integer> factors_;
  std::vector<std::int64_t> radix_;           // nontrivial Smith factors
  std::vector<std::size_t> radix_row_;        // their rows in the Smith form
  std::vector<SymmetryElement> smith_basis_;  // one generator per radix entry
  std::vector<std::vector<std::int64_t>> left_;
  std::vector<SymmetryElement> rho_;
  std::uint64_t order_ = 1;
  std::int64_t exponent_ = 1;
};

using GroupPtr = std::shared_ptr<const SymmetryGroup>;
GroupPtr make_group(const InvertiblePolynomial& p);

// A subgroup of a host Aut(W), stored both as a membership table and as the
// Hermite basis of its preimage lattice {k : E^{-1} k mod 1 in G}.
class Subgroup {
 public:
  Subgroup(GroupPtr host, const std::vector<SymmetryElement>& generators);
  static Subgroup from_lattice(GroupPtr host, const IntMatrix& rows);

  const GroupPtr& host() const { return host_; }
  std::uint64_t order() const { return members_.size(); }
  const std::vector<SymmetryElement>& generators() const { return generators_; }
  std::vector<std::vector<Integer>> generator_k() const;
  const IntMatrix& canonical_basis() const { return basis_; }

  bool contains(const SymmetryElement& g) const;
  bool contains_index(std::uint64_t index) const { return mask_[index]; }
  const std::vector<std::uint64_t>& member_indices() const { return members_; }
  std::vector<SymmetryElement> elements() const;
  const std::vector<bool>& mask() const { return mask_; }

  bool is_subgroup_of(const Subgroup& other) const;
  friend bool operator==(const Subgroup& a, const Subgroup& b);

 private:
  Subgroup(GroupPtr host, std::vector<SymmetryElement> generators, std::vector<bool> mask);
  void finish();

  GroupPtr host_;
  std::vector<SymmetryElement> generators_;
  std::vector<bool> mask_;
  std::vector<std::uint64_t> members_;
  IntMatrix basis_;
};

Subgroup trivial_subgroup(GroupPtr host);
Subgroup full_subgroup(GroupPtr host);
Subgroup j_subgroup(GroupPtr host);
// {g : sum of phases in Z}
Subgroup sl_subgroup(GroupPtr host);

struct Admissibility {
  bool a_admissible = false;  // j in G
  bool b_admissible = false;  // G in SL
};
Admissibility admissibility(const Subgroup& g);
// <j> <= G <= SL
bool is_calabi_yau_type(const Subgroup& g);

// G^vee in Aut(W^T): {l : l . phases(g) in Z for all g in G}, by lattice
// saturation. dual_host must be built from transpose(W).
Subgroup dual_group(const Subgroup& g, GroupPtr dual_host);

// Upper bound on |Aut(W)| for exhaustive subgroup enumeration. Reads
// LGMIRROR_MAX_GROUP, default 200.
std::uint64_t max_group_order();

// All subgroups, sorted by order then by membership. Throws GroupTooLarge
// when |Aut(W)| exceeds cap.
std::vector<Subgroup> enumerate_subgroups(GroupPtr host, std::uint64_t cap);

}  // namespace lgm
