#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lgmirror/milnor.hpp"
#include "lgmirror/symmetry.hpp"

namespace lgm {

enum class Flavor { A, B };
std::string to_string(Flavor f);

struct Sector {
  SymmetryElement g;
  std::uint64_t group_index = 0;  // index in the host Aut(W)
  std::vector<int> fixed;
  RingPtr ring;
  std::vector<InvariantElement> invariants;
  Rational age;
  Rational age_inverse;

  std::size_t n_fixed() const { return fixed.size(); }
  bool narrow() const { return fixed.empty(); }
};

using Bidegree = std::pair<Rational, Rational>;

struct StateClass {
  std::size_t sector = 0;
  std::size_t invariant = 0;  // position in Sector::invariants
  Bidegree bidegree;
  Rational total_degree() const { return bidegree.first + bidegree.second; }
};

class StateSpace {
 public:
  Flavor flavor() const { return flavor_; }
  const InvertiblePolynomial& polynomial() const { return cache_->polynomial(); }
  const Subgroup& group() const { return *group_; }
  const std::vector<Sector>& sectors() const { return sectors_; }
  const std::vector<StateClass>& classes() const { return classes_; }
  std::size_t total_dim() const { return classes_.size(); }
  // bidegree -> dimension
  std::map<Bidegree, std::size_t> table() const;
  // bidegree -> (sector index -> count)
  std::map<Bidegree, std::map<std::size_t, std::size_t>> provenance() const;
  bool b_admissible() const { return b_admissible_; }
  const Monomial& monomial(const StateClass& c) const { return sectors_[c.sector].invariants[c.invariant].monomial; }
  // sector index holding g, or -1
  long sector_of(const SymmetryElement& g) const;
  const std::shared_ptr<const MilnorCache>& cache() const { return cache_; }

  // keeps only the given classes; sectors are shared
  StateSpace filtered(const std::vector<std::size_t>& keep) const;

 private:
  friend StateSpace build_state_space(Flavor, const Subgroup&, std::shared_ptr<const MilnorCache>);
  Flavor flavor_ = Flavor::A;
  std::shared_ptr<const MilnorCache> cache_;
  std::shared_ptr<const Subgroup> group_;
  std::vector<Sector> sectors_;
  std::vector<StateClass> classes_;
  std::map<std::uint64_t, std::size_t> sector_by_index_;
  bool b_admissible_ = false;
};

StateSpace build_state_space(Flavor flavor, const Subgroup& g, std::shared_ptr<const MilnorCache> cache = nullptr);
// Throws NotAAdmissible unless j_W is in G.
StateSpace a_state_space(const Subgroup& g, std::shared_ptr<const MilnorCache> cache = nullptr);
StateSpace b_state_space(const Subgroup& g, std::shared_ptr<const MilnorCache> cache = nullptr);

// Residue pairings between sectors g and g^{-1}; narrow units pair to 1.
RationalMatrix pairing_matrix(const StateSpace& s);
// Rank computed block by block.
std::size_t pairing_rank(const StateSpace& s);

struct Diamond {
  long dimension = 0;  // N - 2
  std::map<std::pair<long, long>, std::size_t> h;
  std::map<Bidegree, std::size_t> fractional;  // non-integral bidegrees
  std::size_t at(long p, long q) const;
};

// Throws NotCalabiYau unless sum q_j = 1, NotAAdmissible unless j_W in G.
Diamond lg_cy_diamond(const Subgroup& g, std::shared_ptr<const MilnorCache> cache = nullptr);

struct DegreeDiff {
  Bidegree bidegree;
  std::size_t left = 0;
  std::size_t right = 0;
};

struct MirrorReport {
  bool pass = false;
  bool conjugate_match = false;  // matches after swapping p and q on the right
  Diamond left;
  Diamond right;
  std::vector<DegreeDiff> mismatches;  // keyed by the left (p, q)
};

// h^{p,q}(W, G) against h^{N-2-p,q}(W^T, G^T).
MirrorReport mirror_check(const Subgroup& g);

struct KrawitzReport {
  bool pass = false;
  std::map<Bidegree, std::size_t> a_table;
  std::map<Bidegree, std::size_t> b_table;
  std::vector<DegreeDiff> diffs;
};

// A(W, G) against B(W^T, G^T).
KrawitzReport krawitz_compare(const Subgroup& g);

// Classes of an A-space invariant under all of Aut(W).
StateSpace aut_invariant_subspace(const StateSpace& s);

// For a sum of Fermat monomials: sends each class of A(W, G) to the class of
// B(W^T, G^T) exchanging monomial exponents and group phases. Entry i is the
// image class index in b. Throws InvalidArgument for other W.
std::vector<std::size_t> krawitz_fermat_map(const StateSpace& a, const StateSpace& b);

std::vector<DegreeDiff> compare_tables(const std::map<Bidegree, std::size_t>& left,
                                       const std::map<Bidegree, std::size_t>& right);

}  // namespace lgm
