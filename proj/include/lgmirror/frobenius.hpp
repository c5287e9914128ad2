#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <tuple>
#include <vector>

#include "lgmirror/statespace.hpp"

namespace lgm {

// gamma_{g,h} as a class in Q_{W_{gh}}: scalar * det(d^2 W_K / dx_J dx_J) / mu_J,
// with K = Fix(gh), I = Fix(g) n Fix(h), J = K \ I, mu_J = prod_{j in J}(1/q_j - 1).
struct Gamma {
  bool zero = true;
  Rational scalar;
  std::vector<int> support;  // J
  Poly cls;                  // the full class, in the variables of K
};

class FrobeniusAlgebra {
 public:
  // sector index -> coefficients on that sector's ring basis
  using Element = std::map<std::size_t, std::vector<Rational>>;

  explicit FrobeniusAlgebra(const Subgroup& g, std::shared_ptr<const MilnorCache> cache = nullptr);

  const StateSpace& space() const { return space_; }
  std::size_t sector_count() const { return space_.sectors().size(); }

  Element unit(std::size_t sector) const;
  Element identity() const;
  Element sector_element(std::size_t sector, const Poly& alpha) const;
  Element class_element(const StateClass& c) const;

  // Throws NonScalarRelation when no scalar matches the hessian classes.
  Gamma gamma(std::size_t s, std::size_t t) const;
  Element multiply(const Element& a, const Element& b) const;
  Rational pairing(const Element& a, const Element& b) const;
  // B bidegree of a homogeneous element; nullopt when zero or mixed
  std::optional<Bidegree> bidegree(const Element& a) const;

  // (s, t, gamma_{s,t}) over all sector pairs, in index order
  std::vector<std::tuple<std::size_t, std::size_t, Gamma>> structure_constants() const;

 private:
  std::size_t product_sector(std::size_t s, std::size_t t) const;

  StateSpace space_;
  std::vector<std::vector<std::size_t>> table_;  // sector product table
  mutable std::mutex mutex_;
  mutable std::map<std::tuple<std::vector<int>, std::vector<int>>, Gamma> gammas_;
};

bool is_zero(const FrobeniusAlgebra::Element& a);
FrobeniusAlgebra::Element add(const FrobeniusAlgebra::Element& a, const FrobeniusAlgebra::Element& b);
bool equal(const FrobeniusAlgebra::Element& a, const FrobeniusAlgebra::Element& b);

}  // namespace lgm
