#include "lgmirror/frobenius.hpp"

#include <algorithm>
#include <set>

namespace lgm {

namespace {

Poly basis_poly(const GradedMilnorRing& r, const std::vector<Rational>& c) {
  Poly p;
  for (std::size_t i = 0; i < c.size(); ++i)
    if (c[i] != 0) p[r.basis()[i]] = c[i];
  return p;
}

}  // namespace

FrobeniusAlgebra::FrobeniusAlgebra(const Subgroup& g, std::shared_ptr<const MilnorCache> cache)
    : space_(b_state_space(g, std::move(cache))) {
  const std::size_t n = sector_count();
  table_.assign(n, std::vector<std::size_t>(n));
  for (std::size_t s = 0; s < n; ++s)
    for (std::size_t t = 0; t < n; ++t)
      table_[s][t] = static_cast<std::size_t>(space_.sector_of(lgm::multiply(space_.sectors()[s].g, space_.sectors()[t].g)));
}

std::size_t FrobeniusAlgebra::product_sector(std::size_t s, std::size_t t) const { return table_.at(s).at(t); }

FrobeniusAlgebra::Element FrobeniusAlgebra::unit(std::size_t sector) const {
  const auto& ring = *space_.sectors().at(sector).ring;
  std::vector<Rational> c(ring.mu(), Rational(0));
  c[ring.basis_index(Monomial(space_.polynomial().n_vars(), 0))] = 1;
  return {{sector, c}};
}

FrobeniusAlgebra::Element FrobeniusAlgebra::identity() const {
  return unit(static_cast<std::size_t>(space_.sector_of(space_.group().host()->identity())));
}

FrobeniusAlgebra::Element FrobeniusAlgebra::sector_element(std::size_t sector, const Poly& alpha) const {
  std::vector<Rational> c = space_.sectors().at(sector).ring->normal_form(alpha);
  if (std::all_of(c.begin(), c.end(), [](const Rational& x) { return x == 0; })) return {};
  return {{sector, c}};
}

FrobeniusAlgebra::Element FrobeniusAlgebra::class_element(const StateClass& c) const {
  const Sector& s = space_.sectors()[c.sector];
  std::vector<Rational> v(s.ring->mu(), Rational(0));
  v[s.invariants[c.invariant].basis_index] = 1;
  return {{c.sector, v}};
}

Gamma FrobeniusAlgebra::gamma(std::size_t s, std::size_t t) const {
  const Sector& sg = space_.sectors()[s];
  const Sector& sh = space_.sectors()[t];
  const Sector& sk = space_.sectors()[product_sector(s, t)];
  const std::size_t n = space_.polynomial().n_vars();
  std::set<int> cover(sg.fixed.begin(), sg.fixed.end());
  cover.insert(sh.fixed.begin(), sh.fixed.end());
  cover.insert(sk.fixed.begin(), sk.fixed.end());
  if (cover.size() != n) return Gamma{};

  std::vector<int> inter;
  std::set_intersection(sg.fixed.begin(), sg.fixed.end(), sh.fixed.begin(), sh.fixed.end(), std::back_inserter(inter));
  auto key = std::make_tuple(inter, sk.fixed);
  {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = gammas_.find(key);
    if (it != gammas_.end()) return it->second;
  }

  Gamma out;
  out.zero = false;
  std::set_difference(sk.fixed.begin(), sk.fixed.end(), inter.begin(), inter.end(), std::back_inserter(out.support));
  const InvertiblePolynomial& p = space_.polynomial();
  const ChargeVector& q = space_.cache()->charges();
  RingPtr ring_i = space_.cache()->get(inter);
  const GradedMilnorRing& ring_k = *sk.ring;

  Poly partial = out.support.empty() ? poly_from_monomial(Monomial(n, 0))
                                     : hessian(restriction(p, sk.fixed), out.support);
  Rational mu_j = 1;
  for (int j : out.support) mu_j *= 1 / q.charges[j] - 1;
  Rational tc = ring_k.top_coefficient(ring_k.normal_form(poly_mul(partial, ring_i->hessian_poly())));
  if (tc == 0)
    throw NonScalarRelation("restricted hessian classes are not proportional in the product sector");
  Rational mu_k(static_cast<long>(ring_k.mu()));
  out.scalar = mu_k / tc;
  out.cls = poly_scale(partial, out.scalar / mu_j);

  std::lock_guard<std::mutex> lock(mutex_);
  return gammas_.emplace(key, out).first->second;
}

FrobeniusAlgebra::Element FrobeniusAlgebra::multiply(const Element& a, const Element& b) const {
  Element out;
  for (const auto& [s, ca] : a)
    for (const auto& [t, cb] : b) {
      Gamma gm = gamma(s, t);
      if (gm.zero) continue;
      std::size_t u = product_sector(s, t);
      const Sector& su = space_.sectors()[u];
      Poly alpha = poly_restrict(basis_poly(*space_.sectors()[s].ring, ca), su.fixed);
      Poly beta = poly_restrict(basis_poly(*space_.sectors()[t].ring, cb), su.fixed);
      Poly prod = poly_mul(poly_mul(alpha, beta), gm.cls);
      out = add(out, sector_element(u, prod));
    }
  return out;
}

Rational FrobeniusAlgebra::pairing(const Element& a, const Element& b) const {
  Rational total = 0;
  for (const auto& [s, ca] : a) {
    long t = space_.sector_of(inverse(space_.sectors()[s].g));
    auto it = b.find(static_cast<std::size_t>(t));
    if (t < 0 || it == b.end()) continue;
    const GradedMilnorRing& r = *space_.sectors()[s].ring;
    for (std::size_t i = 0; i < ca.size(); ++i) {
      if (ca[i] == 0) continue;
      for (std::size_t j = 0; j < it->second.size(); ++j)
        if (it->second[j] != 0) total += ca[i] * it->second[j] * r.basis_pairing(i, j);
    }
  }
  return total;
}

std::optional<Bidegree> FrobeniusAlgebra::bidegree(const Element& a) const {
  std::optional<Bidegree> out;
  const Rational qsum = space_.cache()->charges().sum();
  for (const auto& [s, c] : a) {
    const Sector& sec = space_.sectors()[s];
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (c[i] == 0) continue;
      const Rational& l = sec.ring->basis_degrees()[i];
      Bidegree bd{l + sec.age - qsum, l + sec.age_inverse - qsum};
      if (out && *out != bd) return std::nullopt;
      out = bd;
    }
  }
  return out;
}

std::vector<std::tuple<std::size_t, std::size_t, Gamma>> FrobeniusAlgebra::structure_constants() const {
  std::vector<std::tuple<std::size_t, std::size_t, Gamma>> out;
  for (std::size_t s = 0; s < sector_count(); ++s)
    for (std::size_t t = 0; t < sector_count(); ++t) out.emplace_back(s, t, gamma(s, t));
  return out;
}

bool is_zero(const FrobeniusAlgebra::Element& a) {
  for (const auto& [s, c] : a)
    for (const auto& x : c)
      if (x != 0) return false;
  return true;
}

FrobeniusAlgebra::Element add(const FrobeniusAlgebra::Element& a, const FrobeniusAlgebra::Element& b) {
  FrobeniusAlgebra::Element out = a;
  for (const auto& [s, c] : b) {
    auto it = out.find(s);
    if (it == out.end()) {
      out.emplace(s, c);
      continue;
    }
    for (std::size_t i = 0; i < c.size(); ++i) it->second[i] += c[i];
  }
  for (auto it = out.begin(); it != out.end();)
    it = std::all_of(it->second.begin(), it->second.end(), [](const Rational& x) { return x == 0; }) ? out.erase(it)
                                                                                                   : std::next(it);
  return out;
}

bool equal(const FrobeniusAlgebra::Element& a, const FrobeniusAlgebra::Element& b) {
  FrobeniusAlgebra::Element neg = b;
  for (auto& [s, c] : neg)
    for (auto& x : c) x = -x;
  return is_zero(add(a, neg));
}

}  // namespace lgm
