#include "lgmirror/statespace.hpp"

#include <algorithm>

namespace lgm {

std::string to_string(Flavor f) { return f == Flavor::A ? "A" : "B"; }

std::map<Bidegree, std::size_t> StateSpace::table() const {
  std::map<Bidegree, std::size_t> t;
  for (const auto& c : classes_) ++t[c.bidegree];
  return t;
}

std::map<Bidegree, std::map<std::size_t, std::size_t>> StateSpace::provenance() const {
  std::map<Bidegree, std::map<std::size_t, std::size_t>> t;
  for (const auto& c : classes_) ++t[c.bidegree][c.sector];
  return t;
}

long StateSpace::sector_of(const SymmetryElement& g) const {
  if (!group_->host()->contains(g.phases())) return -1;
  auto it = sector_by_index_.find(group_->host()->index_of(g));
  return it == sector_by_index_.end() ? -1 : static_cast<long>(it->second);
}

StateSpace StateSpace::filtered(const std::vector<std::size_t>& keep) const {
  StateSpace out = *this;
  out.classes_.clear();
  for (std::size_t i : keep) out.classes_.push_back(classes_.at(i));
  return out;
}

StateSpace build_state_space(Flavor flavor, const Subgroup& g, std::shared_ptr<const MilnorCache> cache) {
  const InvertiblePolynomial& p = g.host()->polynomial();
  if (!cache) cache = std::make_shared<const MilnorCache>(p);
  if (!(cache->polynomial() == p)) throw InvalidArgument("Milnor cache belongs to a different polynomial");
  const bool has_j = g.contains(g.host()->j_element());
  if (flavor == Flavor::A && !has_j) throw NotAAdmissible("j_W is not in G");

  StateSpace s;
  s.flavor_ = flavor;
  s.cache_ = cache;
  s.group_ = std::make_shared<const Subgroup>(g);
  s.b_admissible_ = admissibility(g).b_admissible;
  const Rational qsum = cache->charges().sum();

  for (std::uint64_t idx : g.member_indices()) {
    Sector sec;
    sec.g = g.host()->element_at(idx);
    sec.group_index = idx;
    sec.fixed = fixed_indices(sec.g);
    sec.ring = cache->get(sec.fixed);
    sec.invariants = invariant_basis(*sec.ring, g);
    sec.age = age(sec.g);
    sec.age_inverse = age(inverse(sec.g));
    const std::size_t si = s.sectors_.size();
    s.sector_by_index_[idx] = si;
    const Rational ng(static_cast<long>(sec.n_fixed()));
    for (std::size_t k = 0; k < sec.invariants.size(); ++k) {
      const Rational& l = sec.invariants[k].degree;
      StateClass c;
      c.sector = si;
      c.invariant = k;
      if (flavor == Flavor::A)
        c.bidegree = {l + sec.age - qsum, ng - l + sec.age - qsum};
      else
        c.bidegree = {l + sec.age - qsum, l + sec.age_inverse - qsum};
      s.classes_.push_back(c);
    }
    s.sectors_.push_back(std::move(sec));
  }
  return s;
}

StateSpace a_state_space(const Subgroup& g, std::shared_ptr<const MilnorCache> cache) {
  return build_state_space(Flavor::A, g, std::move(cache));
}

StateSpace b_state_space(const Subgroup& g, std::shared_ptr<const MilnorCache> cache) {
  return build_state_space(Flavor::B, g, std::move(cache));
}

namespace {

Rational class_pairing(const StateSpace& s, const StateClass& a, const StateClass& b) {
  const Sector& sa = s.sectors()[a.sector];
  const Sector& sb = s.sectors()[b.sector];
  if (!(inverse(sa.g) == sb.g)) return 0;
  return sa.ring->basis_pairing(sa.invariants[a.invariant].basis_index, sb.invariants[b.invariant].basis_index);
}

std::size_t matrix_rank(std::vector<std::vector<Rational>> m) {
  std::size_t rank = 0;
  const std::size_t rows = m.size(), cols = rows ? m[0].size() : 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t piv = rank;
    while (piv < rows && m[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(m[piv], m[rank]);
    for (std::size_t r = rank + 1; r < rows; ++r) {
      if (m[r][c] == 0) continue;
      Rational f = m[r][c] / m[rank][c];
      for (std::size_t k = c; k < cols; ++k) m[r][k] -= f * m[rank][k];
    }
    ++rank;
  }
  return rank;
}

}  // namespace

RationalMatrix pairing_matrix(const StateSpace& s) {
  const std::size_t n = s.total_dim();
  RationalMatrix m(n, n, Rational(0));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) m(a, b) = class_pairing(s, s.classes()[a], s.classes()[b]);
  return m;
}

std::size_t pairing_rank(const StateSpace& s) {
  std::map<std::size_t, std::vector<std::size_t>> by_sector;
  for (std::size_t i = 0; i < s.classes().size(); ++i) by_sector[s.classes()[i].sector].push_back(i);
  std::size_t rank = 0;
  for (const auto& [sec, rows] : by_sector) {
    long partner = s.sector_of(inverse(s.sectors()[sec].g));
    if (partner < 0) continue;
    auto it = by_sector.find(static_cast<std::size_t>(partner));
    if (it == by_sector.end()) continue;
    std::vector<std::vector<Rational>> block;
    for (std::size_t a : rows) {
      std::vector<Rational> row;
      for (std::size_t b : it->second) row.push_back(class_pairing(s, s.classes()[a], s.classes()[b]));
      block.push_back(std::move(row));
    }
    rank += matrix_rank(std::move(block));
  }
  return rank;
}

std::size_t Diamond::at(long p, long q) const {
  auto it = h.find({p, q});
  return it == h.end() ? 0 : it->second;
}

Diamond lg_cy_diamond(const Subgroup& g, std::shared_ptr<const MilnorCache> cache) {
  const InvertiblePolynomial& p = g.host()->polynomial();
  if (charges(p).sum() != 1) throw NotCalabiYau("sum of charges is not 1");
  StateSpace s = a_state_space(g, std::move(cache));
  Diamond d;
  d.dimension = static_cast<long>(p.n_vars()) - 2;
  for (const auto& [bd, n] : s.table()) {
    if (is_integer(bd.first) && is_integer(bd.second))
      d.h[{bd.first.get_num().get_si(), bd.second.get_num().get_si()}] += n;
    else
      d.fractional[bd] += n;
  }
  return d;
}

std::vector<DegreeDiff> compare_tables(const std::map<Bidegree, std::size_t>& left,
                                       const std::map<Bidegree, std::size_t>& right) {
  std::map<Bidegree, std::pair<std::size_t, std::size_t>> all;
  for (const auto& [k, v] : left) all[k].first = v;
  for (const auto& [k, v] : right) all[k].second = v;
  std::vector<DegreeDiff> out;
  for (const auto& [k, v] : all)
    if (v.first != v.second) out.push_back({k, v.first, v.second});
  return out;
}

MirrorReport mirror_check(const Subgroup& g) {
  const InvertiblePolynomial& p = g.host()->polynomial();
  GroupPtr dual_host = make_group(transpose(p));
  Subgroup gd = dual_group(g, dual_host);
  MirrorReport r;
  r.left = lg_cy_diamond(g);
  r.right = lg_cy_diamond(gd);
  const long n = r.left.dimension;
  std::map<Bidegree, std::size_t> lt, rt, rc;
  for (const auto& [pq, v] : r.left.h) lt[{Rational(pq.first), Rational(pq.second)}] = v;
  for (const auto& [pq, v] : r.right.h) {
    rt[{Rational(n - pq.first), Rational(pq.second)}] = v;
    rc[{Rational(n - pq.second), Rational(pq.first)}] = v;
  }
  r.mismatches = compare_tables(lt, rt);
  r.pass = r.mismatches.empty() && r.left.fractional.empty() && r.right.fractional.empty();
  r.conjugate_match = compare_tables(lt, rc).empty();
  return r;
}

KrawitzReport krawitz_compare(const Subgroup& g) {
  GroupPtr dual_host = make_group(transpose(g.host()->polynomial()));
  Subgroup gd = dual_group(g, dual_host);
  KrawitzReport r;
  r.a_table = a_state_space(g).table();
  r.b_table = b_state_space(gd).table();
  r.diffs = compare_tables(r.a_table, r.b_table);
  r.pass = r.diffs.empty();
  return r;
}

StateSpace aut_invariant_subspace(const StateSpace& s) {
  const auto& rho = s.group().host()->generators();
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < s.classes().size(); ++i) {
    const StateClass& c = s.classes()[i];
    const Sector& sec = s.sectors()[c.sector];
    const Monomial& m = sec.invariants[c.invariant].monomial;
    bool fixed = std::all_of(rho.begin(), rho.end(),
                             [&](const SymmetryElement& h) { return action_character(*sec.ring, m, h) == 0; });
    if (fixed) keep.push_back(i);
  }
  return s.filtered(keep);
}

std::vector<std::size_t> krawitz_fermat_map(const StateSpace& a, const StateSpace& b) {
  const InvertiblePolynomial& p = a.polynomial();
  const std::size_t n = p.n_vars();
  std::vector<int> expo(n);
  for (std::size_t i = 0; i < n; ++i) {
    int nonzero = 0;
    for (std::size_t j = 0; j < n; ++j)
      if (p.exponent(i, j) != 0) ++nonzero;
    if (nonzero != 1 || p.exponent(i, i) == 0) throw InvalidArgument("Krawitz map needs a diagonal Fermat sum");
    expo[i] = p.exponent(i, i);
  }
  std::map<std::pair<std::size_t, Monomial>, std::size_t> where;
  for (std::size_t i = 0; i < b.classes().size(); ++i) where[{b.classes()[i].sector, b.monomial(b.classes()[i])}] = i;

  std::vector<std::size_t> out;
  for (const auto& c : a.classes()) {
    const Sector& sec = a.sectors()[c.sector];
    const Monomial& m = a.monomial(c);
    std::vector<Rational> phases(n, Rational(0));
    Monomial image(n, 0);
    for (std::size_t j = 0; j < n; ++j) {
      if (sec.g.num[j] == 0) {
        phases[j] = make_rational(m[j] + 1, expo[j]);
      } else {
        Rational k = sec.g.phase(j) * expo[j];
        image[j] = static_cast<int>(k.get_num().get_si()) - 1;
      }
    }
    SymmetryElement h = b.group().host()->from_phases(phases);
    long si = b.sector_of(h);
    if (si < 0) throw InvalidArgument("Krawitz image sector is not in the dual group");
    auto it = where.find({static_cast<std::size_t>(si), image});
    if (it == where.end()) throw InvalidArgument("Krawitz image monomial is not invariant");
    out.push_back(it->second);
  }
  return out;
}

}  // namespace lgm
