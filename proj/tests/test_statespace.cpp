#include <set>

#include "doctest.h"
#include "lgmirror/statespace.hpp"

using namespace lgm;

namespace {

InvertiblePolynomial quintic() { return direct_sum({fermat(5), fermat(5), fermat(5), fermat(5), fermat(5)}); }
InvertiblePolynomial chain_quintic() { return chain({4, 4, 4, 4, 5}); }
InvertiblePolynomial p8() { return direct_sum({fermat(3), fermat(3), fermat(3)}); }

Bidegree bd(long a, long b) { return {Rational(a), Rational(b)}; }

std::vector<InvertiblePolynomial> sweep_polys() {
  return {fermat(4),
          direct_sum({fermat(3), fermat(3)}),
          InvertiblePolynomial({{3, 0}, {1, 2}}),
          loop({3, 3}),
          loop({2, 3}),
          chain({2, 3}),
          chain({3, 3}),
          p8(),
          direct_sum({chain({2, 2}), fermat(4)}),
          loop({2, 2, 2}),
          chain({2, 2, 3}),
          direct_sum({fermat(2), fermat(4), fermat(4)})};
}

}  // namespace

TEST_CASE("quintic A-model with j") {
  auto g = make_group(quintic());
  StateSpace s = a_state_space(j_subgroup(g));
  std::multiset<Rational> narrow_totals;
  std::map<Bidegree, std::size_t> broad;
  for (const auto& c : s.classes()) {
    if (s.sectors()[c.sector].narrow())
      narrow_totals.insert(c.total_degree());
    else
      ++broad[c.bidegree];
  }
  CHECK(narrow_totals == std::multiset<Rational>{0, 2, 4, 6});
  CHECK(broad == std::map<Bidegree, std::size_t>{{bd(0, 3), 1}, {bd(1, 2), 101}, {bd(2, 1), 101}, {bd(3, 0), 1}});
  CHECK(s.total_dim() == 208);

  Diamond d = lg_cy_diamond(j_subgroup(g));
  CHECK(d.dimension == 3);
  CHECK(d.at(1, 1) == 1);
  CHECK(d.at(2, 1) == 101);
  CHECK(d.at(3, 0) == 1);
  CHECK(d.fractional.empty());
}

TEST_CASE("quintic SL diamond") {
  auto g = make_group(quintic());
  Diamond d = lg_cy_diamond(sl_subgroup(g));
  CHECK(d.at(1, 1) == 101);
  CHECK(d.at(2, 1) == 1);
  CHECK(d.at(3, 0) == 1);
  CHECK(d.at(0, 0) == 1);
}

TEST_CASE("B-model of the quintic with the trivial group") {
  auto g = make_group(quintic());
  StateSpace b = b_state_space(trivial_subgroup(g));
  std::map<Bidegree, std::size_t> integral;
  std::size_t fractional = 0;
  for (const auto& [k, v] : b.table()) {
    if (is_integer(k.first) && is_integer(k.second))
      integral[k] = v;
    else
      fractional += v;
  }
  CHECK(integral == std::map<Bidegree, std::size_t>{{bd(0, 0), 1}, {bd(1, 1), 101}, {bd(2, 2), 101}, {bd(3, 3), 1}});
  CHECK(b.total_dim() == 1024);
  CHECK(fractional == 1024 - 204);
  CHECK_THROWS_AS(a_state_space(trivial_subgroup(g)), NotAAdmissible);
}

TEST_CASE("Krawitz comparisons on the quintic") {
  auto g = make_group(quintic());
  CHECK(krawitz_compare(j_subgroup(g)).pass);
  CHECK(krawitz_compare(full_subgroup(g)).pass);
  // A(W, Aut) against B(W, {1})
  StateSpace a = a_state_space(full_subgroup(g));
  StateSpace b = b_state_space(trivial_subgroup(make_group(transpose(quintic()))));
  CHECK(a.table() == b.table());
}

TEST_CASE("chain quintic mirror pair") {
  auto g = make_group(chain_quintic());
  Diamond d = lg_cy_diamond(j_subgroup(g));
  CHECK(d.at(1, 1) == 1);
  CHECK(d.at(1, 2) == 101);
  CHECK(d.at(0, 3) == 1);
  auto gt = make_group(transpose(chain_quintic()));
  Diamond dt = lg_cy_diamond(j_subgroup(gt));
  CHECK(dt.at(1, 1) == 101);
  CHECK(dt.at(1, 2) == 1);
  CHECK(dt.at(0, 3) == 1);
  MirrorReport r = mirror_check(j_subgroup(g));
  CHECK(r.pass);
  CHECK(r.mismatches.empty());
}

TEST_CASE("quintic mirror check and P8 self check") {
  auto g = make_group(quintic());
  CHECK(mirror_check(j_subgroup(g)).pass);
  CHECK(mirror_check(sl_subgroup(g)).pass);
  auto p = make_group(p8());
  Diamond d = lg_cy_diamond(j_subgroup(p));
  CHECK(d.dimension == 1);
  CHECK(d.h == std::map<std::pair<long, long>, std::size_t>{{{0, 0}, 1}, {{1, 0}, 1}, {{0, 1}, 1}, {{1, 1}, 1}});
  CHECK(mirror_check(j_subgroup(p)).pass);
  CHECK_THROWS_AS(lg_cy_diamond(full_subgroup(make_group(fermat(4)))), NotCalabiYau);
}

TEST_CASE("Fermat Aut-invariant subspace is the narrow span") {
  auto g = make_group(quintic());
  StateSpace s = a_state_space(j_subgroup(g));
  StateSpace inv = aut_invariant_subspace(s);
  CHECK(inv.total_dim() == 4);
  for (const auto& c : inv.classes()) CHECK(inv.sectors()[c.sector].narrow());
}

TEST_CASE("pairing on the quintic") {
  auto g = make_group(quintic());
  StateSpace s = a_state_space(j_subgroup(g));
  CHECK(pairing_rank(s) == s.total_dim());
  // narrow units: 1_j with 1_{j^4}, 1_{j^2} with 1_{j^3}
  SymmetryElement j = g->j_element();
  for (int k = 1; k <= 4; ++k) {
    long a = s.sector_of(power(j, k));
    long b = s.sector_of(power(j, 5 - k));
    REQUIRE(a >= 0);
    REQUIRE(b >= 0);
    StateClass ca, cb;
    for (const auto& c : s.classes()) {
      if (c.sector == static_cast<std::size_t>(a)) ca = c;
      if (c.sector == static_cast<std::size_t>(b)) cb = c;
    }
    CHECK(ca.total_degree() + cb.total_degree() == 6);
  }
  // identity block is the Milnor Gram of the invariant part
  StateSpace small = a_state_space(j_subgroup(make_group(p8())));
  RationalMatrix m = pairing_matrix(small);
  const Sector& e = small.sectors()[small.sector_of(small.group().host()->identity())];
  for (std::size_t a = 0; a < small.total_dim(); ++a)
    for (std::size_t b = 0; b < small.total_dim(); ++b) {
      const auto& ca = small.classes()[a];
      const auto& cb = small.classes()[b];
      if (small.sectors()[ca.sector].g.is_identity() && small.sectors()[cb.sector].g.is_identity())
        CHECK(m(a, b) == e.ring->basis_pairing(e.invariants[ca.invariant].basis_index, e.invariants[cb.invariant].basis_index));
    }
}

TEST_CASE("state space invariants over a sweep") {
  for (const auto& p : sweep_polys()) {
    auto g = make_group(p);
    ChargeVector q = charges(p);
    for (const auto& sub : enumerate_subgroups(g, 200)) {
      StateSpace b = b_state_space(sub);
      // sectors g and g^{-1} have equal dimension
      std::map<std::size_t, std::size_t> per;
      for (const auto& c : b.classes()) ++per[c.sector];
      for (std::size_t i = 0; i < b.sectors().size(); ++i) {
        long inv = b.sector_of(inverse(b.sectors()[i].g));
        REQUIRE(inv >= 0);
        CHECK(per[i] == per[static_cast<std::size_t>(inv)]);
      }
      CHECK(pairing_rank(b) == b.total_dim());
      if (!admissibility(sub).a_admissible) continue;

      StateSpace a = a_state_space(sub);
      CHECK(a.total_dim() == b.total_dim());
      CHECK(pairing_rank(a) == a.total_dim());
      for (const auto& c : a.classes()) {
        const Sector& s = a.sectors()[c.sector];
        CHECK(c.total_degree() == Rational(static_cast<long>(s.n_fixed())) + 2 * s.age - 2 * q.sum());
      }
      RationalMatrix m = pairing_matrix(a);
      for (std::size_t x = 0; x < a.total_dim(); ++x)
        for (std::size_t y = 0; y < a.total_dim(); ++y)
          if (m(x, y) != 0) CHECK(a.classes()[x].total_degree() + a.classes()[y].total_degree() == 2 * q.central_charge);
      if (is_calabi_yau_type(sub)) {
        for (const auto& c : a.classes()) {
          CHECK(is_integer(c.bidegree.first));
          CHECK(is_integer(c.bidegree.second));
          CHECK(c.bidegree.first >= 0);
          CHECK(c.bidegree.second <= q.central_charge);
        }
        CHECK(mirror_check(sub).pass);
      }
      KrawitzReport k = krawitz_compare(sub);
      CHECK(k.pass);
    }
  }
}

TEST_CASE("explicit Krawitz map for Fermat sums") {
  std::vector<InvertiblePolynomial> fermats = {p8(), direct_sum({fermat(3), fermat(3)}), direct_sum({fermat(2), fermat(4), fermat(4)})};
  for (const auto& p : fermats) {
    auto g = make_group(p);
    auto gt = make_group(transpose(p));
    for (const auto& sub : enumerate_subgroups(g, 200)) {
      if (!admissibility(sub).a_admissible) continue;
      StateSpace a = a_state_space(sub);
      StateSpace b = b_state_space(dual_group(sub, gt));
      std::vector<std::size_t> map = krawitz_fermat_map(a, b);
      std::set<std::size_t> image(map.begin(), map.end());
      CHECK(image.size() == a.total_dim());
      CHECK(b.total_dim() == a.total_dim());
      for (std::size_t i = 0; i < map.size(); ++i) CHECK(a.classes()[i].bidegree == b.classes()[map[i]].bidegree);
    }
  }
  auto g = make_group(quintic());
  StateSpace a = a_state_space(j_subgroup(g));
  StateSpace b = b_state_space(sl_subgroup(g));
  std::vector<std::size_t> map = krawitz_fermat_map(a, b);
  CHECK(std::set<std::size_t>(map.begin(), map.end()).size() == 208);
  CHECK_THROWS_AS(krawitz_fermat_map(a_state_space(j_subgroup(make_group(chain_quintic()))), b), InvalidArgument);
}
