#include <random>

#include "doctest.h"
#include "lgmirror/frobenius.hpp"

using namespace lgm;

namespace {

InvertiblePolynomial quintic() { return direct_sum({fermat(5), fermat(5), fermat(5), fermat(5), fermat(5)}); }

std::vector<InvertiblePolynomial> sweep_polys() {
  return {fermat(4),
          direct_sum({fermat(3), fermat(3)}),
          InvertiblePolynomial({{3, 0}, {1, 2}}),
          loop({3, 3}),
          loop({2, 4}),
          chain({2, 3}),
          chain({3, 3}),
          chain({2, 4}),
          direct_sum({fermat(3), fermat(3), fermat(3)}),
          direct_sum({chain({2, 2}), fermat(4)}),
          loop({2, 2, 2}),
          chain({2, 2, 3}),
          chain({3, 2, 2}),
          direct_sum({fermat(2), fermat(4), fermat(4)})};
}

}  // namespace

TEST_CASE("gamma values on the quintic") {
  auto g = make_group(quintic());
  FrobeniusAlgebra a(j_subgroup(g));
  const StateSpace& s = a.space();
  std::size_t e = s.sector_of(g->identity());
  for (std::size_t t = 0; t < a.sector_count(); ++t) {
    Gamma gm = a.gamma(e, t);
    CHECK_FALSE(gm.zero);
    CHECK(gm.scalar == 1);
    CHECK(gm.cls == poly_from_monomial(Monomial(5, 0)));
  }
  SymmetryElement j = g->j_element();
  std::size_t sj = s.sector_of(j), sj4 = s.sector_of(power(j, 4)), sj2 = s.sector_of(power(j, 2));
  // no coordinate is fixed by j, j or j^2
  CHECK(a.gamma(sj, sj).zero);
  CHECK(a.gamma(sj, sj2).zero);
  // j and j^{-1}: empty intersection, hess(W|empty) = 1 and mu = 1, so gamma = hess(W)/mu(W)
  Gamma inv = a.gamma(sj, sj4);
  REQUIRE_FALSE(inv.zero);
  CHECK(inv.scalar == 1);
  CHECK(inv.support.size() == 5);
  const GradedMilnorRing& full = *s.sectors()[e].ring;
  CHECK(full.residue_pairing(poly_from_monomial(Monomial(5, 0)), inv.cls) == 1);
  // hence 1_j * 1_{j^4} pairs with 1_e to <1_j, 1_{j^4}> = 1
  auto prod = a.multiply(a.unit(sj), a.unit(sj4));
  CHECK(a.pairing(prod, a.identity()) == 1);
  CHECK(a.pairing(a.unit(sj), a.unit(sj4)) == 1);
}

TEST_CASE("unit law") {
  for (const auto& p : sweep_polys()) {
    auto g = make_group(p);
    for (const auto& sub : enumerate_subgroups(g, 60)) {
      FrobeniusAlgebra a(sub);
      auto one = a.identity();
      for (const auto& c : a.space().classes()) {
        auto x = a.class_element(c);
        CHECK(equal(a.multiply(one, x), x));
        CHECK(equal(a.multiply(x, one), x));
      }
    }
  }
}

TEST_CASE("x^3 + y^3 with SL: every triple of sector units associates") {
  auto g = make_group(direct_sum({fermat(3), fermat(3)}));
  FrobeniusAlgebra a(sl_subgroup(g));
  CHECK(a.sector_count() == 3);
  for (std::size_t x = 0; x < 3; ++x)
    for (std::size_t y = 0; y < 3; ++y)
      for (std::size_t z = 0; z < 3; ++z) {
        auto l = a.multiply(a.multiply(a.unit(x), a.unit(y)), a.unit(z));
        auto r = a.multiply(a.unit(x), a.multiply(a.unit(y), a.unit(z)));
        CHECK(equal(l, r));
      }
}

TEST_CASE("associativity, grading and Frobenius compatibility over the sweep") {
  std::mt19937 rng(37);
  int algebras = 0;
  for (const auto& p : sweep_polys()) {
    auto g = make_group(p);
    for (const auto& sub : enumerate_subgroups(g, 60)) {
      if (!admissibility(sub).b_admissible) continue;
      ++algebras;
      FrobeniusAlgebra a(sub);
      const std::size_t n = a.sector_count();
      for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
          auto xy = a.multiply(a.unit(x), a.unit(y));
          for (std::size_t z = 0; z < n; ++z) {
            auto l = a.multiply(xy, a.unit(z));
            auto r = a.multiply(a.unit(x), a.multiply(a.unit(y), a.unit(z)));
            CHECK(equal(l, r));
          }
        }
      const auto& cls = a.space().classes();
      if (cls.empty()) continue;
      std::uniform_int_distribution<std::size_t> pick(0, cls.size() - 1);
      for (int k = 0; k < 30; ++k) {
        auto u = a.class_element(cls[pick(rng)]);
        auto v = a.class_element(cls[pick(rng)]);
        auto w = a.class_element(cls[pick(rng)]);
        auto uv = a.multiply(u, v);
        if (!is_zero(uv)) {
          auto bu = a.bidegree(u), bv = a.bidegree(v), buv = a.bidegree(uv);
          REQUIRE(buv);
          CHECK(buv->first == bu->first + bv->first);
          CHECK(buv->second == bu->second + bv->second);
        }
        CHECK(equal(a.multiply(uv, w), a.multiply(u, a.multiply(v, w))));
        CHECK(a.pairing(uv, w) == a.pairing(u, a.multiply(v, w)));
      }
    }
  }
  CHECK(algebras > 20);
}

TEST_CASE("products of invariant classes stay invariant") {
  auto g = make_group(direct_sum({fermat(3), fermat(3), fermat(3)}));
  FrobeniusAlgebra a(sl_subgroup(g));
  const auto& cls = a.space().classes();
  for (const auto& x : cls)
    for (const auto& y : cls) {
      auto prod = a.multiply(a.class_element(x), a.class_element(y));
      for (const auto& [s, c] : prod) {
        const Sector& sec = a.space().sectors()[s];
        for (std::size_t i = 0; i < c.size(); ++i) {
          if (c[i] == 0) continue;
          bool listed = false;
          for (const auto& inv : sec.invariants) listed = listed || inv.basis_index == i;
          CHECK(listed);
        }
      }
    }
}

TEST_CASE("non-split chain sectors: exhaustive Frobenius compatibility") {
  // x1^3 x2 + x2^2 x3 + x3^2 with SL: Fix sets are tails, so W_K never splits
  auto g = make_group(chain({3, 2, 2}));
  FrobeniusAlgebra a(sl_subgroup(g));
  bool nontrivial = false;
  for (const auto& [s, t, gm] : a.structure_constants())
    if (!gm.zero && gm.scalar != 1) nontrivial = true;
  CHECK(nontrivial);
  const auto& cls = a.space().classes();
  for (const auto& u : cls)
    for (const auto& v : cls)
      for (const auto& w : cls) {
        auto U = a.class_element(u), V = a.class_element(v), X = a.class_element(w);
        CHECK(a.pairing(a.multiply(U, V), X) == a.pairing(U, a.multiply(V, X)));
        CHECK(equal(a.multiply(a.multiply(U, V), X), a.multiply(U, a.multiply(V, X))));
      }
}
