#include <algorithm>
#include <random>

#include "doctest.h"
#include "lgmirror/polynomial.hpp"

using namespace lgm;

namespace {

InvertiblePolynomial quintic() { return direct_sum({fermat(5), fermat(5), fermat(5), fermat(5), fermat(5)}); }
InvertiblePolynomial chain_quintic() { return chain({4, 4, 4, 4, 5}); }

InvertiblePolynomial permuted(const InvertiblePolynomial& p, const std::vector<int>& rows, const std::vector<int>& cols) {
  const std::size_t n = p.n_vars();
  std::vector<std::vector<int>> e(n, std::vector<int>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) e[i][j] = p.exponent(rows[i], cols[j]);
  return InvertiblePolynomial(e);
}

std::vector<Atom> random_atoms(std::mt19937& rng, int vars, int max_exp) {
  std::uniform_int_distribution<int> ex(2, max_exp);
  std::vector<Atom> atoms;
  int left = vars;
  while (left > 0) {
    int len = std::uniform_int_distribution<int>(1, left)(rng);
    Atom a;
    if (len == 1) {
      a.kind = AtomKind::Fermat;
    } else {
      a.kind = std::uniform_int_distribution<int>(0, 1)(rng) ? AtomKind::Loop : AtomKind::Chain;
    }
    for (int i = 0; i < len; ++i) a.exponents.push_back(ex(rng));
    atoms.push_back(a);
    left -= len;
  }
  return atoms;
}

}  // namespace

TEST_CASE("charges of the standard examples") {
  ChargeVector q = charges(quintic());
  CHECK(q.charges == std::vector<Rational>(5, make_rational(1, 5)));
  CHECK(q.degree == 5);
  CHECK(q.weights == std::vector<Integer>(5, Integer(1)));
  CHECK(q.central_charge == 3);

  ChargeVector p8 = charges(direct_sum({fermat(3), fermat(3), fermat(3)}));
  CHECK(p8.charges == std::vector<Rational>(3, make_rational(1, 3)));
  CHECK(p8.central_charge == 1);

  // D4 = x^3 + x y^2; inverse of [[3,0],[1,2]] is [[1/3,0],[-1/6,1/2]]; row sums
  InvertiblePolynomial d4({{3, 0}, {1, 2}});
  ChargeVector qd = charges(d4);
  CHECK(qd.charges[0] == make_rational(1, 3) + 0);
  CHECK(qd.charges[1] == make_rational(-1, 6) + make_rational(1, 2));
}

TEST_CASE("charge errors") {
  CHECK_THROWS_AS(InvertiblePolynomial({{1, 1}, {2, 2}}), SingularMatrix);
  // x*y^2 + y forces q_y = 1
  CHECK_THROWS_AS(charges(InvertiblePolynomial({{1, 2}, {0, 1}})), ChargeOutOfRange);
  CHECK_THROWS_AS(InvertiblePolynomial({{1, 2, 3}, {1, 2}}), NotSquare);
}

TEST_CASE("chain charges follow the back-substitution recurrence") {
  std::mt19937 rng(5);
  for (int t = 0; t < 60; ++t) {
    int len = 1 + t % 5;
    std::vector<int> a;
    for (int i = 0; i < len; ++i) a.push_back(std::uniform_int_distribution<int>(2, 7)(rng));
    ChargeVector q = charges(chain(a));
    Rational expect = make_rational(1, a.back());
    CHECK(q.charges.back() == expect);
    for (int i = len - 2; i >= 0; --i) {
      expect = (1 - expect) / a[i];
      CHECK(q.charges[i] == expect);
    }
  }
  // two-variable loop: q_x = (b-1)/(ab-1), q_y = (a-1)/(ab-1)
  for (int a = 2; a <= 6; ++a)
    for (int b = 2; b <= 6; ++b) {
      ChargeVector q = charges(loop({a, b}));
      CHECK(q.charges[0] == make_rational(b - 1, a * b - 1));
      CHECK(q.charges[1] == make_rational(a - 1, a * b - 1));
    }
}

TEST_CASE("decompose recognises the three atom types") {
  AtomDecomposition dq = decompose(quintic());
  CHECK(dq.atoms.size() == 5);
  for (const auto& a : dq.atoms) {
    CHECK(a.kind == AtomKind::Fermat);
    CHECK(a.exponents == std::vector<int>{5});
  }
  AtomDecomposition dc = decompose(chain_quintic());
  REQUIRE(dc.atoms.size() == 1);
  CHECK(dc.atoms[0].kind == AtomKind::Chain);
  CHECK(dc.atoms[0].exponents == std::vector<int>{4, 4, 4, 4, 5});
  AtomDecomposition dl = decompose(InvertiblePolynomial({{3, 1}, {1, 3}}));
  REQUIRE(dl.atoms.size() == 1);
  CHECK(dl.atoms[0].kind == AtomKind::Loop);
  CHECK(dl.atoms[0].exponents == std::vector<int>{3, 3});
  CHECK(dc.canonical_id() == "Chain(4,4,4,4,5)");
}

TEST_CASE("decompose rejects non Kreuzer-Skarke shapes") {
  // x^2 z + y^2 z + z^3: z is linear in two monomials
  CHECK_THROWS_AS(decompose(InvertiblePolynomial({{2, 0, 1}, {0, 2, 1}, {0, 0, 3}})), NotInvertibleType);
  // x*y + y^2: exponent-1 boundary
  CHECK_THROWS_AS(decompose(InvertiblePolynomial({{1, 1}, {0, 2}})), NotInvertibleType);
  // x^2 y^2 + ...
  CHECK_THROWS_AS(decompose(InvertiblePolynomial({{2, 2}, {0, 3}})), NotInvertibleType);
  // three-variable monomial
  CHECK_THROWS_AS(decompose(InvertiblePolynomial({{2, 1, 1}, {0, 3, 0}, {0, 0, 3}})), NotInvertibleType);
}

TEST_CASE("canonical id is permutation invariant and round trips through atoms") {
  std::mt19937 rng(9);
  for (int t = 0; t < 100; ++t) {
    std::vector<Atom> atoms = random_atoms(rng, 1 + t % 5, 6);
    InvertiblePolynomial p = from_atoms(atoms);
    AtomDecomposition d = decompose(p);
    std::vector<int> rows(p.n_vars()), cols(p.n_vars());
    for (std::size_t i = 0; i < p.n_vars(); ++i) rows[i] = cols[i] = static_cast<int>(i);
    std::shuffle(rows.begin(), rows.end(), rng);
    std::shuffle(cols.begin(), cols.end(), rng);
    InvertiblePolynomial q = permuted(p, rows, cols);
    AtomDecomposition dq = decompose(q);
    CHECK(d.canonical_id() == dq.canonical_id());
    // reassembled atoms, conjugated by the permutation, give back q
    InvertiblePolynomial back = from_atoms(dq.atoms);
    const std::size_t n = q.n_vars();
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        int want = back.exponent(a, b);
        // row of q whose leading variable is permutation[a]
        int row = -1;
        for (std::size_t r = 0; r < n; ++r) {
          int v = dq.permutation[a];
          bool leads = q.exponent(r, v) >= 2;
          if (leads) row = static_cast<int>(r);
        }
        REQUIRE(row >= 0);
        CHECK(q.exponent(row, dq.permutation[b]) == want);
      }
  }
}

TEST_CASE("transpose") {
  CHECK(transpose(quintic()) == quintic());
  InvertiblePolynomial t = transpose(chain_quintic());
  ChargeVector q = charges(t);
  CHECK(q.degree == 256);
  CHECK(q.weights == std::vector<Integer>{64, 48, 52, 51, 41});
  CHECK(t.to_dsl() == "x1^4 + x1*x2^4 + x2*x3^4 + x3*x4^4 + x4*x5^5");
  CHECK(decompose(transpose(loop({3, 3}))).canonical_id() == "Loop(3,3)");

  std::mt19937 rng(13);
  for (int k = 0; k < 100; ++k) {
    InvertiblePolynomial p = from_atoms(random_atoms(rng, 1 + k % 5, 6));
    InvertiblePolynomial tp = transpose(p);
    CHECK(transpose(tp) == p);
    CHECK(charges(p).sum() == charges(tp).sum());
    ChargeVector cv = charges(p);
    std::vector<Rational> ones = to_rational(p.exponent_matrix()) * cv.charges;
    CHECK(std::all_of(ones.begin(), ones.end(), [](const Rational& x) { return x == 1; }));
    Rational chat = 0;
    for (const auto& x : cv.charges) chat += 1 - 2 * x;
    CHECK(chat == cv.central_charge);
  }
}

TEST_CASE("predicates") {
  Predicates pq = predicates(quintic());
  CHECK(pq.is_calabi_yau);
  CHECK(pq.is_gorenstein);
  CHECK(pq.milnor_number == 1024);
  Predicates pt = predicates(transpose(chain_quintic()));
  CHECK(pt.is_calabi_yau);
  CHECK_FALSE(pt.is_gorenstein);
  Predicates pd = predicates(InvertiblePolynomial({{3, 0}, {1, 2}}));
  CHECK_FALSE(pd.is_calabi_yau);
  CHECK(pd.milnor_number == 4);
  CHECK_THROWS_AS(milnor_number({make_rational(2, 5)}), NonIntegerMilnor);
}

TEST_CASE("atom Milnor numbers match closed forms") {
  for (int a = 2; a <= 8; ++a) CHECK(predicates(fermat(a)).milnor_number == a - 1);
  std::mt19937 rng(17);
  for (int t = 0; t < 40; ++t) {
    std::vector<int> a;
    for (int i = 0; i < 2 + t % 3; ++i) a.push_back(std::uniform_int_distribution<int>(2, 6)(rng));
    Integer prod = 1;
    for (int x : a) prod *= x;
    CHECK(predicates(loop(a)).milnor_number == prod);
  }
}
