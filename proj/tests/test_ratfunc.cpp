#include "wkit/linalg.hpp"
#include "wkit/ratfunc.hpp"

#include <catch_amalgamated.hpp>

#include <random>

using namespace wkit;

namespace {

KPoly poly(std::initializer_list<int> cs) {
  KPoly p;
  int e = 0;
  for (int c : cs) p = p + KPoly::monomial(GaussianRational(c), e++);
  return p;
}

KPoly random_poly(std::mt19937_64& rng, int max_deg) {
  KPoly p;
  for (int e = 0; e <= int(rng() % std::uint64_t(max_deg + 1)); ++e)
    p = p + KPoly::monomial(GaussianRational(Rational(int(rng() % 7) - 3), Rational(int(rng() % 3) - 1)), e);
  return p;
}

}  // namespace

TEST_CASE("polynomial division", "[ratfunc]") {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 100; ++t) {
    KPoly a = random_poly(rng, 5), b = random_poly(rng, 3);
    if (b.is_zero()) continue;
    auto [q, r] = KPoly::divmod(a, b);
    CHECK(q * b + r == a);
    CHECK((r.is_zero() || r.degree() < b.degree()));
  }
  CHECK_THROWS_AS(KPoly::divmod(poly({1}), KPoly()), NonInvertible);
}

TEST_CASE("gcd is monic and divides both", "[ratfunc]") {
  KPoly a = poly({-1, 0, 1}), b = poly({1, 2, 1});  // (k-1)(k+1), (k+1)^2
  KPoly g = KPoly::gcd(a, b);
  CHECK(g == poly({1, 1}));
  CHECK(KPoly::divmod(a, g).second.is_zero());
  CHECK(KPoly::divmod(b, g).second.is_zero());
}

TEST_CASE("fractions reduce", "[ratfunc]") {
  RatFunc x(poly({-1, 0, 1}), poly({2, 2}));
  CHECK(x.num() == GaussianRational(Rational(1, 2)) * poly({-1, 1}));
  CHECK(x.den() == poly({1}));
  CHECK(x / x == RatFunc(1));
  CHECK_THROWS_AS(RatFunc(1) / RatFunc(), NonInvertible);
}

TEST_CASE("field axioms on random fractions", "[ratfunc][property]") {
  std::mt19937_64 rng(9);
  for (int t = 0; t < 60; ++t) {
    KPoly d1 = random_poly(rng, 1), d2 = random_poly(rng, 1);
    if (d1.is_zero() || d2.is_zero()) continue;
    RatFunc a(random_poly(rng, 2), d1), b(random_poly(rng, 2), d2);
    CHECK(a + b == b + a);
    CHECK(a * b == b * a);
    CHECK((a + b) - b == a);
    if (!b.is_zero()) CHECK((a / b) * b == a);
  }
}

TEST_CASE("scalar round trip", "[ratfunc]") {
  const SuperScalar s = SuperScalar(3) * SuperScalar::k(-2) - SuperScalar::i() * SuperScalar::k(1) + SuperScalar(Rational(1, 2));
  RatFunc r = RatFunc::from_scalar(s);
  REQUIRE(r.to_scalar());
  CHECK(*r.to_scalar() == s);
  CHECK_THROWS_AS(RatFunc::from_scalar(SuperScalar::kappa(1)), std::domain_error);
  CHECK_FALSE(RatFunc(poly({1}), poly({1, 1})).to_scalar());
}

TEST_CASE("exact linear solve", "[linalg]") {
  linalg::Matrix<RatFunc> m{{RatFunc(poly({0, 1})), RatFunc(1)}, {RatFunc(1), RatFunc(poly({0, 1}))}};
  auto inv = linalg::inverse(m);
  REQUIRE(inv);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      RatFunc s;
      for (int l = 0; l < 2; ++l) s = s + m[i][l] * (*inv)[l][j];
      CHECK(s == RatFunc(i == j ? 1 : 0));
    }
  linalg::Matrix<RatFunc> sing{{RatFunc(1), RatFunc(2)}, {RatFunc(2), RatFunc(4)}};
  CHECK_FALSE(linalg::inverse(sing));
  CHECK(linalg::rank(sing) == 1);
}
