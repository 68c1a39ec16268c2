#include "wkit/scalar.hpp"

#include <catch_amalgamated.hpp>

#include <boost/rational.hpp>
#include <random>

using namespace wkit;

namespace {

// Evaluation at kappa = 2 in Q(i), with boost::rational as an independent backend.
struct Ev {
  boost::rational<long long> re, im;
  friend bool operator==(const Ev&, const Ev&) = default;
  friend Ev operator+(Ev a, Ev b) { return {a.re + b.re, a.im + b.im}; }
  friend Ev operator*(Ev a, Ev b) { return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re}; }
};

Ev eval(const SuperScalar& s) {
  Ev out{0, 0};
  for (const auto& [e, c] : s.terms()) {
    boost::rational<long long> p = 1;
    for (int t = 0; t < std::abs(e); ++t) p *= 2;
    if (e < 0) p = 1 / p;
    out = out + Ev{boost::rational<long long>(c.re.num(), c.re.den()) * p, boost::rational<long long>(c.im.num(), c.im.den()) * p};
  }
  return out;
}

SuperScalar random_scalar(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> coef(-4, 4), expo(-3, 3), den(1, 3), len(0, 3);
  SuperScalar s;
  for (int t = len(rng); t > 0; --t)
    s += SuperScalar::monomial(GaussianRational(Rational(coef(rng), den(rng)), Rational(coef(rng), den(rng))), expo(rng));
  return s;
}

}  // namespace

TEST_CASE("monomial arithmetic", "[scalar]") {
  CHECK(SuperScalar::kappa(2) * SuperScalar::kappa(3) == SuperScalar::kappa(5));
  CHECK(SuperScalar::i() * SuperScalar::i() == SuperScalar(-1));
  const auto x = SuperScalar::i() * SuperScalar::kappa(-1);
  CHECK(x * x == -SuperScalar::k(-1));
  CHECK(SuperScalar::k(3) == SuperScalar::kappa(6));
}

TEST_CASE("square-root branches", "[scalar]") {
  const auto c = sqrt_constants();
  CHECK(c.sqrt_minus_inv_k * c.sqrt_minus_inv_k == -SuperScalar::k(-1));
  CHECK(c.sqrt_inv_k * c.sqrt_inv_k == SuperScalar::k(-1));
  CHECK(c.sqrt_minus_one * c.sqrt_minus_one == SuperScalar(-1));
}

TEST_CASE("inverse of units", "[scalar]") {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 200; ++t) {
    SuperScalar m = SuperScalar::monomial(GaussianRational(Rational(int(rng() % 7) - 3, 1 + int(rng() % 4)),
                                                           Rational(int(rng() % 5) - 2, 1 + int(rng() % 3))),
                                          int(rng() % 9) - 4);
    if (m.is_zero()) continue;
    CHECK(m * m.inv_unit() == SuperScalar(1));
    CHECK(scalar_arith(ScalarOp::Mul, m, scalar_arith(ScalarOp::InvUnit, m)) == SuperScalar(1));
  }
  CHECK_THROWS_AS((SuperScalar(1) + SuperScalar::k()).inv_unit(), NonInvertible);
  CHECK_THROWS_AS(SuperScalar().inv_unit(), NonInvertible);
}

TEST_CASE("ring axioms on random scalars", "[scalar][property]") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 300; ++t) {
    const auto a = random_scalar(rng), b = random_scalar(rng), c = random_scalar(rng);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a + b == b + a);
    CHECK(a * b == b * a);
    CHECK(a - a == SuperScalar());
    // Evaluation at kappa = 2 is a ring homomorphism.
    CHECK(eval(a * b) == eval(a) * eval(b));
    CHECK(eval(a + b) == eval(a) + eval(b));
  }
}

TEST_CASE("text form", "[scalar]") {
  CHECK((SuperScalar(2) * SuperScalar::k(3)).str() == "2*κ^6");
  std::mt19937_64 rng(3);
  for (int t = 0; t < 100; ++t) {
    const auto a = random_scalar(rng);
    CHECK(SuperScalar::parse(a.str()) == a);
  }
}

TEST_CASE("overflow is reported", "[scalar]") {
  Rational big(std::int64_t(1) << 62);
  CHECK_THROWS_AS(big * big, ArithmeticOverflow);
}
