#include "wkit/freealg.hpp"

#include <catch_amalgamated.hpp>

#include <random>

using namespace wkit;

namespace {

// a even (weight 1), b odd (weight 3/2), c odd (weight 1/2), with structural D and D~.
ArenaPtr test_arena() {
  static ArenaPtr ar = Arena::make(ArenaKind::Custom, 0, 2, {"a", "b", "c"}, {0, 1, 1}, {2, 3, 1});
  return ar;
}

FieldPoly gen(std::uint32_t g, DerWord w = {}) { return FieldPoly::generator(test_arena(), g, w); }

FieldPoly random_monomial(std::mt19937_64& rng) {
  FieldPoly p = FieldPoly::constant(test_arena(), SuperScalar(int(rng() % 5) + 1));
  for (int t = int(rng() % 3); t > 0; --t)
    p = p * gen(std::uint32_t(rng() % 3), DerWord{int(rng() % 2), int(rng() % 2), int(rng() % 2)});
  return p;
}

FieldPoly random_homogeneous(std::mt19937_64& rng, int parity) {
  FieldPoly p(test_arena());
  for (int t = 0; t < 6; ++t) {
    FieldPoly m = random_monomial(rng);
    if (*m.parity() == parity) p += m;
  }
  return p;
}

const Derivation d = Derivation::partial();
const Derivation D = Derivation::structural_d();
const Derivation Dt = Derivation::structural_dt();

}  // namespace

TEST_CASE("Koszul signs", "[freealg]") {
  const auto a = gen(0), b = gen(1), c = gen(2);
  CHECK(b * c == -(c * b));
  CHECK(a * b == b * a);
  CHECK((b * b).is_zero());
  CHECK(gen(1, {0, 1, 0}) * b == b * gen(1, {0, 1, 0}));  // D b is even
  CHECK((b * c * b).is_zero());
  CHECK(c * b * gen(1, {1, 0, 0}) == -(gen(1, {1, 0, 0}) * b * c));
}

TEST_CASE("derivation relations", "[freealg][property]") {
  std::mt19937_64 rng(29);
  for (int t = 0; t < 200; ++t) {
    const auto x = random_homogeneous(rng, int(rng() % 2));
    CHECK(D.apply(D.apply(x)) == d.apply(x));
    CHECK(Dt.apply(Dt.apply(x)) == d.apply(x));
    CHECK(D.apply(Dt.apply(x)) == -Dt.apply(D.apply(x)));
    CHECK(D.apply(d.apply(x)) == d.apply(D.apply(x)));
  }
}

TEST_CASE("Leibniz rule with signs", "[freealg][property]") {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 200; ++t) {
    const int px = int(rng() % 2);
    const auto x = random_homogeneous(rng, px), y = random_homogeneous(rng, int(rng() % 2));
    const SuperScalar s(px ? -1 : 1);
    CHECK(D.apply(x * y) == D.apply(x) * y + s * (x * D.apply(y)));
    CHECK(Dt.apply(x * y) == Dt.apply(x) * y + s * (x * Dt.apply(y)));
    CHECK(d.apply(x * y) == d.apply(x) * y + x * d.apply(y));
  }
}

TEST_CASE("supercommutativity and associativity", "[freealg][property]") {
  std::mt19937_64 rng(37);
  for (int t = 0; t < 200; ++t) {
    const int px = int(rng() % 2), py = int(rng() % 2);
    const auto x = random_homogeneous(rng, px), y = random_homogeneous(rng, py), z = random_monomial(rng);
    CHECK(x * y == SuperScalar(px * py ? -1 : 1) * (y * x));
    CHECK((x * y) * z == x * (y * z));
  }
}

TEST_CASE("conformal weights", "[freealg]") {
  CHECK(*gen(0).weight2() == 2);
  CHECK(*D.apply(gen(0)).weight2() == 3);
  CHECK(*d.apply(gen(2)).weight2() == 3);
  CHECK(*(gen(1) * gen(2)).weight2() == 4);
  CHECK_FALSE((gen(0) + gen(1)).weight2());
  CHECK(*(gen(1) * gen(0)).parity() == 1);
}

TEST_CASE("table derivations", "[freealg][property]") {
  const Derivation T = Derivation::table({gen(1) * gen(0), FieldPoly(test_arena()), gen(1) * gen(2)});
  CHECK(T.apply(gen(0)) == gen(0) * gen(1));
  CHECK(T.apply(gen(1)).is_zero());
  std::mt19937_64 rng(41);
  for (int t = 0; t < 100; ++t) {
    const int px = int(rng() % 2);
    const auto x = random_homogeneous(rng, px), y = random_homogeneous(rng, int(rng() % 2));
    CHECK(T.apply(D.apply(x)) == -D.apply(T.apply(x)));
    CHECK(T.apply(Dt.apply(x)) == -Dt.apply(T.apply(x)));
    CHECK(T.apply(d.apply(x)) == d.apply(T.apply(x)));
    CHECK(T.apply(x * y) == T.apply(x) * y + SuperScalar(px ? -1 : 1) * (x * T.apply(y)));
  }
}

TEST_CASE("missing derivations are reported", "[freealg]") {
  auto bare = Arena::make(ArenaKind::Custom, 0, 0, {"x"}, {0}, {2});
  const auto x = FieldPoly::generator(bare, 0);
  CHECK_THROWS_AS(D.apply(x), MissingDerivation);
  CHECK_THROWS_AS(DerivationSet::structural(*bare).get(Der::D), MissingDerivation);
  CHECK_THROWS_AS(LambdaPoly::from(x, 1, 0, 2), TupleMismatch);
}

TEST_CASE("lambda module", "[freealg]") {
  const auto ar = test_arena();
  const DerivationSet ds = DerivationSet::structural(*ar);
  const LambdaPoly one = LambdaPoly::unit(ar, 2);
  const FieldPoly unit = FieldPoly::constant(ar, 1);

  // (D + chi)^3 1 = lambda chi
  LambdaPoly x = one;
  for (int t = 0; t < 3; ++t) x = d_plus_var(ds, Der::D, x);
  CHECK(x == LambdaPoly::from(unit, 2, 1, 1));

  // chi^2 = -lambda, chi~^2 = -lambda, chi chi~ = -chi~ chi
  const auto chi = LambdaPoly::from(unit, 2, 0, 1), chit = LambdaPoly::from(unit, 2, 0, 2);
  CHECK(mul_lambda(chi, chi) == -LambdaPoly::from(unit, 2, 1, 0));
  CHECK(mul_lambda(chit, chit) == -LambdaPoly::from(unit, 2, 1, 0));
  CHECK(mul_lambda(chi, chit) == -mul_lambda(chit, chi));

  // odd fields anticommute with odd variables
  CHECK(gen(1) * chi == -(chi * gen(1)));
  CHECK(gen(0) * chi == chi * gen(0));

  // (D + chi)(D~ + chi~) = -(D~ + chi~)(D + chi) on the module
  std::mt19937_64 rng(43);
  for (int t = 0; t < 50; ++t) {
    const LambdaPoly y = LambdaPoly::from(random_monomial(rng), 2, int(rng() % 2), int(rng() % 4));
    CHECK(d_plus_var(ds, Der::D, d_plus_var(ds, Der::Dt, y)) == -d_plus_var(ds, Der::Dt, d_plus_var(ds, Der::D, y)));
    CHECK(d_plus_var(ds, Der::D, d_plus_var(ds, Der::D, y)) == d_plus_var(ds, Der::Partial, y));
  }
}
