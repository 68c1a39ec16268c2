#include "wkit/liesuper.hpp"

#include <catch_amalgamated.hpp>

#include <random>

using namespace wkit;

namespace {

// Super commutator from plain matrix products, for homogeneous x and y.
LieElement commutator(const LieElement& x, const LieElement& y) {
  const int s = (*x.parity() * *y.parity()) % 2 ? -1 : 1;
  return matmul(x, y) - Rational(s) * matmul(y, x);
}

std::vector<LieElement> homogeneous_basis(const LieData& d) {
  std::vector<LieElement> out;
  for (std::size_t c = 0; c < d.basis.size(); ++c) out.push_back(d.basis.v_flat(c));
  return out;
}

}  // namespace

TEST_CASE("dimensions", "[liesuper]") {
  for (int n = 1; n <= 4; ++n) {
    auto d = build_lie_data(n);
    CHECK(d->g->dimension() == (2 * n + 1) * (2 * n + 1) - 1);
    CHECK(d->basis.size() == std::size_t(d->g->dimension()));
  }
  CHECK_THROWS_AS(build_lie_data(0), InvalidRank);
}

TEST_CASE("embedding relations at n = 1", "[liesuper]") {
  auto d = build_lie_data(1);
  const auto& m = d->emb;
  CHECK(super_bracket(m.e, m.f) == Rational(-2) * m.H);
  CHECK(super_bracket(m.ft, m.ft) == Rational(2) * m.F);
  CHECK(super_bracket(m.f, m.ft).is_zero());
  CHECK(super_bracket(m.e, m.ft) == m.U);
  CHECK(super_bracket(m.et, m.ft) == Rational(-2) * m.H);
  CHECK(super_bracket(m.et, -m.ft) == d->basis.v(2, 2));
  CHECK(*grading(m.E) == 2);
  CHECK(*grading(m.F) == -2);
  CHECK(*m.ft.parity() == 1);
  CHECK(*m.U.parity() == 0);
}

TEST_CASE("bracket agrees with matrix commutator", "[liesuper][property]") {
  for (int n = 1; n <= 2; ++n) {
    auto d = build_lie_data(n);
    auto b = homogeneous_basis(*d);
    for (const auto& x : b)
      for (const auto& y : b) CHECK(super_bracket(x, y) == commutator(x, y));
  }
}

TEST_CASE("super Jacobi and invariance on basis triples", "[liesuper][property]") {
  auto d = build_lie_data(2);
  auto b = homogeneous_basis(*d);
  std::mt19937_64 rng(17);
  for (int t = 0; t < 400; ++t) {
    const auto& x = b[rng() % b.size()];
    const auto& y = b[rng() % b.size()];
    const auto& z = b[rng() % b.size()];
    const int px = *x.parity(), py = *y.parity();
    const Rational s(px * py % 2 ? -1 : 1);
    // [x,[y,z]] = [[x,y],z] + (-1)^{p(x)p(y)} [y,[x,z]]
    CHECK(super_bracket(x, super_bracket(y, z)) ==
          super_bracket(super_bracket(x, y), z) + s * super_bracket(y, super_bracket(x, z)));
    CHECK(d->form(super_bracket(x, y), z) == d->form(x, super_bracket(y, z)));
    if (px == 0 || py == 0) CHECK(d->form(x, y) == d->form(y, x));
  }
}

TEST_CASE("grading and parity of the module basis", "[liesuper]") {
  auto d = build_lie_data(3);
  const auto& mb = d->basis;
  for (const auto& [i, m] : mb.indices()) {
    const auto& x = mb.v(i, m);
    REQUIRE_FALSE(x.is_zero());
    CHECK(*x.parity() == ModuleBasis::parity(i, m));
    CHECK(*x.grade2() == ModuleBasis::grade2(i, m));
    for (const auto& [j, l] : mb.indices())
      CHECK(d->form(mb.v(j, l), mb.vt(i, m)) == Rational(i == j && m == l ? 1 : 0));
  }
}

TEST_CASE("sharp projection is idempotent", "[liesuper]") {
  auto d = build_lie_data(2);
  std::mt19937_64 rng(23);
  for (int t = 0; t < 30; ++t) {
    LieElement x = d->g->zero();
    for (std::size_t c = 0; c < d->basis.size(); ++c)
      if (rng() % 3 == 0) x = x + Rational(int(rng() % 5) - 2) * d->basis.v_flat(c);
    CHECK(sharp(*d, sharp(*d, x)) == sharp(*d, x));
    CHECK(d->basis.from_coords(d->basis.coords(x)) == x);
  }
}

TEST_CASE("decomposition checks", "[liesuper]") {
  for (int n = 1; n <= 4; ++n) {
    auto rep = verify_section2(*build_lie_data(n));
    for (const auto& c : rep.checks) {
      INFO("n=" << n << " " << c.name << " " << c.detail);
      CHECK(c.ok);
    }
  }
}

TEST_CASE("identity suite: only the odd lowest-vector e~ rule fails", "[liesuper]") {
  for (int n = 1; n <= 3; ++n) {
    auto rep = lie_identity_suite(*build_lie_data(n));
    for (const auto& c : rep.checks) {
      INFO("n=" << n << " " << c.name << " " << c.detail);
      CHECK(c.ok == (c.name != "et_on_lowest_odd"));
    }
  }
}
