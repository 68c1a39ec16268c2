#include "wkit/walgebra.hpp"

#include <catch_amalgamated.hpp>

#include <set>

using namespace wkit;

namespace {

std::set<std::string> failing(const SuiteReport& rep) {
  std::set<std::string> out;
  for (const auto& c : rep.checks)
    if (!c.ok) out.insert(c.name);
  return out;
}

LambdaPoly lam(const FieldPoly& c, int N, int m = 0, int sector = 0) { return LambdaPoly::from(c, N, m, sector); }

}  // namespace

TEST_CASE("generator alphabets", "[walgebra]") {
  for (int n = 1; n <= 3; ++n) {
    auto s = build_walgebra(Variant::Susy, n);
    auto ns = build_walgebra(Variant::NonSusy, n);
    CHECK(s->size() == std::uint32_t(2 * n));
    CHECK(ns->size() == std::uint32_t(4 * n));
    for (int i = 1; i <= 2 * n; ++i) {
      CHECK(s->weight(w_generator_index(Variant::Susy, i, 2 * i)) == Rational(i + 1, 2));
      CHECK(s->arena()->parity[std::size_t(i - 1)] == (i + 1) % 2);
      CHECK(ns->weight(w_generator_index(Variant::NonSusy, i, 2 * i - 1)) == Rational(i + 1, 2));
      CHECK(ns->weight(w_generator_index(Variant::NonSusy, i, 2 * i)) == Rational(i + 2, 2));
    }
    for (std::uint32_t g = 0; g < ns->size(); ++g) {
      auto t = w_generator_tag(Variant::NonSusy, g);
      CHECK(w_generator_index(Variant::NonSusy, t.i, t.m) == g);
    }
  }
  auto w = build_walgebra(Variant::Susy, 1);
  CHECK_THROWS_AS(w->gen(1, 1), NotLowestWeight);
  CHECK_THROWS_AS(w->element(w->lie().emb.e), NotLowestWeight);
  CHECK(build_walgebra(Variant::Susy, 2) == build_walgebra(Variant::Susy, 2));
}

TEST_CASE("SUSY n = 1 table", "[walgebra]") {
  auto w = build_walgebra(Variant::Susy, 1);
  const auto ar = w->arena();
  const FieldPoly w1 = w->gen(1, 2), w2 = w->gen(2, 4);
  const Derivation D = Derivation::structural_d(), d = Derivation::partial();
  const auto k2 = SuperScalar::k(2);
  CHECK((*w)(w1, w1) == lam(w2, 1) + lam(FieldPoly::constant(ar, SuperScalar(-2) * SuperScalar::k(3)), 1, 1, 1));
  CHECK((*w)(w2, w1) == k2 * (lam(SuperScalar(2) * d.apply(w1), 1) + lam(D.apply(w1), 1, 0, 1) + lam(SuperScalar(2) * w1, 1, 1)));
  CHECK((*w)(w2, w2) == k2 * (lam(SuperScalar(2) * d.apply(w2), 1) + lam(D.apply(w2), 1, 0, 1) +
                             lam(SuperScalar(3) * w2, 1, 1)) +
                            lam(FieldPoly::constant(ar, SuperScalar(-2) * SuperScalar::k(5)), 1, 2, 1));
  CHECK(w->structure_table()["brackets"].size() == 3);
  CHECK(w->structure_table()["skew_images"].size() == 1);
}

TEST_CASE("non-SUSY n = 1 table", "[walgebra]") {
  auto w = build_walgebra(Variant::NonSusy, 1);
  const auto ar = w->arena();
  const FieldPoly U = w->gen(1, 1), q12 = w->gen(1, 2), f = w->gen(2, 3), F = w->gen(2, 4);
  const Derivation d = Derivation::partial();
  auto k = [](int e) { return SuperScalar::k(e); };
  auto cst = [&](const SuperScalar& c) { return FieldPoly::constant(ar, c); };
  CHECK((*w)(U, U) == lam(cst(SuperScalar(-2) * k(1)), 0, 1));
  CHECK((*w)(q12, U) == lam(f, 0));
  CHECK((*w)(f, U) == lam(q12, 0));
  CHECK((*w)(F, U).is_zero());
  CHECK((*w)(f, q12) == k(1) * (lam(-d.apply(U), 0) + lam(SuperScalar(-2) * U, 0, 1)));
  CHECK((*w)(f, f) == lam(SuperScalar(Rational(1, 2)) * (U * U) + F, 0) + lam(cst(SuperScalar(2) * k(2)), 0, 2));
  CHECK((*w)(q12, q12) == lam(SuperScalar(Rational(-1, 2)) * (U * U) - F, 0) + lam(cst(SuperScalar(-2) * k(2)), 0, 2));
  CHECK((*w)(F, q12) == lam(U * f - SuperScalar(2) * k(1) * d.apply(q12), 0) + lam(SuperScalar(-3) * k(1) * q12, 0, 1));
  CHECK((*w)(F, f) == lam(U * q12 - SuperScalar(2) * k(1) * d.apply(f), 0) + lam(SuperScalar(-3) * k(1) * f, 0, 1));
  CHECK((*w)(F, F) == lam(SuperScalar(-2) * k(1) * d.apply(F), 0) + lam(SuperScalar(-4) * k(1) * F, 0, 1) +
                          lam(cst(SuperScalar(-2) * k(3)), 0, 3));
  CHECK(w->structure_table()["brackets"].size() == 10);
  CHECK(w->structure_table()["skew_images"].size() == 6);
}

TEST_CASE("master formula agrees with the sealed table", "[walgebra]") {
  for (auto v : {Variant::Susy, Variant::NonSusy}) {
    auto w = build_walgebra(v, 2);
    for (std::uint32_t g = 0; g < w->size(); ++g)
      for (std::uint32_t h = 0; h < w->size(); ++h) CHECK(w->master(w->tag(g), w->tag(h)) == (*w)(w->gen(g), w->gen(h)));
  }
}

TEST_CASE("Hamiltonian reduction oracle", "[walgebra][oracle]") {
  for (auto v : {Variant::Susy, Variant::NonSusy})
    for (int n = 1; n <= 2; ++n) {
      auto r = suite_oracle(v, n);
      CHECK(r.pairs == std::size_t(build_walgebra(v, n)->size()) * build_walgebra(v, n)->size());
      for (const auto& c : r.report.checks) {
        INFO(c.name << " " << c.detail);
        CHECK(c.ok);
      }
    }
}

TEST_CASE("axioms and grading of the W tables", "[walgebra]") {
  for (auto v : {Variant::Susy, Variant::NonSusy})
    for (int n = 1; n <= 3; ++n) {
      CHECK(suite_axioms(v, n, n == 1 ? 0 : 100, 3).ok());
      CHECK(suite_grading(v, n).ok());
    }
}

TEST_CASE("conformal weights of elements", "[walgebra]") {
  auto s = build_walgebra(Variant::Susy, 2);
  auto ns = build_walgebra(Variant::NonSusy, 2);
  CHECK(*conformal_weight(s->gen(2, 4)) == Rational(3, 2));
  CHECK(*conformal_weight(ns->gen(2, 4)) == Rational(2));
  const auto U = ns->gen(1, 1);
  CHECK(*conformal_weight(U * U) == Rational(2));
  CHECK_FALSE(conformal_weight(U + ns->gen(2, 4)));
  CHECK_FALSE(grading_violation((*ns)(ns->gen(4, 8), ns->gen(3, 5)), ns->arena()->weight2[7], ns->arena()->weight2[4]));
}

TEST_CASE("element parsing", "[walgebra]") {
  auto lie = build_lie_data(2);
  CHECK(parse_element(*lie, "ftilde") == lie->emb.ft);
  CHECK(parse_element(*lie, " U ") == lie->emb.U);
  CHECK(parse_element(*lie, "omega(2)") == lie->basis.v(2, 4));
  CHECK(parse_element(*lie, "nu(2,3)") == lie->basis.v(2, 3));
  CHECK(parse_element(*lie, "v:4,1") == lie->basis.v(4, 1));
  for (const char* bad : {"omega(2,3)", "v:9,0", "foo", "nu(a,1)", "v:1", "nu(1,3)", ""})
    CHECK_THROWS_AS(parse_element(*lie, bad), ElementParseError);
}

TEST_CASE("special elements", "[walgebra]") {
  for (auto v : {Variant::Susy, Variant::NonSusy}) {
    auto w = build_walgebra(v, 2);
    auto s = special_elements(*w);
    const int N = w->N();
    CHECK(*s.G.parity() == 1);
    CHECK(*s.J.parity() == 0);
    CHECK(w->N() == N);
    CHECK(*conformal_weight(s.L) == Rational(2));
  }
}

TEST_CASE("SUSY superconformal suite", "[walgebra]") {
  for (int n = 1; n <= 3; ++n) {
    Section5Data d;
    auto rep = suite_section5_susy(n, &d);
    CHECK(failing(rep) == std::set<std::string>{"{w(f~)_L w(f~)} = -2w(F) + 2k^3 lam chi"});
    REQUIRE(d.central_charge);
    CHECK(*d.central_charge == SuperScalar(-6) * SuperScalar::k());
    CHECK(d.central_charges.at("J") == *d.central_charge);
    CHECK(d.grading_violations.empty());
    for (const auto& [ji, c] : d.c_ji) CHECK(SuperScalar(d.c_ji_formula.at(ji)) == c);
  }
}

TEST_CASE("SUSY product coefficients c_ji at n = 3", "[walgebra]") {
  Section5Data d;
  suite_section5_susy(3, &d);
  REQUIRE(d.c_ji.count({2, 3}));
  CHECK(d.c_ji.at({2, 3}).is_zero());
  CHECK(d.c_ji_formula.at({2, 3}).is_zero());
}

TEST_CASE("non-SUSY superconformal suite", "[walgebra]") {
  const std::set<std::string> known{"nu(f)_(0) nu(f~) = 0", "{nu(f)_lam nu(f)} = -2 nu(F) + nu(U)^2/2 - k^2 lam^2",
                                    "{nu(f~)_lam nu(f~)} = 2 nu(F) - nu(U)^2/2 + k^2 lam^2"};
  for (int n = 1; n <= 3; ++n) {
    Section5Data d;
    auto rep = suite_section5_nonsusy(n, &d);
    CHECK(failing(rep) == known);
    for (const char* key : {"G", "G~", "J", "L"}) CHECK(d.central_charges.at(key) == SuperScalar(-6) * SuperScalar::k());
    CHECK(d.grading_violations.empty());
  }
}

TEST_CASE("non-SUSY N=2 pairing of f and f~", "[walgebra]") {
  for (int n = 1; n <= 2; ++n) {
    auto w = build_walgebra(Variant::NonSusy, n);
    const auto& emb = w->lie().emb;
    const FieldPoly f = w->element(emb.f), ft = w->element(emb.ft), U = w->element(emb.U);
    const Derivation d = Derivation::partial();
    CHECK((*w)(f, ft) == SuperScalar::k() * (lam(-d.apply(U), 0) + lam(SuperScalar(-2) * U, 0, 1)));
  }
}

TEST_CASE("generator-change relations", "[walgebra]") {
  CHECK(suite_generator_changes(1).ok());
  CHECK(failing(suite_generator_changes(2)) ==
        std::set<std::string>{"{nu(f)_lam nu(v_4^(7))} = nu(v_4^(8)) - sum_j (...)", "{nu(f~)_lam nu(v_3^(6))} = nu(v_4^(8))"});
  auto w = build_walgebra(Variant::NonSusy, 2);
  const auto& emb = w->lie().emb;
  const FieldPoly want = w->gen(4, 8) + SuperScalar(2) * (w->gen(1, 1) * w->gen(3, 5));
  CHECK((*w)(w->element(emb.f), w->gen(4, 7)) == lam(want, 0));
  CHECK((*w)(w->element(emb.ft), w->gen(3, 6)) == lam(want, 0));
}
