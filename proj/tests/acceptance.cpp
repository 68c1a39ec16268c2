// Acceptance run: one PASS/FAIL line per criterion, exact equality throughout.
// Runtime budgets: criterion 1 under 1 s, criterion 3 (n = 3) under 300 s.

#include "wkit/walgebra.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

using namespace wkit;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;

  void fail(const std::string& what) {
    ok = false;
    if (!detail.empty()) detail += "; ";
    detail += what;
  }
  void note(const std::string& what) {
    if (!detail.empty()) detail += "; ";
    detail += what;
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void absorb(Outcome& o, const std::string& prefix, const SuiteReport& rep) {
  for (const auto& c : rep.checks)
    if (!c.ok) o.fail(prefix + c.name + (c.detail.empty() ? "" : " (" + c.detail + ")"));
}

LambdaPoly lam(const FieldPoly& c, int N, int m = 0, int sector = 0) { return LambdaPoly::from(c, N, m, sector); }

std::vector<std::string> grading_log;

Outcome criterion1() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  auto w = build_walgebra(Variant::Susy, 1);
  const FieldPoly w1 = w->gen(1, 2), w2 = w->gen(2, 4);
  const ArenaPtr& ar = w->arena();
  const Derivation D = Derivation::structural_d();
  auto k = [](int e) { return SuperScalar::k(e); };
  auto op = [&](int lam2, const FieldPoly& a) {  // k^2 (2d + chi D + (lam2/2) lam) a
    return k(2) * (lam(SuperScalar(2) * D.apply(D.apply(a)), 1) + lam(D.apply(a), 1, 0, 1) +
                   lam(SuperScalar(Rational(lam2, 2)) * a, 1, 1, 0));
  };
  struct Line {
    std::string name;
    LambdaPoly got, want;
  };
  std::vector<Line> lines{
      {"{w1_L w1}", (*w)(w1, w1), lam(w2, 1) + lam(FieldPoly::constant(ar, SuperScalar(2) * k(3)), 1, 1, 1)},
      {"{w2_L w1}", (*w)(w2, w1), op(4, w1)},
      {"{w2_L w2}", (*w)(w2, w2), op(6, w2) + lam(FieldPoly::constant(ar, SuperScalar(2) * k(5)), 1, 2, 1)},
  };
  const double secs = seconds_since(t0);
  for (const auto& l : lines) {
    if (l.got != l.want) o.fail(l.name + " = " + l.got.str() + ", expected " + l.want.str());
  }
  if (secs >= 1.0) o.fail("runtime " + std::to_string(secs) + " s >= 1 s");
  o.note("runtime " + std::to_string(secs) + " s");
  return o;
}

Outcome criterion2() {
  Outcome o;
  auto w = build_walgebra(Variant::Susy, 1);
  const auto& lie = w->lie();
  const auto& mb = lie.basis;
  const LieElement& ft = lie.emb.ft;
  const DerivationSet ds = DerivationSet::structural(*w->arena());
  // -(k(b|v_1^(0))(D+chi)) (k(v~^1_(1)|v_1^(1))(D+chi)) (k(v~^1_(2)|a)(D+chi)) 1, a = b = f~.
  const Rational p_outer = lie.form(ft, mb.v(1, 0));
  const Rational p_mid = lie.form(mb.vt(1, 1), mb.v(1, 1));
  const Rational p_inner = lie.form(mb.vt(1, 2), ft);
  LambdaPoly x = LambdaPoly::unit(w->arena(), 1);
  for (const Rational& p : {p_inner, p_mid, p_outer}) x = (SuperScalar(p) * SuperScalar::k(1)) * d_plus_var(ds, Der::D, x);
  x = -x;
  const LambdaPoly want = lam(FieldPoly::constant(w->arena(), SuperScalar(2) * SuperScalar::k(3)), 1, 1, 1);
  if (x != want) o.fail("displayed chain = " + x.str());
  o.note("chain value " + x.str());

  std::vector<ChainTerm> terms;
  w->master(ft, ft, &terms);
  std::vector<std::string> nonzero;
  for (const auto& t : terms) {
    if (t.value.is_zero()) continue;
    std::string s;
    for (const auto& c : t.chain) s += "(" + std::to_string(c.i) + "," + std::to_string(c.m) + ")";
    nonzero.push_back(s + " -> " + t.value.str());
  }
  if (nonzero.size() != 1 || nonzero[0].rfind("(1,0)(1,1) ->", 0) != 0) {
    std::string all;
    for (const auto& s : nonzero) all += " " + s;
    o.fail("engine chain terms:" + all);
  } else {
    o.note("engine summand " + nonzero[0]);
  }
  return o;
}

Outcome criterion3() {
  Outcome o;
  for (int n = 1; n <= 3; ++n) {
    const auto t0 = std::chrono::steady_clock::now();
    Section5Data d;
    auto rep = suite_section5_susy(n, &d);
    const double secs = seconds_since(t0);
    absorb(o, "n=" + std::to_string(n) + ": ", rep);
    for (const auto& g : d.grading_violations) grading_log.push_back("sec5-susy n=" + std::to_string(n) + ": " + g);
    if (n == 3) {
      if (secs >= 300.0) o.fail("n=3 runtime " + std::to_string(secs) + " s >= 300 s");
      o.note("n=3 runtime " + std::to_string(secs) + " s");
    }
    if (n == 1 && d.central_charge) o.note("c = " + d.central_charge->str());
  }
  return o;
}

Outcome criterion4() {
  Outcome o;
  auto w = build_walgebra(Variant::Susy, 2);
  const FieldPoly wF = w->element(w->lie().emb.F);
  const Derivation D = Derivation::structural_d();
  auto k2 = SuperScalar::k(2);
  // {w(v_3^(6))_L w(F)} = k^2(2 lam + chi D/2 + (3/2) d) w(v_3^(6))
  const FieldPoly a = w->gen(3, 6), b = w->gen(4, 8);
  LambdaPoly want_a = k2 * (lam(SuperScalar(Rational(3, 2)) * D.apply(D.apply(a)), 1) +
                            lam(SuperScalar(Rational(1, 2)) * D.apply(a), 1, 0, 1) + lam(SuperScalar(2) * a, 1, 1));
  // {w(v_4^(8))_L w(F)} = -k^2((5/2) lam + chi D/2 + 2 d) w(v_4^(8))
  LambdaPoly want_b = k2 * (lam(SuperScalar(-2) * D.apply(D.apply(b)), 1) +
                            lam(SuperScalar(Rational(-1, 2)) * D.apply(b), 1, 0, 1) +
                            lam(SuperScalar(Rational(-5, 2)) * b, 1, 1));
  LambdaPoly got_a = (*w)(a, wF), got_b = (*w)(b, wF);
  if (got_a != want_a) o.fail("{w(v_3^(6))_L w(F)} = " + got_a.str());
  if (got_b != want_b) o.fail("{w(v_4^(8))_L w(F)} = " + got_b.str());
  for (const auto& [x, y, g] : {std::tuple{a, wF, &got_a}, std::tuple{b, wF, &got_b}})
    if (auto bad = grading_violation(*g, *x.weight2(), *y.weight2())) grading_log.push_back("criterion 4: " + *bad);
  return o;
}

Outcome criterion5() {
  Outcome o;
  for (int n = 1; n <= 3; ++n) {
    Section5Data d;
    auto rep = suite_section5_nonsusy(n, &d);
    absorb(o, "n=" + std::to_string(n) + ": ", rep);
    for (const auto& g : d.grading_violations) grading_log.push_back("sec5-nonsusy n=" + std::to_string(n) + ": " + g);
    if (n == 1 && d.central_charge) o.note("c = " + d.central_charge->str());
  }
  return o;
}

Outcome criterion6() {
  Outcome o;
  for (auto v : {Variant::Susy, Variant::NonSusy}) {
    auto r = suite_oracle(v, 1);
    absorb(o, "", r.report);
    o.note(std::string(variant_name(v)) + ": " + std::to_string(r.pairs) + " pairs");
  }
  return o;
}

Outcome criterion7() {
  Outcome o;
  for (auto v : {Variant::Susy, Variant::NonSusy})
    for (int n = 1; n <= 3; ++n) absorb(o, "", suite_axioms(v, n, n == 1 ? 0 : 200, 1));
  return o;
}

Outcome criterion8() {
  Outcome o;
  auto a = suite_affine(1);
  auto s = suite_susy_affine(1);
  absorb(o, "affine: ", a.report);
  absorb(o, "susy-affine: ", s.report);
  if (a.central_charge) o.note("Sugawara c = " + a.central_charge->str());
  if (s.central_charge) o.note("Kac-Todorov c = " + s.central_charge->str());
  return o;
}

Outcome criterion9() {
  Outcome o;
  for (int n = 1; n <= 4; ++n) {
    auto lie = build_lie_data(n);
    absorb(o, "n=" + std::to_string(n) + " decomposition: ", verify_section2(*lie));
    if (n <= 3) absorb(o, "n=" + std::to_string(n) + " identities: ", lie_identity_suite(*lie));
  }
  return o;
}

Outcome criterion10() {
  Outcome o;
  std::size_t entries = 0;
  for (auto v : {Variant::Susy, Variant::NonSusy})
    for (int n = 1; n <= 3; ++n) {
      auto rep = suite_grading(v, n);
      absorb(o, "", rep);
      entries += build_walgebra(v, n)->table().entries().size();
    }
  for (const auto& g : grading_log) o.fail(g);
  o.note(std::to_string(entries) + " table entries and every suite bracket checked");
  return o;
}

}  // namespace

int main() {
  std::vector<std::function<Outcome()>> criteria{criterion1, criterion2, criterion3, criterion4, criterion5,
                                                 criterion6, criterion7, criterion8, criterion9, criterion10};
  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i]();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    all = all && o.ok;
    std::cout << "CRITERION " << i + 1 << ": " << (o.ok ? "PASS" : "FAIL") << "  " << o.detail << std::endl;
  }
  return all ? 0 : 1;
}
