#pragma once

// Classical W-algebras of sl(n+1|n) for the odd principal nilpotent f (N=1 SUSY)
// and the even principal nilpotent F = -f^2 (non-SUSY): master bracket formulas,
// generator oracle by Hamiltonian reduction, and the structural suites.

#include "wkit/linalg.hpp"
#include "wkit/pva.hpp"
#include "wkit/ratfunc.hpp"

#include <nlohmann/json.hpp>

#include <atomic>
#include <cctype>
#include <chrono>
#include <exception>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

namespace wkit {

struct NotLowestWeight : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct ConstructionBug : std::logic_error {
  using std::logic_error::logic_error;
};
struct OracleFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Variant { Susy, NonSusy };

inline const char* variant_name(Variant v) { return v == Variant::Susy ? "susy" : "nonsusy"; }

using Coords = std::vector<Rational>;

// ---------------------------------------------------------------------------
// Generator alphabets.

// SUSY: omega_i = omega(v_i^(2i)-bar), i = 1..2n, generator index i-1.
// Non-SUSY: nu(v_i^(2i-1)) at 2(i-1), nu(v_i^(2i)) at 2(i-1)+1.
inline ArenaPtr make_w_arena(Variant v, int n) {
  std::vector<std::string> names;
  std::vector<int> par, w2;
  for (int i = 1; i <= 2 * n; ++i) {
    if (v == Variant::Susy) {
      names.push_back("omega(" + std::to_string(i) + "," + std::to_string(2 * i) + ")");
      par.push_back((i + 1) % 2);
      w2.push_back(i + 1);
    } else {
      for (int m : {2 * i - 1, 2 * i}) {
        names.push_back("nu(" + std::to_string(i) + "," + std::to_string(m) + ")");
        par.push_back((i + m) % 2);
        w2.push_back(2 - i + m);
      }
    }
  }
  return Arena::make(v == Variant::Susy ? ArenaKind::WSusy : ArenaKind::WNonSusy, n, v == Variant::Susy ? 1 : 0,
                     names, par, w2);
}

inline std::uint32_t w_generator_index(Variant v, int i, int m) {
  if (v == Variant::Susy) return std::uint32_t(i - 1);
  return std::uint32_t(2 * (i - 1) + (m == 2 * i ? 1 : 0));
}

// Tag (i, m) of a generator index.
inline BasisIndex w_generator_tag(Variant v, std::uint32_t g) {
  if (v == Variant::Susy) return {int(g) + 1, 2 * (int(g) + 1)};
  int i = int(g / 2) + 1;
  return {i, g % 2 ? 2 * i : 2 * i - 1};
}

// ---------------------------------------------------------------------------
// Master formulas.

struct ChainTerm {
  std::vector<BasisIndex> chain;
  LambdaPoly value;  // contribution to the bracket, overall sign included
};

// Precomputed Lie data shared by both master formulas.
class MasterEngine {
 public:
  MasterEngine(Variant v, std::shared_ptr<const LieStructure> st, ArenaPtr ar, bool literal_index_sign = false)
      : v_(v), st_(std::move(st)), ar_(std::move(ar)), literal_(literal_index_sign) {
    const auto& mb = st_->lie->basis;
    dual_.resize(mb.size());
    for (std::size_t c = 0; c < mb.size(); ++c) dual_[c] = mb.coords(mb.vt_flat(c));
  }

  Variant variant() const { return v_; }
  const ArenaPtr& arena() const { return ar_; }
  const LieStructure& structure() const { return *st_; }
  const ModuleBasis& basis() const { return st_->lie->basis; }

  // [x, v_c] and (x|v_c) for x in coordinates.
  Coords bracket_with(const Coords& x, std::size_t c) const {
    Coords out(basis().size());
    for (std::size_t d = 0; d < x.size(); ++d) {
      if (x[d].is_zero()) continue;
      for (const auto& [t, y] : st_->bracket[d][c]) out[t] += x[d] * y;
    }
    return out;
  }
  Coords bracket(const Coords& x, const Coords& y) const {
    Coords out(basis().size());
    for (std::size_t c = 0; c < y.size(); ++c) {
      if (y[c].is_zero()) continue;
      Coords z = bracket_with(x, c);
      for (std::size_t t = 0; t < z.size(); ++t)
        if (!z[t].is_zero()) out[t] += y[c] * z[t];
    }
    return out;
  }
  Rational form_with(const Coords& x, std::size_t c) const {
    Rational s;
    for (std::size_t d = 0; d < x.size(); ++d)
      if (!x[d].is_zero() && !st_->form[d][c].is_zero()) s += x[d] * st_->form[d][c];
    return s;
  }
  Rational form(const Coords& x, const Coords& y) const {
    Rational s;
    for (std::size_t c = 0; c < y.size(); ++c)
      if (!y[c].is_zero()) s += y[c] * form_with(x, c);
    return s;
  }

  // omega(x-bar^sharp) or nu(x^natural): the W-generator image of the projection.
  FieldPoly project(const Coords& x) const {
    const auto& mb = basis();
    std::vector<FieldPoly::Term> terms;
    for (int i = 1; i <= 2 * mb.n(); ++i) {
      for (int m : {2 * i - 1, 2 * i}) {
        if (v_ == Variant::Susy && m != 2 * i) continue;
        const Rational& c = x[mb.flat(i, m)];
        if (!c.is_zero())
          terms.emplace_back(Monomial{make_factor(w_generator_index(v_, i, m), {})}, SuperScalar(c));
      }
    }
    return FieldPoly::from_terms(ar_, std::move(terms));
  }

  Coords element_coords(const LieElement& x) const { return basis().coords(x); }

  // Precondition: x homogeneous and in g^f (SUSY) or g^F (non-SUSY).
  void require_lowest(const LieElement& x, const char* which) const {
    const auto& emb = st_->lie->emb;
    const LieElement& low = v_ == Variant::Susy ? emb.f : emb.F;
    if (x.is_zero() || !x.parity() || !x.grade2())
      throw NotLowestWeight(std::string(which) + " must be a nonzero homogeneous element");
    if (!super_bracket(low, x).is_zero())
      throw NotLowestWeight(std::string(which) + (v_ == Variant::Susy ? " is not in g^f" : " is not in g^F"));
  }

  LambdaPoly bracket_susy(const LieElement& a, const LieElement& b, std::vector<ChainTerm>* terms = nullptr) const;
  LambdaPoly bracket_nonsusy(const LieElement& a, const LieElement& b, std::vector<ChainTerm>* terms = nullptr) const;

  LambdaPoly operator()(const LieElement& a, const LieElement& b, std::vector<ChainTerm>* terms = nullptr) const {
    return v_ == Variant::Susy ? bracket_susy(a, b, terms) : bracket_nonsusy(a, b, terms);
  }

  // Upper bound on the chain length asserted by the enumerators.
  std::size_t chain_bound(int ga2, int gb2) const {
    return std::size_t(std::max(1, -(ga2 + gb2))) * basis().size();
  }

 private:
  struct Ctx;
  LambdaPoly run(const LieElement& a, const LieElement& b, std::vector<ChainTerm>* terms) const;

  Variant v_;
  std::shared_ptr<const LieStructure> st_;
  ArenaPtr ar_;
  bool literal_;
  std::vector<Coords> dual_;
};

// Both formulas share one shape:
//   leading + sign * sum_chains X(b, c0) X(nxt c0, c1) ... X(nxt c_{p-1}, c_p) Y(nxt c_p)
// with X(x, c) Z = s(c) (W([x, q_c]) Z - k (x|q_c) (d + var) Z) and Y(x) = W([x, a]) - k (x|a) var,
// where var = chi (SUSY) or lambda. The sum is a memoized recursion over the last chain element.
struct MasterEngine::Ctx {
  const MasterEngine& eng;
  Coords a, b;
  int ga2 = 0, gb2 = 0;
  DerivationSet ders;
  Der op;
  int N;
  std::map<std::size_t, LambdaPoly> memo;
  std::vector<std::size_t> allowed;  // window-admissible basis indices, by increasing j
  std::vector<int> j2;                // twice the grade of the dual element
  std::vector<int> step;              // gap between consecutive j (1 SUSY, 2 non-SUSY in units of j2)
  std::vector<Rational> qsign;        // q_c = qsign v_c
  std::vector<int> fsign;             // s(c) in the product
  std::vector<std::optional<std::size_t>> next;

  Ctx(const MasterEngine& e) : eng(e), ders(DerivationSet::structural(*e.ar_)) {}

  LambdaPoly var_term(const SuperScalar& c) const {
    LambdaPoly r(eng.ar_, N);
    r.add_term(N == 1 ? 0 : 1, N == 1 ? 1 : 0, FieldPoly::constant(eng.ar_, c));
    return r;
  }

  // q~ at the successor of c, in coordinates.
  Coords succ_dual(std::size_t c) const {
    Coords x = eng.dual_[*next[c]];
    const Rational& s = qsign[*next[c]];
    if (s != Rational(1))
      for (auto& y : x) y = y * s;
    return x;
  }

  LambdaPoly apply_x(const Coords& x, std::size_t c, const LambdaPoly& z) const {
    Coords br = eng.bracket_with(x, c);
    Rational fm = eng.form_with(x, c);
    const Rational& s = qsign[c];
    LambdaPoly out(eng.ar_, N);
    FieldPoly w = eng.project(br);
    if (!w.is_zero()) out += SuperScalar(s) * (w * z);
    if (!fm.is_zero()) out += SuperScalar(-s * fm) * SuperScalar::k() * d_plus_var(ders, op, z);
    return fsign[c] < 0 ? -out : out;
  }

  LambdaPoly final_y(const Coords& x) const {
    LambdaPoly out = LambdaPoly::from(eng.project(eng.bracket(x, a)), N);
    Rational fm = eng.form(x, a);
    if (!fm.is_zero()) out += var_term(SuperScalar(-fm) * SuperScalar::k());
    return out;
  }

  // Value of every chain suffix whose first element follows c.
  const LambdaPoly& tail(std::size_t c) {
    auto it = memo.find(c);
    if (it != memo.end()) return it->second;
    Coords x = succ_dual(c);
    LambdaPoly t = final_y(x);
    for (std::size_t c2 : allowed)
      if (j2[c2] >= j2[c] + stepj()) {
        const LambdaPoly& rest = tail(c2);
        if (!rest.is_zero()) t += apply_x(x, c2, rest);
      }
    return memo.emplace(c, std::move(t)).first->second;
  }

  int stepj() const { return N == 1 ? 1 : 2; }

  // Explicit enumeration of every chain, used to list individual terms.
  void enumerate(std::vector<std::size_t>& prefix, std::vector<ChainTerm>& out, const SuperScalar& overall,
                 std::size_t bound) {
    if (prefix.size() > bound) throw ConstructionBug("chain length exceeds the asserted bound");
    const std::size_t last = prefix.back();
    // Close the chain here.
    {
      LambdaPoly z = final_y(succ_dual(last));
      if (!z.is_zero()) {
        for (std::size_t t = prefix.size(); t-- > 1;) z = apply_x(succ_dual(prefix[t - 1]), prefix[t], z);
        z = apply_x(b, prefix[0], z, true);
        if (!z.is_zero()) {
          ChainTerm ct{{}, overall * z};
          for (auto c : prefix) ct.chain.push_back(eng.basis().indices()[c]);
          out.push_back(std::move(ct));
        }
      }
    }
    for (std::size_t c2 : allowed)
      if (j2[c2] >= j2[last] + stepj()) {
        prefix.push_back(c2);
        enumerate(prefix, out, overall, bound);
        prefix.pop_back();
      }
  }

  LambdaPoly apply_x(const Coords& x, std::size_t c, const LambdaPoly& z, bool first) const {
    if (!first) return apply_x(x, c, z);
    LambdaPoly r = apply_x(x, c, z);
    // The first factor carries the first-position sign instead of s(c).
    return first_sign[c] * fsign[c] < 0 ? -r : r;
  }
  std::vector<int> first_sign;
};

inline LambdaPoly MasterEngine::run(const LieElement& ea, const LieElement& eb, std::vector<ChainTerm>* terms) const {
  require_lowest(ea, "a");
  require_lowest(eb, "b");
  const auto& mb = basis();
  const std::size_t d = mb.size();
  Ctx ctx(*this);
  ctx.N = v_ == Variant::Susy ? 1 : 0;
  ctx.op = v_ == Variant::Susy ? Der::D : Der::Partial;
  ctx.a = element_coords(ea);
  ctx.b = element_coords(eb);
  ctx.ga2 = *ea.grade2();
  ctx.gb2 = *eb.grade2();
  const int pa = *ea.parity(), pb = *eb.parity();
  ctx.j2.resize(d);
  ctx.qsign.assign(d, Rational(1));
  ctx.fsign.assign(d, 1);
  ctx.first_sign.assign(d, 1);
  ctx.next.assign(d, std::nullopt);
  for (std::size_t c = 0; c < d; ++c) {
    const auto [i, m] = mb.indices()[c];
    ctx.j2[c] = m - i;
    if (v_ == Variant::Susy) {
      if (m + 1 <= 2 * i) ctx.next[c] = mb.flat(i, m + 1);
    } else {
      // sl2 strings: q^(mu) = (-1)^{i+mu} v_i^(2mu), or (-1)^{i-1+mu} v_i^(2mu+1).
      int mu = m / 2;
      int e = m % 2 == 0 ? i + mu : i - 1 + mu;
      ctx.qsign[c] = e % 2 ? Rational(-1) : Rational(1);
      if (m + 2 <= 2 * i) ctx.next[c] = mb.flat(i, m + 2);
      ctx.fsign[c] = ModuleBasis::parity(i, m) ? -1 : 1;
      int label = m % 2 == 0 ? 2 * i : 2 * i - 1;
      int first = literal_ ? label % 2 : ModuleBasis::parity(i, m);
      ctx.first_sign[c] = first ? -1 : 1;
    }
  }
  // Window: -t2 <= j and j < t1 (SUSY) or j + 1 <= t1 (non-SUSY), in units of j2.
  const int hi = v_ == Variant::Susy ? -ctx.ga2 - 1 : -ctx.ga2 - 2;
  std::vector<std::size_t> order;
  for (std::size_t c = 0; c < d; ++c)
    if (ctx.next[c] && ctx.j2[c] >= ctx.gb2 && ctx.j2[c] <= hi) order.push_back(c);
  std::stable_sort(order.begin(), order.end(), [&](auto x, auto y) { return ctx.j2[x] < ctx.j2[y]; });
  ctx.allowed = order;

  const ArenaPtr& ar = ar_;
  const int N = ctx.N;
  LambdaPoly lead(ar, N);
  lead.add_term(0, 0, project(bracket(ctx.a, ctx.b)));
  Rational fab = form(ctx.a, ctx.b);
  if (!fab.is_zero()) lead += ctx.var_term(SuperScalar(fab) * SuperScalar::k());
  int sum_sign;
  if (v_ == Variant::Susy) {
    if (pa) lead = -lead;
    sum_sign = (pa * pb + pa) % 2 ? 1 : -1;
  } else {
    sum_sign = (pa * pb) % 2 ? 1 : -1;
  }

  LambdaPoly sum(ar, N);
  for (std::size_t c0 : ctx.allowed) {
    const LambdaPoly& t = ctx.tail(c0);
    if (!t.is_zero()) sum += ctx.apply_x(ctx.b, c0, t, true);
  }
  if (terms) {
    const std::size_t bound = chain_bound(ctx.ga2, ctx.gb2);
    std::vector<std::size_t> prefix;
    for (std::size_t c0 : ctx.allowed) {
      prefix = {c0};
      ctx.enumerate(prefix, *terms, SuperScalar(sum_sign), bound);
    }
  }
  return sum_sign > 0 ? lead + sum : lead - sum;
}

inline LambdaPoly MasterEngine::bracket_susy(const LieElement& a, const LieElement& b,
                                             std::vector<ChainTerm>* terms) const {
  if (v_ != Variant::Susy) throw PreconditionViolation("engine is not SUSY");
  return run(a, b, terms);
}
inline LambdaPoly MasterEngine::bracket_nonsusy(const LieElement& a, const LieElement& b,
                                                std::vector<ChainTerm>* terms) const {
  if (v_ != Variant::NonSusy) throw PreconditionViolation("engine is not non-SUSY");
  return run(a, b, terms);
}


// ---------------------------------------------------------------------------
// Hamiltonian reduction: rho projection and the generator oracle.

// The affine side of the reduction. SUSY: fields p = g_{<=0}, constraints n = g_{>0},
// rho-bar(n) = (f|n). Non-SUSY: fields q = g_{<=1/2}, constraints n = g_{>=1/2},
// rho(x) = (F|x) for x of grade >= 1.
class Reduction {
 public:
  Reduction(Variant v, std::shared_ptr<const LieStructure> st) : v_(v), st_(std::move(st)) {
    table_ = v == Variant::Susy ? susy_affine_table(*st_) : affine_table(*st_);
    const auto& mb = st_->lie->basis;
    const auto& emb = st_->lie->emb;
    const LieElement& low = v == Variant::Susy ? emb.f : emb.F;
    const std::size_t d = mb.size();
    field_.assign(d, false);
    constraint_.assign(d, false);
    const_.assign(d, Rational());
    for (std::size_t c = 0; c < d; ++c) {
      const auto [i, m] = mb.indices()[c];
      int g2 = ModuleBasis::grade2(i, m);
      if (v == Variant::Susy) {
        field_[c] = g2 <= 0;
        constraint_[c] = g2 > 0;
      } else {
        field_[c] = g2 <= 1;
        constraint_[c] = g2 >= 1;
      }
      if (!field_[c]) const_[c] = st_->lie->form(low, mb.v_flat(c));
    }
  }

  Variant variant() const { return v_; }
  const LieStructure& structure() const { return *st_; }
  const BracketTable& table() const { return *table_; }
  std::shared_ptr<const BracketTable> table_ptr() const { return table_; }
  const ArenaPtr& arena() const { return table_->arena(); }
  bool is_field(std::size_t c) const { return field_[c]; }
  bool is_constraint(std::size_t c) const { return constraint_[c]; }

  // g^f (SUSY) or g^F (non-SUSY) basis vectors.
  bool is_lowest(std::size_t c) const {
    const auto [i, m] = st_->lie->basis.indices()[c];
    return v_ == Variant::Susy ? m == 2 * i : m >= 2 * i - 1;
  }

  FieldPoly rho(const FieldPoly& x) const {
    std::vector<FieldPoly::Term> out;
    for (const auto& [m, c] : x.terms()) {
      Monomial kept;
      SuperScalar coef = c;
      bool dead = false;
      for (Factor f : m) {
        std::uint32_t g = factor_gen(f);
        if (field_[g]) {
          kept.push_back(f);
          continue;
        }
        DerWord w = factor_word(f);
        if (w.a || w.eps || w.delta || const_[g].is_zero()) {
          dead = true;
          break;
        }
        coef = coef * SuperScalar(const_[g]);
      }
      if (!dead) out.emplace_back(std::move(kept), std::move(coef));
    }
    return FieldPoly::from_terms(x.arena(), std::move(out));
  }

  LambdaPoly rho(const LambdaPoly& x) const {
    LambdaPoly r(x.arena(), x.N());
    for (const auto& [k, c] : x.terms()) r.add_term(k.first, k.second, rho(c));
    return r;
  }

  // rho({a_Lambda b}) in the affine PVA.
  LambdaPoly reduced_bracket(const FieldPoly& a, const FieldPoly& b) const { return rho((*table_)(a, b)); }

 private:
  Variant v_;
  std::shared_ptr<const LieStructure> st_;
  std::shared_ptr<BracketTable> table_;
  std::vector<bool> field_, constraint_;
  std::vector<Rational> const_;
};

inline FieldPoly rho_projection(const Reduction& r, const FieldPoly& x) { return r.rho(x); }

struct OracleStats {
  std::size_t unknowns = 0;
  std::size_t equations = 0;
};

// Weight-homogeneous monomials of the given parity in the field generators.
inline std::vector<Monomial> ansatz_monomials(const Reduction& red, int weight2, int parity) {
  const Arena& ar = *red.arena();
  const bool susy = red.variant() == Variant::Susy;
  std::vector<Factor> letters;
  for (std::uint32_t c = 0; c < ar.size(); ++c) {
    if (!red.is_field(c)) continue;
    for (int a = 0; 2 * a + ar.weight2[c] <= weight2; ++a)
      for (int eps = 0; eps <= (susy ? 1 : 0); ++eps)
        if (2 * a + eps + ar.weight2[c] <= weight2) letters.push_back(make_factor(c, {a, eps, 0}));
  }
  std::sort(letters.begin(), letters.end());
  std::vector<Monomial> out;
  Monomial cur;
  std::function<void(std::size_t, int, int)> rec = [&](std::size_t from, int w, int p) {
    if (w == weight2) {
      if (p == parity) out.push_back(cur);
      return;
    }
    for (std::size_t t = from; t < letters.size(); ++t) {
      Factor f = letters[t];
      int fw = factor_weight2(ar, f);
      if (w + fw > weight2) continue;
      int fp = factor_parity(ar, f);
      cur.push_back(f);
      rec(fp ? t + 1 : t, w + fw, p ^ fp);
      cur.pop_back();
    }
  };
  rec(0, 0, 0);
  return out;
}

// The unique W-generator with linear part v_tag and no other pure g^f (g^F) monomial,
// solved exactly over Q(i)(k) from rho({n_Lambda w}) = 0.
inline FieldPoly oracle_generator(const Reduction& red, BasisIndex tag, OracleStats* stats = nullptr) {
  const auto& mb = red.structure().lie->basis;
  const ArenaPtr& ar = red.arena();
  const std::uint32_t tg = std::uint32_t(mb.flat(tag.i, tag.m));
  if (!red.is_lowest(tg)) throw OracleFailure("tag is not a lowest-weight vector");
  const int weight2 = ar->weight2[tg];
  const int parity = ar->parity[tg];
  auto mons = ansatz_monomials(red, weight2, parity);
  const Monomial tag_mon{make_factor(tg, {})};
  std::vector<Monomial> unknown;
  for (const auto& m : mons) {
    bool pure = true;
    for (Factor f : m) pure = pure && red.is_lowest(factor_gen(f));
    if (!pure) unknown.push_back(m);
  }
  const std::size_t u = unknown.size();
  // Equations keyed by (constraint, lambda power, sector, monomial).
  std::map<std::tuple<std::size_t, int, int, Monomial>, std::vector<SuperScalar>> rows;
  auto add = [&](std::size_t n, const LambdaPoly& x, std::size_t col) {
    for (const auto& [k, c] : x.terms())
      for (const auto& [m, s] : c.terms()) {
        auto& row = rows[{n, k.first, k.second, m}];
        if (row.empty()) row.resize(u + 1);
        row[col] += s;
      }
  };
  const std::size_t d = mb.size();
  for (std::size_t n = 0; n < d; ++n) {
    if (!red.is_constraint(n)) continue;
    FieldPoly gn = FieldPoly::generator(ar, std::uint32_t(n));
    add(n, red.reduced_bracket(gn, FieldPoly::product(ar, tag_mon)), u);
    for (std::size_t t = 0; t < u; ++t) add(n, red.reduced_bracket(gn, FieldPoly::product(ar, unknown[t])), t);
  }
  linalg::Matrix<RatFunc> A;
  A.reserve(rows.size());
  for (const auto& [key, row] : rows) {
    std::vector<RatFunc> r(u + 1);
    bool any = false;
    for (std::size_t t = 0; t <= u; ++t) {
      if (row[t].is_zero()) continue;
      r[t] = RatFunc::from_scalar(row[t]);
      any = true;
    }
    if (any) A.push_back(std::move(r));
  }
  if (stats) *stats = {u, A.size()};
  auto piv = linalg::rref(A, u + 1);
  if (!piv.empty() && piv.back() == u) throw OracleFailure("inconsistent system for tag " + ar->names[tg]);
  if (piv.size() != u) throw OracleFailure("solution not unique for tag " + ar->names[tg]);
  FieldPoly w = FieldPoly::product(ar, tag_mon);
  for (std::size_t r = 0; r < piv.size(); ++r) {
    // Row r reads x_{piv[r]} + rhs_coeff = 0.
    RatFunc val = -A[r][u];
    auto s = val.to_scalar();
    if (!s) throw OracleFailure("coefficient is not a Laurent polynomial in k");
    w += FieldPoly::product(ar, unknown[piv[r]], *s);
  }
  for (std::size_t n = 0; n < d; ++n) {
    if (!red.is_constraint(n)) continue;
    if (!red.reduced_bracket(FieldPoly::generator(ar, std::uint32_t(n)), w).is_zero())
      throw OracleFailure("solution fails the invariance check for tag " + ar->names[tg]);
  }
  return w;
}

// Oracle generators for every W-generator of the variant, indexed like make_w_arena.
inline std::vector<FieldPoly> generator_oracle(const Reduction& red) {
  const int n = red.structure().lie->n();
  std::vector<FieldPoly> out;
  const std::uint32_t count = red.variant() == Variant::Susy ? 2 * n : 4 * n;
  for (std::uint32_t g = 0; g < count; ++g) out.push_back(oracle_generator(red, w_generator_tag(red.variant(), g)));
  return out;
}

// Differential-algebra homomorphism sending W-generator g to images[g].
inline FieldPoly substitute(const FieldPoly& p, const std::vector<FieldPoly>& images, const ArenaPtr& target) {
  FieldPoly out(target);
  std::map<Factor, FieldPoly> cache;
  auto image = [&](Factor f) -> const FieldPoly& {
    auto it = cache.find(f);
    if (it != cache.end()) return it->second;
    DerWord w = factor_word(f);
    FieldPoly x = images.at(factor_gen(f));
    if (w.delta) x = Derivation::structural_dt().apply(x);
    if (w.eps) x = Derivation::structural_d().apply(x);
    for (int t = 0; t < w.a; ++t) x = Derivation::partial().apply(x);
    return cache.emplace(f, std::move(x)).first->second;
  };
  for (const auto& [m, c] : p.terms()) {
    FieldPoly t = FieldPoly::constant(target, c);
    for (Factor f : m) t = t * image(f);
    out += t;
  }
  return out;
}

inline LambdaPoly substitute(const LambdaPoly& x, const std::vector<FieldPoly>& images, const ArenaPtr& target) {
  LambdaPoly r(target, x.N());
  for (const auto& [k, c] : x.terms()) r.add_term(k.first, k.second, substitute(c, images, target));
  return r;
}


// ---------------------------------------------------------------------------
// W-algebras built from the master formulas.

// Twice the conformal weight, or nullopt if x is not weight-homogeneous.
inline std::optional<Rational> conformal_weight(const FieldPoly& x) {
  auto w = x.weight2();
  if (!w) return std::nullopt;
  return Rational(*w, 2);
}

// First monomial of x breaking Delta(a) + Delta(b) = Delta(mono) + wt(lambda^m chi^s) + 1 - N/2.
inline std::optional<std::string> grading_violation(const LambdaPoly& x, int wa2, int wb2) {
  const Arena& ar = *x.arena();
  for (const auto& [k, c] : x.terms()) {
    const int var2 = 2 * k.first + (k.second & 1) + ((k.second >> 1) & 1);
    for (const auto& [m, s] : c.terms()) {
      const int w = monomial_weight2(ar, m) + var2 + 2 - x.N();
      if (w != wa2 + wb2) {
        LambdaPoly t(x.arena(), x.N());
        t.add_term(k.first, k.second, FieldPoly::product(x.arena(), m, s));
        return t.str() + ": weight " + Rational(w, 2).str() + " != " + Rational(wa2 + wb2, 2).str();
      }
    }
  }
  return std::nullopt;
}

class WAlgebra {
 public:
  Variant variant() const { return v_; }
  int n() const { return n_; }
  const LieData& lie() const { return *st_->lie; }
  const LieStructure& structure() const { return *st_; }
  std::shared_ptr<const LieStructure> structure_ptr() const { return st_; }
  const ArenaPtr& arena() const { return ar_; }
  const MasterEngine& engine() const { return *eng_; }
  const BracketTable& table() const { return *table_; }
  std::shared_ptr<const BracketTable> table_ptr() const { return table_; }
  int N() const { return v_ == Variant::Susy ? 1 : 0; }
  std::uint32_t size() const { return ar_->size(); }

  FieldPoly gen(std::uint32_t g) const { return FieldPoly::generator(ar_, g); }
  FieldPoly gen(int i, int m) const {
    if (i < 1 || i > 2 * n_ || (v_ == Variant::Susy ? m != 2 * i : (m != 2 * i && m != 2 * i - 1)))
      throw NotLowestWeight("no W-generator with tag (" + std::to_string(i) + "," + std::to_string(m) + ")");
    return gen(w_generator_index(v_, i, m));
  }
  LieElement tag(std::uint32_t g) const {
    auto t = w_generator_tag(v_, g);
    return lie().basis.v(t.i, t.m);
  }

  // omega(x-bar) for x in g^f, or nu(x) for x in g^F.
  FieldPoly element(const LieElement& x) const {
    const auto& mb = lie().basis;
    Coords c = mb.coords(x);
    for (std::size_t t = 0; t < c.size(); ++t) {
      if (c[t].is_zero()) continue;
      const auto [i, m] = mb.indices()[t];
      bool low = v_ == Variant::Susy ? m == 2 * i : m >= 2 * i - 1;
      if (!low) throw NotLowestWeight(v_ == Variant::Susy ? "element is not in g^f" : "element is not in g^F");
    }
    return eng_->project(c);
  }

  LambdaPoly operator()(const FieldPoly& a, const FieldPoly& b) const { return (*table_)(a, b); }
  LambdaPoly master(const LieElement& a, const LieElement& b, std::vector<ChainTerm>* terms = nullptr) const {
    return (*eng_)(a, b, terms);
  }

  Rational weight(std::uint32_t g) const { return Rational(ar_->weight2[g], 2); }

  // Brackets {g_Lambda h} for g >= h, then the remaining orderings as skew images.
  nlohmann::json structure_table() const {
    nlohmann::json gens = nlohmann::json::array();
    for (std::uint32_t g = 0; g < size(); ++g)
      gens.push_back({{"name", ar_->names[g]}, {"parity", ar_->parity[g]}, {"weight", weight(g).str()}});
    nlohmann::json main = nlohmann::json::array(), skew = nlohmann::json::array();
    for (std::uint32_t g = 0; g < size(); ++g)
      for (std::uint32_t h = 0; h < size(); ++h) {
        nlohmann::json e{{"a", ar_->names[g]}, {"b", ar_->names[h]}, {"value", table_->entry(g, h).to_json()}};
        (g >= h ? main : skew).push_back(std::move(e));
      }
    return {{"variant", variant_name(v_)}, {"n", n_}, {"generators", gens}, {"brackets", main}, {"skew_images", skew}};
  }

 private:
  friend std::shared_ptr<const WAlgebra> build_walgebra_uncached(Variant v, int n);
  Variant v_ = Variant::Susy;
  int n_ = 0;
  std::shared_ptr<const LieStructure> st_;
  ArenaPtr ar_;
  std::shared_ptr<MasterEngine> eng_;
  std::shared_ptr<BracketTable> table_;
};

inline std::shared_ptr<const LieStructure> lie_structure(int n) {
  static std::mutex mu;
  static std::map<int, std::shared_ptr<const LieStructure>> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
  }
  auto st = LieStructure::build(build_lie_data(n));
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(n, st).first->second;
}

inline std::shared_ptr<const WAlgebra> build_walgebra_uncached(Variant v, int n) {
  if (n < 1) throw InvalidRank("n must be positive");
  auto w = std::make_shared<WAlgebra>();
  w->v_ = v;
  w->n_ = n;
  w->st_ = lie_structure(n);
  w->ar_ = make_w_arena(v, n);
  w->eng_ = std::make_shared<MasterEngine>(v, w->st_, w->ar_);
  w->table_ = std::make_shared<BracketTable>(w->ar_, w->N());
  const std::uint32_t d = w->ar_->size();
  std::vector<LambdaPoly> vals(std::size_t(d) * d);
  std::vector<std::exception_ptr> errs(vals.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t t; (t = next++) < vals.size();) {
      try {
        vals[t] = (*w->eng_)(w->tag(std::uint32_t(t / d)), w->tag(std::uint32_t(t % d)));
      } catch (...) {
        errs[t] = std::current_exception();
      }
    }
  };
  const unsigned threads = std::max(1u, std::min<unsigned>(std::thread::hardware_concurrency(), unsigned(vals.size())));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (auto& e : errs)
    if (e) std::rethrow_exception(e);
  for (std::uint32_t g = 0; g < d; ++g)
    for (std::uint32_t h = 0; h < d; ++h) {
      const LambdaPoly& x = vals[std::size_t(g) * d + h];
      if (auto bad = grading_violation(x, w->ar_->weight2[g], w->ar_->weight2[h]))
        throw ConstructionBug("grading violated in {" + w->ar_->names[g] + ", " + w->ar_->names[h] + "}: " + *bad);
      w->table_->set(g, h, x);
    }
  auto skew = check_skewsymmetry(static_cast<const BracketTable&>(*w->table_));
  if (!skew.ok) throw ConstructionBug("skewsymmetry fails on " + skew.counterexample + ": " + skew.residual);
  w->table_->seal();
  return w;
}

// Cached per (variant, n); concurrent callers may build the same algebra once each.
inline std::shared_ptr<const WAlgebra> build_walgebra(Variant v, int n) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::shared_ptr<const WAlgebra>> cache;
  const auto key = std::make_pair(int(v), n);
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  auto w = build_walgebra_uncached(v, n);
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(key, w).first->second;
}


// ---------------------------------------------------------------------------
// Element grammar: v:i,m  F  f  ftilde  U  E  H  e  etilde  omega(i)  nu(i,s).

struct ElementParseError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

inline LieElement parse_element(const LieData& lie, const std::string& spec) {
  std::string s;
  for (char c : spec)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  const auto& emb = lie.emb;
  static const std::map<std::string, LieElement Embedding::*> named{
      {"H", &Embedding::H}, {"E", &Embedding::E},       {"F", &Embedding::F},       {"e", &Embedding::e},
      {"f", &Embedding::f}, {"etilde", &Embedding::et}, {"ftilde", &Embedding::ft}, {"U", &Embedding::U}};
  if (auto it = named.find(s); it != named.end()) return emb.*(it->second);
  auto ints = [&](const std::string& body) {
    std::vector<int> out;
    std::size_t pos = 0;
    while (pos <= body.size()) {
      std::size_t comma = body.find(',', pos);
      std::string tok = body.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
      if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos)
        throw ElementParseError("malformed element spec '" + spec + "' at token '" + tok + "'");
      out.push_back(std::stoi(tok));
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    return out;
  };
  auto tagged = [&](int i, int m) {
    if (i < 1 || i > 2 * lie.basis.n() || m < 0 || m > 2 * i)
      throw ElementParseError("index out of range in '" + spec + "'");
    return lie.basis.v(i, m);
  };
  if (s.rfind("v:", 0) == 0) {
    auto v = ints(s.substr(2));
    if (v.size() != 2) throw ElementParseError("v:i,m needs two indices in '" + spec + "'");
    return tagged(v[0], v[1]);
  }
  auto call = [&](const std::string& head) -> std::optional<std::vector<int>> {
    if (s.rfind(head + "(", 0) != 0 || s.back() != ')') return std::nullopt;
    return ints(s.substr(head.size() + 1, s.size() - head.size() - 2));
  };
  if (auto v = call("omega")) {
    if (v->size() != 1) throw ElementParseError("omega(i) takes one index in '" + spec + "'");
    return tagged((*v)[0], 2 * (*v)[0]);
  }
  if (auto v = call("nu")) {
    if (v->size() != 2) throw ElementParseError("nu(i,s) takes two indices in '" + spec + "'");
    return tagged((*v)[0], (*v)[1]);
  }
  throw ElementParseError("malformed element spec '" + spec + "'");
}

// ---------------------------------------------------------------------------
// Special elements.

struct SpecialElements {
  FieldPoly G, G_tilde, J, L, tau;
};

// SUSY: G = -(2/k^2) omega(F), J = (i/k) omega(f~), L = DG.
// Non-SUSY: G = i kappa^-1 nu(f), G~ = kappa^-1 nu(f~), J = -i nu(U), L = (2/k)(nu(F) - nu(U)^2/4).
inline SpecialElements special_elements(const WAlgebra& w) {
  const auto& emb = w.lie().emb;
  const auto sq = sqrt_constants();
  SpecialElements s;
  if (w.variant() == Variant::Susy) {
    s.G = SuperScalar(-2) * SuperScalar::k(-2) * w.element(emb.F);
    s.J = sq.sqrt_minus_one * SuperScalar::k(-1) * w.element(emb.ft);
    s.L = Derivation::structural_d().apply(s.G);
    s.tau = s.G;
  } else {
    FieldPoly nu_u = w.element(emb.U);
    s.G = sq.sqrt_minus_inv_k * w.element(emb.f);
    s.G_tilde = sq.sqrt_inv_k * w.element(emb.ft);
    s.J = -(sq.sqrt_minus_one * nu_u);
    s.L = SuperScalar(2) * SuperScalar::k(-1) * (w.element(emb.F) - SuperScalar(Rational(1, 4)) * (nu_u * nu_u));
    s.tau = s.L;
  }
  return s;
}

namespace detail {

inline std::string eq_detail(const LambdaPoly& got, const LambdaPoly& want) {
  if (got == want) return "value " + got.str();
  return "got " + got.str() + "; expected " + want.str();
}

inline LambdaPoly lam(const FieldPoly& c, int N, int m = 0, int sector = 0) { return LambdaPoly::from(c, N, m, sector); }

inline FieldPoly scalar(const ArenaPtr& ar, const SuperScalar& c) { return FieldPoly::constant(ar, c); }


}  // namespace detail

// Values the suites derive rather than assert, published alongside the report.
struct Section5Data {
  std::optional<SuperScalar> central_charge;                     // from G (SUSY) or L (non-SUSY)
  std::map<std::string, SuperScalar> central_charges;            // every superconformal vector checked
  std::map<std::pair<int, int>, SuperScalar> c_ji;               // (j, i), j >= i - j -> coefficient of w_{2j} w_{2i-2j}
  std::map<std::pair<int, int>, Rational> c_ji_formula;          // closed form, summed over j and i - j
  std::size_t graded_brackets = 0;
  std::vector<std::string> grading_violations;
  nlohmann::json to_json() const {
    nlohmann::json j = nlohmann::json::object();
    if (central_charge) j["central_charge"] = central_charge->str();
    nlohmann::json cc = nlohmann::json::object();
    for (const auto& [k, v] : central_charges) cc[k] = v.str();
    j["central_charges"] = cc;
    nlohmann::json cs = nlohmann::json::array();
    for (const auto& [k, v] : c_ji) {
      nlohmann::json e{{"j", k.first}, {"i", k.second}, {"coefficient", v.str()}};
      if (auto it = c_ji_formula.find(k); it != c_ji_formula.end()) e["formula"] = it->second.str();
      cs.push_back(e);
    }
    j["c_ji"] = cs;
    j["graded_brackets"] = graded_brackets;
    j["grading_violations"] = grading_violations;
    return j;
  }
};

// N=1 SUSY W-algebra: the N=1 and N=2 superconformal structures.
inline SuiteReport suite_section5_susy(int n, Section5Data* data = nullptr) {
  auto w = build_walgebra(Variant::Susy, n);
  const auto& W = *w;
  const auto& emb = W.lie().emb;
  const auto& mb = W.lie().basis;
  const ArenaPtr& ar = W.arena();
  const auto sp = special_elements(W);
  const Derivation D = Derivation::structural_d();
  Section5Data local;
  Section5Data& out = data ? *data : local;
  auto B = [&](const FieldPoly& a, const FieldPoly& b) {
    LambdaPoly x = W(a, b);
    ++out.graded_brackets;
    auto wa = a.weight2(), wb = b.weight2();
    if (!wa || !wb)
      out.grading_violations.push_back("inhomogeneous argument in {" + a.str() + " , " + b.str() + "}");
    else if (auto bad = grading_violation(x, *wa, *wb))
      out.grading_violations.push_back(*bad);
    return x;
  };
  SuiteReport rep;
  using detail::lam;
  using detail::scalar;
  const SuperScalar k = SuperScalar::k();

  const FieldPoly wft = W.element(emb.ft), wF = W.element(emb.F);
  {
    LambdaPoly got = B(wft, wft);
    LambdaPoly want = lam(SuperScalar(-2) * wF, 1) + lam(scalar(ar, SuperScalar(2) * SuperScalar::k(3)), 1, 1, 1);
    rep.add("{w(f~)_L w(f~)} = -2w(F) + 2k^3 lam chi", got == want, detail::eq_detail(got, want));
  }

  // G superconformal; c derived.
  SuperScalar c;
  {
    bool ok = true;
    std::string det;
    try {
      auto r = check_superconformal(W.table(), sp.G);
      c = r.central_charge;
      out.central_charge = c;
      out.central_charges["G"] = c;
      det = "c = " + c.str();
    } catch (const NotSuperconformal& e) {
      ok = false;
      det = e.what();
    }
    rep.add("G = -(2/k^2) w(F) is superconformal", ok, det);
    LambdaPoly got = B(sp.G, sp.G);
    LambdaPoly want = conformal_operator(W.table(), 6, sp.G) + lam(scalar(ar, SuperScalar(-2) * k), 1, 2, 1);
    rep.add("{G_L G} = (2d + chi D + 3 lam) G - 2k lam^2 chi", got == want, detail::eq_detail(got, want));
  }

  // {w(v_{2i-1}^(4i-2))_L w(F)} and {w(v_{2i}^(4i))_L w(F)}.
  for (int i = 1; i <= n; ++i) {
    FieldPoly a = W.gen(2 * i - 1, 4 * i - 2);
    LambdaPoly want = SuperScalar::k(2) * (lam(SuperScalar(Rational(2 * i - 1, 2)) * D.apply(D.apply(a)), 1) +
                                           lam(SuperScalar(Rational(1, 2)) * D.apply(a), 1, 0, 1) +
                                           lam(SuperScalar(i) * a, 1, 1, 0));
    LambdaPoly got = B(a, wF);
    rep.add("{w(v_" + std::to_string(2 * i - 1) + "^(" + std::to_string(4 * i - 2) + "))_L w(F)} = k^2(" +
                std::to_string(i) + " lam + chi D/2 + (" + std::to_string(2 * i - 1) + "/2) d) w(..)",
            got == want, detail::eq_detail(got, want));
  }
  for (int i = 2; i <= n; ++i) {
    FieldPoly a = W.gen(2 * i, 4 * i);
    LambdaPoly want = SuperScalar::k(2) * (lam(SuperScalar(-i) * D.apply(D.apply(a)), 1) +
                                           lam(SuperScalar(Rational(-1, 2)) * D.apply(a), 1, 0, 1) +
                                           lam(SuperScalar(Rational(-(2 * i + 1), 2)) * a, 1, 1, 0));
    LambdaPoly got = B(a, wF);
    rep.add("{w(v_" + std::to_string(2 * i) + "^(" + std::to_string(4 * i) + "))_L w(F)} = -k^2((" +
                std::to_string(2 * i + 1) + "/2) lam + chi D/2 + " + std::to_string(i) + " d) w(..)",
            got == want, detail::eq_detail(got, want));
  }

  // W^{N=1}_{osp(1|2)} is G-primary.
  for (int j = 1; j <= 2 * n; ++j) {
    if (j == 2) continue;
    FieldPoly a = W.gen(j, 2 * j);
    auto r = check_primary(W.table(), sp.G, a, j + 1);
    rep.add("w(v_" + std::to_string(j) + "^(" + std::to_string(2 * j) + ")) is G-primary of weight " +
                Rational(j + 1, 2).str(),
            r.ok, r.ok ? std::string() : r.residual);
  }
  {
    auto r = check_primary(W.table(), sp.G, wft, 2);
    rep.add("w(f~) is G-primary of weight 1", r.ok, r.residual);
  }

  // J and the N=2 structure.
  {
    LambdaPoly got = B(sp.J, sp.J);
    LambdaPoly want = lam(-sp.G, 1) + lam(scalar(ar, -(c * SuperScalar(Rational(1, 3)))), 1, 1, 1);
    rep.add("{J_L J} = -G - (c/3) lam chi", got == want, detail::eq_detail(got, want));
  }
  const Derivation Dt = derivation_from_element(W.table(), sp.J);
  {
    bool ok = true;
    std::string det;
    for (std::uint32_t g = 0; g < W.size() && ok; ++g) {
      FieldPoly x = W.gen(g);
      FieldPoly r1 = Dt.apply(Dt.apply(x)) - Derivation::partial().apply(x);
      FieldPoly r2 = D.apply(Dt.apply(x)) + Dt.apply(D.apply(x));
      if (!r1.is_zero()) ok = false, det = "D~^2 != d on " + x.str() + ": " + r1.str();
      else if (!r2.is_zero()) ok = false, det = "D D~ != -D~ D on " + x.str() + ": " + r2.str();
    }
    rep.add("D~ = J_(0|0): D~^2 = d, D D~ = -D~ D", ok, det);
  }
  auto n0 = induced_lambda(W.table_ptr());
  std::shared_ptr<Bracket> n2;
  {
    auto r = verify_susy_compat(*n0, Dt);
    rep.add("D~ is compatible with the induced lambda-bracket", r.ok, r.ok ? std::string() : r.counterexample + ": " + r.residual);
    if (r.ok) {
      try {
        n2 = induced_BigLambda(n0, D, Dt);
      } catch (const NotASusyStructure& e) {
        rep.add("N=2 bracket from (D, D~)", false, e.what());
      }
    }
  }
  if (n2) {
    bool ok = true;
    std::string det;
    try {
      auto r = check_superconformal(*n2, sp.J);
      out.central_charges["J"] = r.central_charge;
      ok = r.central_charge == c;
      det = "c = " + r.central_charge.str();
    } catch (const NotSuperconformal& e) {
      ok = false;
      det = e.what();
    }
    rep.add("J is N=2 superconformal with the central charge of G", ok, det);
  }

  // W^{N=2}_{osp(1|2)} is J-primary; D~-images are triangular.
  for (int i = 2; i <= n; ++i) {
    FieldPoly a = W.gen(2 * i - 1, 4 * i - 2);
    const std::string name = "w(v_" + std::to_string(2 * i - 1) + "^(" + std::to_string(4 * i - 2) + "))";
    LambdaPoly ja = B(sp.J, a);
    LambdaPoly want = lam(Dt.apply(a), 1);
    rep.add("{J_L " + name + "} = D~ " + name, ja == want, detail::eq_detail(ja, want));
    if (n2) {
      auto r = check_primary(*n2, sp.J, a, 2 * i);
      rep.add(name + " is J-primary of weight " + std::to_string(i), r.ok, r.residual);
    }
    for (int j = 2; j <= i - 1; ++j) out.c_ji[{std::max(j, i - j), i}] = SuperScalar();
    LambdaPoly x = B(wft, a);
    bool ok = x.terms().size() == 1 && x.terms().begin()->first == LambdaPoly::Key{0, 0};
    std::string det;
    if (ok) {
      const FieldPoly& p = x.terms().begin()->second;
      const Monomial lin{make_factor(w_generator_index(Variant::Susy, 2 * i, 4 * i), {})};
      for (const auto& [m, s] : p.terms()) {
        if (m == lin) {
          if (s != SuperScalar(-1)) ok = false, det = "linear coefficient " + s.str();
          continue;
        }
        bool allowed = false;
        if (m.size() == 2 && factor_word(m[0]) == DerWord{} && factor_word(m[1]) == DerWord{}) {
          auto t0 = w_generator_tag(Variant::Susy, factor_gen(m[0]));
          auto t1 = w_generator_tag(Variant::Susy, factor_gen(m[1]));
          if (t0.i % 2 == 0 && t1.i % 2 == 0 && t0.i + t1.i == 2 * i && std::max(t0.i, t1.i) >= 4) {
            allowed = true;
            int j = std::max(t0.i, t1.i) / 2;
            out.c_ji[{j, i}] = s;
          }
        }
        if (!allowed) ok = false, det = "unexpected term " + FieldPoly::product(ar, m, s).str();
      }
      if (p.coeff(lin).is_zero()) ok = false, det = "missing linear term";
    } else {
      det = "bracket is not lambda-free: " + x.str();
    }
    for (int j = 2; j <= i - 1; ++j) {
      if (2 * i - 2 * j < 2) continue;
      LieElement br = super_bracket(mb.vt(2 * j, 4 * j), mb.v(2 * i - 1, 4 * i - 2));
      out.c_ji_formula[{std::max(j, i - j), i}] -= W.lie().form(mb.vt(2 * i - 2 * j, 4 * i - 4 * j), br);
    }
    for (int j = 2; j <= i - 1; ++j) {
      auto key = std::make_pair(std::max(j, i - j), i);
      if (ok && out.c_ji[key] != SuperScalar(out.c_ji_formula[key]))
        ok = false, det = "c_" + std::to_string(key.first) + "," + std::to_string(i) + " = " + out.c_ji[key].str() +
                          " but the closed form gives " + out.c_ji_formula[key].str();
    }
    rep.add("{w(f~)_L " + name + "} = -w(v_" + std::to_string(2 * i) + "^(" + std::to_string(4 * i) +
                ")) + sum c_ji w(v_2j) w(v_2i-2j)",
            ok, ok ? x.str() : det);
  }
  return rep;
}

// Non-SUSY W-algebra: conformal vector, the two N=1 structures and the N=2 structure.
inline SuiteReport suite_section5_nonsusy(int n, Section5Data* data = nullptr) {
  auto w = build_walgebra(Variant::NonSusy, n);
  const auto& W = *w;
  const auto& emb = W.lie().emb;
  const auto& mb = W.lie().basis;
  const ArenaPtr& ar = W.arena();
  const auto sp = special_elements(W);
  const Derivation P = Derivation::partial();
  Section5Data local;
  Section5Data& out = data ? *data : local;
  auto B = [&](const FieldPoly& a, const FieldPoly& b) {
    LambdaPoly x = W(a, b);
    ++out.graded_brackets;
    auto wa = a.weight2(), wb = b.weight2();
    if (!wa || !wb)
      out.grading_violations.push_back("inhomogeneous argument in {" + a.str() + " , " + b.str() + "}");
    else if (auto bad = grading_violation(x, *wa, *wb))
      out.grading_violations.push_back(*bad);
    return x;
  };
  SuiteReport rep;
  using detail::lam;
  using detail::scalar;
  const SuperScalar k = SuperScalar::k();

  const FieldPoly nf = W.element(emb.f), nft = W.element(emb.ft), nF = W.element(emb.F), nU = W.element(emb.U);
  const FieldPoly quad = SuperScalar(-2) * nF + SuperScalar(Rational(1, 2)) * (nU * nU);
  {
    FieldPoly got = B(nf, nf).coeff(0, 0);
    rep.add("nu(f)_(0) nu(f) = -2 nu(F) + nu(U)^2/2", got == quad, got.str());
    got = B(nft, nft).coeff(0, 0);
    rep.add("nu(f~)_(0) nu(f~) = 2 nu(F) - nu(U)^2/2", got == -quad, got.str());
    got = B(nf, nft).coeff(0, 0);
    rep.add("nu(f)_(0) nu(f~) = 0", got.is_zero(), got.str());
  }
  {
    LambdaPoly got = B(nf, nf);
    LambdaPoly want = lam(quad, 0) + lam(scalar(ar, -SuperScalar::k(2)), 0, 2);
    rep.add("{nu(f)_lam nu(f)} = -2 nu(F) + nu(U)^2/2 - k^2 lam^2", got == want, detail::eq_detail(got, want));
    got = B(nft, nft);
    want = lam(-quad, 0) + lam(scalar(ar, SuperScalar::k(2)), 0, 2);
    rep.add("{nu(f~)_lam nu(f~)} = 2 nu(F) - nu(U)^2/2 + k^2 lam^2", got == want, detail::eq_detail(got, want));
  }

  // L conformal; W^{N=0}_{sl2} is L-primary.
  {
    bool ok = true;
    std::string det;
    try {
      auto r = check_superconformal(W.table(), sp.L);
      out.central_charge = r.central_charge;
      out.central_charges["L"] = r.central_charge;
      det = "c = " + r.central_charge.str();
    } catch (const NotSuperconformal& e) {
      ok = false;
      det = e.what();
    }
    rep.add("L = (2/k)(nu(F) - nu(U)^2/4) is conformal", ok, det);
  }
  for (int m = 1; m <= 2 * n; ++m)
    for (int s = 0; s <= 1; ++s) {
      if (m == 2 && s == 0) continue;
      std::uint32_t g = w_generator_index(Variant::NonSusy, m, 2 * m - s);
      auto r = check_primary(W.table(), sp.L, W.gen(g), W.arena()->weight2[g]);
      rep.add(W.arena()->names[g] + " is L-primary of weight " + W.weight(g).str(), r.ok, r.residual);
    }

  // D = G_(0), D~ = G~_(0).
  const Derivation D = derivation_from_element(W.table(), sp.G);
  const Derivation Dt = derivation_from_element(W.table(), sp.G_tilde);
  bool structure_ok = true;
  for (const auto& [name, d] : {std::pair<const char*, const Derivation*>{"D = G_(0)", &D}, {"D~ = G~_(0)", &Dt}}) {
    auto r = verify_susy_compat(W.table(), *d);
    structure_ok = structure_ok && r.ok;
    rep.add(std::string(name) + ": square is d and compatible with the bracket", r.ok,
            r.ok ? std::string() : r.counterexample + ": " + r.residual);
  }
  {
    bool ok = true;
    std::string det;
    for (std::uint32_t g = 0; g < W.size() && ok; ++g) {
      FieldPoly x = W.gen(g);
      FieldPoly r = D.apply(Dt.apply(x)) + Dt.apply(D.apply(x));
      if (!r.is_zero()) ok = false, det = "on " + x.str() + ": " + r.str();
    }
    structure_ok = structure_ok && ok;
    rep.add("D D~ = -D~ D", ok, det);
  }
  if (!structure_ok) return rep;

  auto check_n1 = [&](const std::shared_ptr<const Bracket>& t, const FieldPoly& G, const std::string& gname,
                      const std::vector<std::uint32_t>& prim) {
    bool ok = true;
    std::string det;
    try {
      auto r = check_superconformal(*t, G);
      out.central_charges[gname] = r.central_charge;
      det = "c = " + r.central_charge.str();
    } catch (const NotSuperconformal& e) {
      ok = false;
      det = e.what();
    }
    rep.add(gname + " is N=1 superconformal", ok, det);
    for (auto g : prim) {
      auto r = check_primary(*t, G, W.gen(g), W.arena()->weight2[g]);
      rep.add(W.arena()->names[g] + " is " + gname + "-primary of weight " + W.weight(g).str(), r.ok, r.residual);
    }
  };
  {
    std::vector<std::uint32_t> prim, prim_t;
    for (int j = 1; j <= 2 * n; ++j)
      if (j != 2) prim.push_back(w_generator_index(Variant::NonSusy, j, 2 * j - 1));
    for (int i = 2; i <= n; ++i) prim_t.push_back(w_generator_index(Variant::NonSusy, 2 * i - 1, 4 * i - 2));
    for (int i = 1; i <= n; ++i) prim_t.push_back(w_generator_index(Variant::NonSusy, 2 * i - 1, 4 * i - 3));
    check_n1(induced_Lambda_from_D(W.table_ptr(), D), sp.G, "G", prim);
    check_n1(induced_Lambda_from_D(W.table_ptr(), Dt), sp.G_tilde, "G~", prim_t);
  }

  // J: the four N=0 identities, and J-primaries.
  const FieldPoly& J = sp.J;
  const SuperScalar cL = out.central_charge.value_or(SuperScalar());
  {
    auto op = [&](int lam2, const FieldPoly& a) {  // (2d + (lam2/2) lam) a
      return lam(SuperScalar(2) * P.apply(a), 0) + lam(SuperScalar(Rational(lam2, 2)) * a, 0, 1);
    };
    LambdaPoly got = B(D.apply(Dt.apply(J)), J), want = -op(4, J);
    rep.add("{D D~ J_lam J} = -(2d + 2 lam) J", got == want, detail::eq_detail(got, want));
    got = B(Dt.apply(J), J), want = lam(-D.apply(J), 0);
    rep.add("{D~ J_lam J} = -D J", got == want, detail::eq_detail(got, want));
    got = B(D.apply(J), J), want = lam(Dt.apply(J), 0);
    rep.add("{D J_lam J} = D~ J", got == want, detail::eq_detail(got, want));
    got = B(J, J), want = lam(scalar(ar, SuperScalar(2) * k), 0, 1);
    rep.add("{J_lam J} = 2k lam", got == want, detail::eq_detail(got, want));
    LambdaPoly want_c = lam(scalar(ar, -(cL * SuperScalar(Rational(1, 3)))), 0, 1);
    rep.add("{J_lam J} = -(c/3) lam with c from L", got == want_c, detail::eq_detail(got, want_c));
    for (int i = 2; i <= n; ++i) {
      std::uint32_t g = w_generator_index(Variant::NonSusy, 2 * i - 1, 4 * i - 3);
      FieldPoly a = W.gen(g);
      const int d2 = W.arena()->weight2[g];
      const std::string nm = W.arena()->names[g];
      bool ok = B(D.apply(Dt.apply(J)), a) == -op(2 * d2, a) && B(Dt.apply(J), a) == lam(-D.apply(a), 0) &&
                B(D.apply(J), a) == lam(Dt.apply(a), 0) && B(J, a).is_zero();
      rep.add(nm + " satisfies the four J-primary identities", ok);
    }
  }
  std::shared_ptr<Bracket> n2;
  try {
    n2 = induced_BigLambda(W.table_ptr(), D, Dt);
  } catch (const NotASusyStructure& e) {
    rep.add("N=2 bracket from (D, D~)", false, e.what());
  }
  if (n2) {
    bool ok = true;
    std::string det;
    try {
      auto r = check_superconformal(*n2, J);
      out.central_charges["J"] = r.central_charge;
      ok = r.central_charge == cL;
      det = "c = " + r.central_charge.str();
    } catch (const NotSuperconformal& e) {
      ok = false;
      det = e.what();
    }
    rep.add("J is N=2 superconformal with the central charge of L", ok, det);
    for (int i = 2; i <= n; ++i) {
      std::uint32_t g = w_generator_index(Variant::NonSusy, 2 * i - 1, 4 * i - 3);
      auto r = check_primary(*n2, J, W.gen(g), W.arena()->weight2[g]);
      rep.add(W.arena()->names[g] + " is J-primary (N=2 bracket)", r.ok, r.residual);
    }
  }

  return rep;
}


// Leading-term relations between nu(f), nu(f~) and the generators, as stated
// for the generator changes. Not part of the superconformal structure checks.
inline SuiteReport suite_generator_changes(int n) {
  auto w = build_walgebra(Variant::NonSusy, n);
  const auto& W = *w;
  const auto& emb = W.lie().emb;
  const auto& mb = W.lie().basis;
  SuiteReport rep;
  using detail::lam;
  const FieldPoly nf = W.element(emb.f), nft = W.element(emb.ft);
  for (int i = 1; i <= 2 * n; ++i) {
    if (i == 2) continue;
    FieldPoly want = W.gen(i, 2 * i);
    for (int j = 2; j <= i - 1; ++j) {
      FieldPoly x = W.element(super_bracket(emb.f, mb.v(j, 2 * j - 2)));
      FieldPoly y = W.element(mb.natural(super_bracket(mb.vt(j, 2 * j), mb.v(i, 2 * i - 1))));
      want -= SuperScalar(j % 2 ? -1 : 1) * (x * y);
    }
    LambdaPoly got = W(nf, W.gen(i, 2 * i - 1));
    rep.add("{nu(f)_lam nu(v_" + std::to_string(i) + "^(" + std::to_string(2 * i - 1) + "))} = nu(v_" +
                std::to_string(i) + "^(" + std::to_string(2 * i) + ")) - sum_j (...)",
            got == lam(want, 0), detail::eq_detail(got, lam(want, 0)));
  }
  for (int i = 2; i <= n; ++i) {
    LambdaPoly got = W(nft, W.gen(2 * i - 1, 4 * i - 2)), want = lam(W.gen(2 * i, 4 * i), 0);
    rep.add("{nu(f~)_lam nu(v_" + std::to_string(2 * i - 1) + "^(" + std::to_string(4 * i - 2) + "))} = nu(v_" +
                std::to_string(2 * i) + "^(" + std::to_string(4 * i) + "))",
            got == want, detail::eq_detail(got, want));
  }
  for (int i = 1; i <= n; ++i) {
    LambdaPoly got = W(nft, W.gen(2 * i - 1, 4 * i - 3)), want = lam(-W.gen(2 * i, 4 * i - 1), 0);
    rep.add("{nu(f~)_lam nu(v_" + std::to_string(2 * i - 1) + "^(" + std::to_string(4 * i - 3) + "))} = -nu(v_" +
                std::to_string(2 * i) + "^(" + std::to_string(4 * i - 1) + "))",
            got == want, detail::eq_detail(got, want));
  }
  return rep;
}


// ---------------------------------------------------------------------------
// Oracle equivalence, axioms and grading.

struct OracleReport {
  SuiteReport report;
  std::size_t pairs = 0;
  std::vector<OracleStats> stats;  // per generator
};

// Reduction brackets of the oracle generators against the master-formula table.
inline OracleReport suite_oracle(Variant v, int n) {
  auto w = build_walgebra(v, n);
  Reduction red(v, w->structure_ptr());
  OracleReport out;
  std::vector<FieldPoly> gens;
  for (std::uint32_t g = 0; g < w->size(); ++g) {
    OracleStats st;
    gens.push_back(oracle_generator(red, w_generator_tag(v, g), &st));
    out.stats.push_back(st);
  }
  std::size_t bad = 0;
  std::string first;
  for (std::uint32_t g = 0; g < w->size(); ++g)
    for (std::uint32_t h = 0; h < w->size(); ++h) {
      ++out.pairs;
      LambdaPoly o = red.reduced_bracket(gens[g], gens[h]);
      LambdaPoly m = substitute(w->table().entry(g, h), gens, red.arena());
      auto grade = grading_violation(w->table().entry(g, h), w->arena()->weight2[g], w->arena()->weight2[h]);
      if (o != m || grade) {
        if (!bad++)
          first = "{" + w->arena()->names[g] + " , " + w->arena()->names[h] + "}: " +
                  (grade ? *grade : "oracle " + o.str() + " vs master " + m.str());
      }
    }
  out.report.add(std::string(variant_name(v)) + " n=" + std::to_string(n) + ": oracle equals master on " +
                     std::to_string(out.pairs) + " generator pairs",
                 bad == 0, bad ? std::to_string(bad) + " mismatches; first " + first : std::string());
  return out;
}

inline SuiteReport suite_axioms(Variant v, int n, std::size_t jacobi_samples, std::uint64_t seed = 1) {
  auto w = build_walgebra(v, n);
  SuiteReport rep;
  const std::string tag = std::string(variant_name(v)) + " n=" + std::to_string(n);
  auto skew = check_skewsymmetry(static_cast<const Bracket&>(w->table()));
  rep.add(tag + ": skewsymmetry on all generator pairs", skew.ok, skew.ok ? "" : skew.counterexample + ": " + skew.residual);
  auto jac = check_jacobi_generators(w->table(), jacobi_samples, seed);
  const std::size_t d = w->size();
  rep.add(tag + ": Jacobi on " + (jacobi_samples ? std::to_string(jacobi_samples) + " seeded" : std::to_string(d * d * d) + " (all)") +
              " generator triples",
          jac.ok, jac.ok ? "" : jac.counterexample + ": " + jac.residual);
  return rep;
}

// Every table entry respects the conformal-weight balance.
inline SuiteReport suite_grading(Variant v, int n) {
  auto w = build_walgebra(v, n);
  SuiteReport rep;
  std::size_t bad = 0;
  std::string first;
  for (const auto& [key, x] : w->table().entries())
    if (auto g = grading_violation(x, w->arena()->weight2[key.first], w->arena()->weight2[key.second]))
      if (!bad++) first = *g;
  rep.add(std::string(variant_name(v)) + " n=" + std::to_string(n) + ": grading balance on " +
              std::to_string(w->table().entries().size()) + " table entries",
          bad == 0, first);
  return rep;
}

}  // namespace wkit
