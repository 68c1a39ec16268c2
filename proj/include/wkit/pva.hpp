#pragma once

// Lambda-bracket engines on free differential algebras and the axiom checkers.

#include "wkit/freealg.hpp"
#include "wkit/liesuper.hpp"

#include <nlohmann/json.hpp>

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace wkit {

struct MissingEntry : std::out_of_range {
  using std::out_of_range::out_of_range;
};
struct NotASusyStructure : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NotSuperconformal : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct PreconditionViolation : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct AxiomReport {
  std::string name;
  bool ok = true;
  std::string counterexample;
  std::string residual;

  nlohmann::json to_json() const {
    nlohmann::json j{{"name", name}, {"status", ok ? "pass" : "fail"}};
    if (!ok) {
      j["counterexample"] = counterexample;
      j["residual"] = residual;
    }
    return j;
  }
};

// Any lambda-bracket on the differential algebra of an arena.
class Bracket {
 public:
  virtual ~Bracket() = default;
  virtual int N() const = 0;
  virtual const ArenaPtr& arena() const = 0;
  virtual const DerivationSet& derivations() const = 0;
  virtual LambdaPoly operator()(const FieldPoly& a, const FieldPoly& b) const = 0;

  FieldPoly gen(std::uint32_t g) const { return FieldPoly::generator(arena(), g); }
  FieldPoly derive(Der d, const FieldPoly& p) const { return derivations().get(d).apply(p); }
};

// Bracket given on generator pairs, extended by sesquilinearity, skewsymmetry and Leibniz.
class BracketTable : public Bracket {
 public:
  BracketTable(ArenaPtr ar, int N) : ar_(std::move(ar)), N_(N), ders_(DerivationSet::structural(*ar_)) {}

  int N() const override { return N_; }
  const ArenaPtr& arena() const override { return ar_; }
  const DerivationSet& derivations() const override { return ders_; }
  DerivationSet& mutable_derivations() { return ders_; }

  void set(std::uint32_t i, std::uint32_t j, LambdaPoly v) {
    if (v.N() != N_) throw TupleMismatch("entry has the wrong tuple");
    entries_[{i, j}] = std::move(v);
    cache_.clear();
  }
  bool has(std::uint32_t i, std::uint32_t j) const { return entries_.count({i, j}) > 0; }
  const std::map<std::pair<std::uint32_t, std::uint32_t>, LambdaPoly>& entries() const { return entries_; }

  // Fill missing orderings from skewsymmetry.
  void seal() {
    const std::uint32_t n = ar_->size();
    for (std::uint32_t i = 0; i < n; ++i)
      for (std::uint32_t j = 0; j < n; ++j)
        if (!has(i, j)) {
          if (!has(j, i)) throw MissingEntry("no bracket for generators " + ar_->names[i] + ", " + ar_->names[j]);
          entries_[{i, j}] = skew_image(j, i, entries_.at({j, i}));
        }
    cache_.clear();
  }

  // {b_Lambda a} from {a_Lambda b} = x.
  LambdaPoly skew_image(std::uint32_t a, std::uint32_t b, const LambdaPoly& x) const {
    int pa = ar_->parity[a], pb = ar_->parity[b];
    LambdaPoly s = substitute_minus(ders_, x);
    return ((pa * pb + N_) % 2) ? s : -s;
  }

  const LambdaPoly& entry(std::uint32_t i, std::uint32_t j) const {
    auto it = entries_.find({i, j});
    if (it == entries_.end()) throw MissingEntry("no bracket for generators " + ar_->names[i] + ", " + ar_->names[j]);
    return it->second;
  }

  LambdaPoly operator()(const FieldPoly& a, const FieldPoly& b) const override {
    LambdaPoly out(ar_, N_);
    auto [ae, ao] = a.split_parity();
    if (!ae.is_zero()) out += right_leibniz(ae, 0, b);
    if (!ao.is_zero()) out += right_leibniz(ao, 1, b);
    return out;
  }

 private:
  // Apply the sesquilinearity rules of a derivative word w to X = {A_Lambda h}.
  LambdaPoly apply_word(int pa, DerWord w, LambdaPoly x) const {
    int sgn = (pa + N_) % 2;
    if (w.delta) {
      x = d_plus_var(ders_, Der::Dt, x);
      if (sgn) x = -x;
    }
    if (w.eps) {
      x = d_plus_var(ders_, Der::D, x);
      if (sgn) x = -x;
    }
    for (int t = 0; t < w.a; ++t) x = d_plus_var(ders_, Der::Partial, x);
    return x;
  }

  // {h_Lambda word(g)} for generators h, g, cached.
  const LambdaPoly& gen_factor(std::uint32_t h, Factor f) const {
    std::lock_guard<std::mutex> lock(mu_);
    auto key = std::make_pair(h, f);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    LambdaPoly v = apply_word(ar_->parity[h], factor_word(f), entry(h, factor_gen(f)));
    return cache_.emplace(key, std::move(v)).first->second;
  }

  // {A_Lambda B} for A of parity pa; Leibniz over the factors of B.
  LambdaPoly right_leibniz(const FieldPoly& a, int pa, const FieldPoly& b) const {
    LambdaPoly out(ar_, N_);
    std::map<std::uint32_t, LambdaPoly> left_cache;  // {A_Lambda g} per generator g
    const bool a_is_gen = a.size() == 1 && a.terms()[0].first.size() == 1 &&
                          factor_word(a.terms()[0].first[0]) .a == 0 && factor_word(a.terms()[0].first[0]).eps == 0 &&
                          factor_word(a.terms()[0].first[0]).delta == 0;
    for (const auto& [m, c] : b.terms()) {
      int prefix = 0;
      for (std::size_t i = 0; i < m.size(); ++i) {
        Factor f = m[i];
        LambdaPoly x;
        if (a_is_gen) {
          std::uint32_t h = factor_gen(a.terms()[0].first[0]);
          x = a.terms()[0].second * gen_factor(h, f);
        } else {
          std::uint32_t g = factor_gen(f);
          auto it = left_cache.find(g);
          if (it == left_cache.end()) it = left_cache.emplace(g, left_gen(a, pa, g)).first;
          x = apply_word(pa, factor_word(f), it->second);
        }
        if (!x.is_zero()) {
          Monomial pre(m.begin(), m.begin() + i), post(m.begin() + i + 1, m.end());
          int sign = ((pa + N_) * prefix) % 2 ? -1 : 1;
          FieldPoly left = FieldPoly::product(ar_, pre, sign > 0 ? c : -c);
          FieldPoly right = FieldPoly::product(ar_, post);
          x = left * x;
          if (!post.empty()) x = x * right;
          out += x;
        }
        prefix ^= factor_parity(*ar_, f);
      }
    }
    return out;
  }

  // {A_Lambda g} = -(-1)^{p(A)p(g)+N} {g_{-Lambda-nabla} A}.
  LambdaPoly left_gen(const FieldPoly& a, int pa, std::uint32_t g) const {
    LambdaPoly x = right_leibniz(FieldPoly::generator(ar_, g), ar_->parity[g], a);
    LambdaPoly s = substitute_minus(ders_, x);
    return ((pa * ar_->parity[g] + N_) % 2) ? s : -s;
  }

  ArenaPtr ar_;
  int N_;
  DerivationSet ders_;
  std::map<std::pair<std::uint32_t, std::uint32_t>, LambdaPoly> entries_;
  mutable std::mutex mu_;
  mutable std::map<std::pair<std::uint32_t, Factor>, LambdaPoly> cache_;
};

inline LambdaPoly extend_bracket(const Bracket& t, const FieldPoly& a, const FieldPoly& b) { return t(a, b); }

// ---------------------------------------------------------------------------
// Affine PVAs on the module basis of sl(n+1|n).

// Structure constants of g in the basis v_c.
struct LieStructure {
  std::shared_ptr<const LieData> lie;
  std::vector<std::vector<std::vector<std::pair<std::size_t, Rational>>>> bracket;  // [c][d] -> coords
  std::vector<std::vector<Rational>> form;

  static std::shared_ptr<const LieStructure> build(std::shared_ptr<const LieData> lie) {
    auto s = std::make_shared<LieStructure>();
    s->lie = lie;
    const auto& mb = lie->basis;
    const std::size_t d = mb.size();
    s->bracket.assign(d, std::vector<std::vector<std::pair<std::size_t, Rational>>>(d));
    s->form.assign(d, std::vector<Rational>(d));
    for (std::size_t a = 0; a < d; ++a)
      for (std::size_t b = 0; b < d; ++b) {
        const auto& A = mb.indices()[a];
        const auto& B = mb.indices()[b];
        int g = ModuleBasis::grade2(A.i, A.m) + ModuleBasis::grade2(B.i, B.m);
        if (g == 0) s->form[a][b] = lie->form(mb.v_flat(a), mb.v_flat(b));
        if (g > 2 * lie->n() * 2 || g < -2 * lie->n() * 2) continue;
        auto c = mb.coords(super_bracket(mb.v_flat(a), mb.v_flat(b)));
        for (std::size_t t = 0; t < d; ++t)
          if (!c[t].is_zero()) s->bracket[a][b].emplace_back(t, c[t]);
      }
    return s;
  }
};

inline std::string basis_name(const BasisIndex& b) {
  return "v(" + std::to_string(b.i) + "," + std::to_string(b.m) + ")";
}

inline ArenaPtr make_affine_arena(const LieData& lie, bool susy) {
  std::vector<std::string> names;
  std::vector<int> par, w2;
  for (const auto& b : lie.basis.indices()) {
    names.push_back(basis_name(b));
    int p = ModuleBasis::parity(b.i, b.m);
    int g2 = ModuleBasis::grade2(b.i, b.m);
    par.push_back(susy ? 1 - p : p);
    w2.push_back(susy ? 1 - g2 : 2 - g2);
  }
  return Arena::make(susy ? ArenaKind::SusyAffine : ArenaKind::Affine, lie.n(), susy ? 1 : 0, names, par, w2);
}

// Lie element to a linear FieldPoly in the affine arena.
inline FieldPoly lie_to_field(const ArenaPtr& ar, const std::vector<Rational>& coords) {
  std::vector<FieldPoly::Term> terms;
  for (std::size_t c = 0; c < coords.size(); ++c)
    if (!coords[c].is_zero()) terms.emplace_back(Monomial{make_factor(std::uint32_t(c), {})}, SuperScalar(coords[c]));
  return FieldPoly::from_terms(ar, std::move(terms));
}

// {a_lambda b} = [a,b] + k (a|b) lambda on basis vectors a = v_c, b = v_d.
inline LambdaPoly affine_entry(const LieStructure& s, const ArenaPtr& ar, std::size_t c, std::size_t d) {
  LambdaPoly r(ar, 0);
  std::vector<FieldPoly::Term> terms;
  for (const auto& [t, x] : s.bracket[c][d]) terms.emplace_back(Monomial{make_factor(std::uint32_t(t), {})}, SuperScalar(x));
  r.add_term(0, 0, FieldPoly::from_terms(ar, std::move(terms)));
  if (!s.form[c][d].is_zero()) r.add_term(1, 0, FieldPoly::constant(ar, SuperScalar::k() * SuperScalar(s.form[c][d])));
  return r;
}

// {a-bar_Lambda b-bar} = (-1)^{p(a)} ([a,b]-bar + k (a|b) chi).
inline LambdaPoly susy_affine_entry(const LieStructure& s, const ArenaPtr& ar, std::size_t c, std::size_t d) {
  LambdaPoly r(ar, 1);
  std::vector<FieldPoly::Term> terms;
  for (const auto& [t, x] : s.bracket[c][d]) terms.emplace_back(Monomial{make_factor(std::uint32_t(t), {})}, SuperScalar(x));
  r.add_term(0, 0, FieldPoly::from_terms(ar, std::move(terms)));
  if (!s.form[c][d].is_zero()) r.add_term(0, 1, FieldPoly::constant(ar, SuperScalar::k() * SuperScalar(s.form[c][d])));
  const auto& b = s.lie->basis.indices()[c];
  return ModuleBasis::parity(b.i, b.m) ? -r : r;
}

inline std::shared_ptr<BracketTable> affine_table(const LieStructure& s) {
  auto ar = make_affine_arena(*s.lie, false);
  auto t = std::make_shared<BracketTable>(ar, 0);
  for (std::size_t c = 0; c < ar->size(); ++c)
    for (std::size_t d = 0; d < ar->size(); ++d) t->set(c, d, affine_entry(s, ar, c, d));
  return t;
}

inline std::shared_ptr<BracketTable> susy_affine_table(const LieStructure& s) {
  auto ar = make_affine_arena(*s.lie, true);
  auto t = std::make_shared<BracketTable>(ar, 1);
  for (std::size_t c = 0; c < ar->size(); ++c)
    for (std::size_t d = 0; d < ar->size(); ++d) t->set(c, d, susy_affine_entry(s, ar, c, d));
  return t;
}

// Convenience forms taking Lie elements.
inline LambdaPoly affine_bracket(const BracketTable& t, const LieData& lie, const LieElement& a, const LieElement& b) {
  return t(lie_to_field(t.arena(), lie.basis.coords(a)), lie_to_field(t.arena(), lie.basis.coords(b)));
}
inline LambdaPoly susy_affine_bracket(const BracketTable& t, const LieData& lie, const LieElement& a,
                                      const LieElement& b) {
  return affine_bracket(t, lie, a, b);
}

// ---------------------------------------------------------------------------
// Induced brackets.

// N=0 bracket read off the chi sector (N=1) or minus the chi chi~ sector (N=2).
class InducedLambda : public Bracket {
 public:
  explicit InducedLambda(std::shared_ptr<const Bracket> base) : base_(std::move(base)) {
    if (base_->N() < 1) throw PreconditionViolation("induced_lambda needs a SUSY bracket");
  }
  int N() const override { return 0; }
  const ArenaPtr& arena() const override { return base_->arena(); }
  const DerivationSet& derivations() const override { return base_->derivations(); }
  LambdaPoly operator()(const FieldPoly& a, const FieldPoly& b) const override {
    LambdaPoly x = (*base_)(a, b);
    LambdaPoly r(arena(), 0);
    int s = base_->N() == 1 ? 1 : 3;
    for (const auto& [k, c] : x.terms())
      if (k.second == s) r.add_term(k.first, 0, base_->N() == 1 ? c : -c);
    return r;
  }

 private:
  std::shared_ptr<const Bracket> base_;
};

inline std::shared_ptr<Bracket> induced_lambda(std::shared_ptr<const Bracket> base) {
  return std::make_shared<InducedLambda>(std::move(base));
}

// {a_Lambda b} = {Da_lambda b} + chi {a_lambda b}.
class InducedFromD : public Bracket {
 public:
  InducedFromD(std::shared_ptr<const Bracket> base, Derivation d) : base_(std::move(base)) {
    if (base_->N() != 0) throw PreconditionViolation("induced_Lambda_from_D needs an N=0 bracket");
    ders_.D = std::move(d);
  }
  int N() const override { return 1; }
  const ArenaPtr& arena() const override { return base_->arena(); }
  const DerivationSet& derivations() const override { return ders_; }
  LambdaPoly operator()(const FieldPoly& a, const FieldPoly& b) const override {
    LambdaPoly r(arena(), 1);
    LambdaPoly x = (*base_)(ders_.D->apply(a), b);
    for (const auto& [k, c] : x.terms()) r.add_term(k.first, 0, c);
    LambdaPoly y = (*base_)(a, b);
    for (const auto& [k, c] : y.terms()) r.add_term(k.first, 1, c);
    return r;
  }

 private:
  std::shared_ptr<const Bracket> base_;
  DerivationSet ders_;
};

// {D~D a_lambda b} - chi {D~a_lambda b} + chi~ {Da_lambda b} - chi chi~ {a_lambda b}.
class InducedFromDD : public Bracket {
 public:
  InducedFromDD(std::shared_ptr<const Bracket> base, Derivation d, Derivation dt) : base_(std::move(base)) {
    if (base_->N() != 0) throw PreconditionViolation("induced_BigLambda needs an N=0 bracket");
    ders_.D = std::move(d);
    ders_.Dt = std::move(dt);
  }
  int N() const override { return 2; }
  const ArenaPtr& arena() const override { return base_->arena(); }
  const DerivationSet& derivations() const override { return ders_; }
  LambdaPoly operator()(const FieldPoly& a, const FieldPoly& b) const override {
    LambdaPoly r(arena(), 2);
    FieldPoly da = ders_.D->apply(a), dta = ders_.Dt->apply(a);
    auto put = [&](const LambdaPoly& x, int sector, int sign) {
      for (const auto& [k, c] : x.terms()) r.add_term(k.first, sector, sign > 0 ? c : -c);
    };
    put((*base_)(ders_.Dt->apply(da), b), 0, 1);
    put((*base_)(dta, b), 1, -1);
    put((*base_)(da, b), 2, 1);
    put((*base_)(a, b), 3, -1);
    return r;
  }

 private:
  std::shared_ptr<const Bracket> base_;
  DerivationSet ders_;
};

// ---------------------------------------------------------------------------
// Axioms.

inline AxiomReport skewsymmetry_residual(const Bracket& t, const FieldPoly& a, const FieldPoly& b) {
  AxiomReport r{"skewsymmetry", true, {}, {}};
  auto pa = a.parity(), pb = b.parity();
  if (!pa || !pb) throw PreconditionViolation("skewsymmetry check needs homogeneous inputs");
  LambdaPoly ab = t(a, b), ba = t(b, a);
  LambdaPoly s = substitute_minus(t.derivations(), ab);
  LambdaPoly res = ((*pa * *pb + t.N()) % 2) ? ba - s : ba + s;
  if (!res.is_zero()) {
    r.ok = false;
    r.counterexample = "(" + a.str() + ", " + b.str() + ")";
    r.residual = res.str();
  }
  return r;
}

// Skewsymmetry on all generator pairs (both orderings computed independently).
inline AxiomReport check_skewsymmetry(const Bracket& t) {
  const auto n = t.arena()->size();
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = i; j < n; ++j) {
      auto r = skewsymmetry_residual(t, t.gen(i), t.gen(j));
      if (!r.ok) return r;
    }
  return {"skewsymmetry", true, {}, {}};
}

// Same check on a table, comparing stored entries only.
inline AxiomReport check_skewsymmetry(const BracketTable& t) {
  const auto n = t.arena()->size();
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = i; j < n; ++j) {
      LambdaPoly res = t.entry(j, i) - t.skew_image(i, j, t.entry(i, j));
      if (!res.is_zero())
        return {"skewsymmetry", false, "(" + t.arena()->names[i] + ", " + t.arena()->names[j] + ")", res.str()};
    }
  return {"skewsymmetry", true, {}, {}};
}

namespace detail {

// {a_Lambda X} for X in C[Gamma] (x) P given as a LambdaPoly in Gamma; result Lambda-first.
inline BiLambdaPoly bracket_into_gamma(const Bracket& t, const FieldPoly& a, int pa, const LambdaPoly& x) {
  BiLambdaPoly out(t.arena(), t.N());
  const int N = t.N();
  for (const auto& [kg, c] : x.terms()) {
    int sign = ((pa + N) * sector_size(kg.second)) % 2 ? -1 : 1;
    LambdaPoly z = t(a, c);
    for (const auto& [kl, c2] : z.terms()) {
      // Gamma-vars t then Lambda-vars s: t s = (-1)^{|t||s|} s t.
      int s2 = (sector_size(kg.second) * sector_size(kl.second)) % 2 ? -sign : sign;
      out.add_term({kl.first, kg.first, kl.second, kg.second}, s2 > 0 ? c2 : -c2);
    }
  }
  return out;
}

// {b_Gamma X} for X in C[Lambda] (x) P.
inline BiLambdaPoly bracket_over_lambda(const Bracket& t, const FieldPoly& b, int pb, const LambdaPoly& x) {
  BiLambdaPoly out(t.arena(), t.N());
  const int N = t.N();
  for (const auto& [kl, c] : x.terms()) {
    int sign = ((pb + N) * sector_size(kl.second)) % 2 ? -1 : 1;
    LambdaPoly z = t(b, c);
    for (const auto& [kg, c2] : z.terms()) out.add_term({kl.first, kg.first, kl.second, kg.second}, sign > 0 ? c2 : -c2);
  }
  return out;
}

inline std::int64_t binom(int n, int k) {
  std::int64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// {X_{Gamma+Lambda} c} for X in C[Lambda] (x) P; Lambda-variables leave the left slot
// past the bracket, which has parity N.
inline BiLambdaPoly bracket_shifted(const Bracket& t, const LambdaPoly& x, const FieldPoly& c) {
  BiLambdaPoly out(t.arena(), t.N());
  for (const auto& [kl, coef0] : x.terms()) {
    const FieldPoly coef = (t.N() * sector_size(kl.second)) % 2 ? -coef0 : coef0;
    LambdaPoly z = t(coef, c);
    for (const auto& [kt, c2] : z.terms()) {
      // Expand theta-sector into (Lambda, Gamma) pieces.
      std::vector<std::tuple<int, int, int>> pieces;  // sign, sl, sg
      switch (kt.second) {
        case 0: pieces = {{1, 0, 0}}; break;
        case 1: pieces = {{1, 1, 0}, {1, 0, 1}}; break;
        case 2: pieces = {{1, 2, 0}, {1, 0, 2}}; break;
        case 3: pieces = {{1, 3, 0}, {1, 1, 2}, {-1, 2, 1}, {1, 0, 3}}; break;
      }
      for (int j = 0; j <= kt.first; ++j) {
        std::int64_t bc = binom(kt.first, j);
        for (const auto& [ps, sl, sg] : pieces) {
          BiLambdaPoly::Key left{kl.first, 0, kl.second, 0};
          BiLambdaPoly::Key right{j, kt.first - j, sl, sg};
          auto [vs, key] = BiLambdaPoly::var_product(left, right);
          std::int64_t coeff = bc * ps * vs;
          out.add_term(key, SuperScalar(coeff) * c2);
        }
      }
    }
  }
  return out;
}

}  // namespace detail

inline BiLambdaPoly jacobi_residual(const Bracket& t, const FieldPoly& a, const FieldPoly& b, const FieldPoly& c) {
  auto pa = a.parity(), pb = b.parity();
  if (!pa || !pb || !c.parity()) throw PreconditionViolation("Jacobi check needs homogeneous inputs");
  const int N = t.N();
  BiLambdaPoly lhs = detail::bracket_into_gamma(t, a, *pa, t(b, c));
  BiLambdaPoly mid = detail::bracket_shifted(t, t(a, b), c);
  BiLambdaPoly rhs = detail::bracket_over_lambda(t, b, *pb, t(a, c));
  int s1 = ((*pa + 1) * N) % 2 ? -1 : 1;
  int s2 = ((*pa + N) * (*pb + N)) % 2 ? -1 : 1;
  return lhs - SuperScalar(s1) * mid - SuperScalar(s2) * rhs;
}

inline AxiomReport check_jacobi(const Bracket& t, const FieldPoly& a, const FieldPoly& b, const FieldPoly& c) {
  BiLambdaPoly res = jacobi_residual(t, a, b, c);
  if (res.is_zero()) return {"jacobi", true, {}, {}};
  return {"jacobi", false, "(" + a.str() + ", " + b.str() + ", " + c.str() + ")", res.str()};
}

// All generator triples, or `samples` seeded random triples when samples > 0.
inline AxiomReport check_jacobi_generators(const Bracket& t, std::size_t samples = 0, std::uint64_t seed = 1) {
  const std::uint32_t n = t.arena()->size();
  auto run = [&](std::uint32_t i, std::uint32_t j, std::uint32_t l) {
    return check_jacobi(t, t.gen(i), t.gen(j), t.gen(l));
  };
  if (samples == 0) {
    for (std::uint32_t i = 0; i < n; ++i)
      for (std::uint32_t j = 0; j < n; ++j)
        for (std::uint32_t l = 0; l < n; ++l) {
          auto r = run(i, j, l);
          if (!r.ok) return r;
        }
  } else {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::uint32_t> pick(0, n - 1);
    for (std::size_t s = 0; s < samples; ++s) {
      auto r = run(pick(rng), pick(rng), pick(rng));
      if (!r.ok) return r;
    }
  }
  return {"jacobi", true, {}, {}};
}

// D acting as the (0|0)-th coefficient of {tau_Lambda .} (N=1), or tau_(0) for N=0.
inline Derivation derivation_from_element(const Bracket& t, const FieldPoly& tau) {
  std::vector<FieldPoly> images;
  for (std::uint32_t g = 0; g < t.arena()->size(); ++g) images.push_back(t(tau, t.gen(g)).coeff(0, 0));
  return Derivation::table(std::move(images));
}

// D^2 = d on generators and D{a_lambda b} = {Da_lambda b} + (-1)^{p(a)} {a_lambda Db} on generator pairs.
inline AxiomReport verify_susy_compat(const Bracket& t, const Derivation& d) {
  if (t.N() != 0) throw PreconditionViolation("verify_susy_compat needs an N=0 bracket");
  const auto n = t.arena()->size();
  Derivation part = Derivation::partial();
  for (std::uint32_t g = 0; g < n; ++g) {
    FieldPoly x = t.gen(g);
    FieldPoly res = d.apply(d.apply(x)) - part.apply(x);
    if (!res.is_zero()) return {"susy_compat", false, "D^2 != d on " + x.str(), res.str()};
  }
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = 0; j < n; ++j) {
      FieldPoly a = t.gen(i), b = t.gen(j);
      LambdaPoly lhs = t(a, b).apply(d, -1);
      LambdaPoly rhs = t(d.apply(a), b);
      LambdaPoly r2 = t(a, d.apply(b));
      rhs = t.arena()->parity[i] ? rhs - r2 : rhs + r2;
      LambdaPoly res = lhs - rhs;
      if (!res.is_zero()) return {"susy_compat", false, "(" + a.str() + ", " + b.str() + ")", res.str()};
    }
  return {"susy_compat", true, {}, {}};
}

inline std::shared_ptr<Bracket> induced_Lambda_from_D(std::shared_ptr<const Bracket> t, const Derivation& d) {
  auto rep = verify_susy_compat(*t, d);
  if (!rep.ok) throw NotASusyStructure(rep.counterexample + ": " + rep.residual);
  return std::make_shared<InducedFromD>(std::move(t), d);
}

inline std::shared_ptr<Bracket> induced_BigLambda(std::shared_ptr<const Bracket> t, const Derivation& d,
                                                  const Derivation& dt) {
  for (const auto* x : {&d, &dt}) {
    auto rep = verify_susy_compat(*t, *x);
    if (!rep.ok) throw NotASusyStructure(rep.counterexample + ": " + rep.residual);
  }
  for (std::uint32_t g = 0; g < t->arena()->size(); ++g) {
    FieldPoly x = t->gen(g);
    FieldPoly res = d.apply(dt.apply(x)) + dt.apply(d.apply(x));
    if (!res.is_zero()) throw NotASusyStructure("D D~ + D~ D != 0 on " + x.str() + ": " + res.str());
  }
  return std::make_shared<InducedFromDD>(std::move(t), d, dt);
}

// (2d + c_lam lambda + sum chi_i D_i) a.
inline LambdaPoly conformal_operator(const Bracket& t, int lam_coeff2, const FieldPoly& a) {
  const int N = t.N();
  LambdaPoly r(t.arena(), N);
  r.add_term(0, 0, SuperScalar(2) * t.derive(Der::Partial, a));
  r.add_term(1, 0, SuperScalar(Rational(lam_coeff2, 2)) * a);
  if (N >= 1) r.add_term(0, 1, t.derive(Der::D, a));
  if (N >= 2) r.add_term(0, 2, t.derive(Der::Dt, a));
  return r;
}

struct SuperconformalResult {
  SuperScalar central_charge;
  AxiomReport report;
};

// {G_Lambda G} = (2d + (4-N) lambda + sum chi_i D_i) G + lambda^{3-N} chi_1..chi_N c/3.
inline SuperconformalResult check_superconformal(const Bracket& t, const FieldPoly& G) {
  const int N = t.N();
  auto pg = G.parity();
  if (!pg || *pg != N % 2) throw PreconditionViolation("superconformal vector must have parity N mod 2");
  LambdaPoly res = t(G, G) - conformal_operator(t, 2 * (4 - N), G);
  int top_sector = N == 0 ? 0 : N == 1 ? 1 : 3;
  FieldPoly cterm = res.coeff(3 - N, top_sector);
  LambdaPoly rest = res;
  rest.mutable_terms().erase({3 - N, top_sector});
  bool constant = cterm.is_zero() || (cterm.size() == 1 && cterm.terms()[0].first.empty());
  if (!rest.is_zero() || !constant)
    throw NotSuperconformal("residual: " + res.str());
  SuperScalar c = cterm.is_zero() ? SuperScalar() : SuperScalar(3) * cterm.terms()[0].second;
  return {c, {"superconformal", true, {}, {}}};
}

// {G_Lambda a} = (2d + 2 Delta lambda + sum chi_i D_i) a exactly; delta2 = 2 Delta.
inline AxiomReport check_primary(const Bracket& t, const FieldPoly& G, const FieldPoly& a, int delta2) {
  LambdaPoly res = t(G, a) - conformal_operator(t, 2 * delta2, a);
  if (res.is_zero()) return {"primary", true, {}, {}};
  return {"primary", false, a.str() + " (2Δ=" + std::to_string(delta2) + ")", res.str()};
}

// Weight read off the lambda-linear term: {G_Lambda a} = ... + 2 Delta lambda a + O(Lambda^2).
inline std::optional<Rational> weight_from_bracket(const Bracket& t, const FieldPoly& G, const FieldPoly& a) {
  LambdaPoly x = t(G, a);
  FieldPoly lin = x.coeff(1, 0);
  if (a.is_zero()) return std::nullopt;
  const auto& [m0, c0] = a.terms()[0];
  SuperScalar ratio = lin.coeff(m0) * c0.inv_unit();
  if (!ratio.is_rational()) return std::nullopt;
  if (SuperScalar(ratio) * a != lin) return std::nullopt;
  return ratio.as_rational() / Rational(2);
}

// ---------------------------------------------------------------------------
// Sugawara and Kac-Todorov vectors.

// L = (1/k) sum_c v^c v_c.
inline FieldPoly sugawara(const LieStructure& s, const ArenaPtr& ar) {
  const auto& mb = s.lie->basis;
  FieldPoly L(ar);
  const SuperScalar inv_k = SuperScalar::k(-1);
  for (std::size_t c = 0; c < mb.size(); ++c) {
    auto dual = mb.coords(mb.vt_flat(c));
    FieldPoly up = lie_to_field(ar, dual);
    L += inv_k * (up * FieldPoly::generator(ar, c));
  }
  return L;
}

// tau = (1/k)(sum (-1)^{p(i)} D(u^i) u_i + (1/3k) sum (-1)^{p(i)p(t)} (u^i|[u^j,u^t]) u_i u_j u_t).
// literal_index_sign uses (-1)^i with i the flat basis index instead of (-1)^{p(i)}.
inline FieldPoly kac_todorov(const LieStructure& s, const ArenaPtr& ar, bool literal_index_sign = false) {
  const auto& mb = s.lie->basis;
  const std::size_t d = mb.size();
  const SuperScalar inv_k = SuperScalar::k(-1);
  Derivation D = Derivation::structural_d();
  FieldPoly tau(ar);
  std::vector<int> par(d);
  for (std::size_t i = 0; i < d; ++i) par[i] = ModuleBasis::parity(mb.indices()[i].i, mb.indices()[i].m);
  for (std::size_t i = 0; i < d; ++i) {
    FieldPoly up = lie_to_field(ar, mb.coords(mb.vt_flat(i)));
    int sgn = literal_index_sign ? int(i % 2) : par[i];
    FieldPoly term = D.apply(up) * FieldPoly::generator(ar, i);
    tau += SuperScalar(sgn ? -1 : 1) * inv_k * term;
  }
  std::vector<std::vector<LieElement>> duals_bracket(d, std::vector<LieElement>(d));
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t t = 0; t < d; ++t) duals_bracket[j][t] = super_bracket(mb.vt_flat(j), mb.vt_flat(t));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t t = 0; t < d; ++t) {
        if (duals_bracket[j][t].is_zero()) continue;
        Rational f = s.lie->form(mb.vt_flat(i), duals_bracket[j][t]);
        if (f.is_zero()) continue;
        if ((par[i] * par[t]) % 2) f = -f;
        Monomial m{make_factor(i, {}), make_factor(j, {}), make_factor(t, {})};
        tau += FieldPoly::product(ar, m, inv_k * inv_k * SuperScalar(f / Rational(3)));
      }
  return tau;
}


// ---------------------------------------------------------------------------
// Affine suites: Sugawara on the affine PVA, Kac-Todorov on the N=1 affine PVA.

struct AffineSuiteResult {
  SuiteReport report;
  std::optional<SuperScalar> central_charge;
};

inline AffineSuiteResult suite_affine(int n) {
  auto st = LieStructure::build(build_lie_data(n));
  auto t = affine_table(*st);
  const FieldPoly L = sugawara(*st, t->arena());
  AffineSuiteResult out;
  try {
    auto r = check_superconformal(*t, L);
    out.central_charge = r.central_charge;
    out.report.add("Sugawara L is conformal", true, "c = " + r.central_charge.str());
  } catch (const NotSuperconformal& e) {
    out.report.add("Sugawara L is conformal", false, e.what());
  }
  for (std::uint32_t g = 0; g < t->arena()->size(); ++g) {
    auto r = check_primary(*t, L, t->gen(g), 2);
    out.report.add(t->arena()->names[g] + " is L-primary of weight 1", r.ok, r.residual);
  }
  return out;
}

inline AffineSuiteResult suite_susy_affine(int n, bool literal_index_sign = false) {
  auto st = LieStructure::build(build_lie_data(n));
  auto t = susy_affine_table(*st);
  const FieldPoly tau = kac_todorov(*st, t->arena(), literal_index_sign);
  AffineSuiteResult out;
  try {
    auto r = check_superconformal(*t, tau);
    out.central_charge = r.central_charge;
    out.report.add("Kac-Todorov tau is N=1 superconformal", true, "c = " + r.central_charge.str());
  } catch (const NotSuperconformal& e) {
    out.report.add("Kac-Todorov tau is N=1 superconformal", false, e.what());
  }
  for (std::uint32_t g = 0; g < t->arena()->size(); ++g) {
    auto r = check_primary(*t, tau, t->gen(g), 1);
    out.report.add(t->arena()->names[g] + " is tau-primary of weight 1/2", r.ok, r.residual);
  }
  return out;
}

}  // namespace wkit
