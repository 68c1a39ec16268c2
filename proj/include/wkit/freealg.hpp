#pragma once

// Free differential superalgebras on a finite alphabet, their derivations, and
// polynomials in the bracket variables (lambda, chi, chi~) with such coefficients.

#include "wkit/scalar.hpp"

#include <boost/container/small_vector.hpp>

#include <nlohmann/json.hpp>

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace wkit {

struct MissingDerivation : std::logic_error {
  using std::logic_error::logic_error;
};
struct TupleMismatch : std::logic_error {
  using std::logic_error::logic_error;
};
struct ArenaMismatch : std::logic_error {
  using std::logic_error::logic_error;
};

enum class ArenaKind { Affine, SusyAffine, WSusy, WNonSusy, Custom };

inline const char* arena_kind_name(ArenaKind k) {
  switch (k) {
    case ArenaKind::Affine: return "affine";
    case ArenaKind::SusyAffine: return "susy_affine";
    case ArenaKind::WSusy: return "w_susy";
    case ArenaKind::WNonSusy: return "w_nonsusy";
    case ArenaKind::Custom: return "custom";
  }
  return "?";
}

// Generator alphabet. structural_n counts the odd derivations D, D~ that act
// freely on words (1 for the SUSY affine arena); others are registered tables.
struct Arena {
  ArenaKind kind = ArenaKind::Custom;
  int n = 0;
  int structural_n = 0;
  std::vector<std::string> names;
  std::vector<int> parity;
  std::vector<int> weight2;  // twice the conformal weight
  std::uint64_t id = 0;

  std::size_t size() const { return names.size(); }

  static std::shared_ptr<const Arena> make(ArenaKind kind, int n, int structural_n, std::vector<std::string> names,
                                           std::vector<int> parity, std::vector<int> weight2) {
    static std::atomic<std::uint64_t> next{1};
    auto a = std::make_shared<Arena>();
    a->kind = kind;
    a->n = n;
    a->structural_n = structural_n;
    a->names = std::move(names);
    a->parity = std::move(parity);
    a->weight2 = std::move(weight2);
    a->id = next++;
    return a;
  }
};
using ArenaPtr = std::shared_ptr<const Arena>;

// d^a D^eps D~^delta.
struct DerWord {
  int a = 0;
  int eps = 0;
  int delta = 0;

  friend bool operator==(const DerWord&, const DerWord&) = default;

  std::string str() const {
    std::string s;
    if (a > 0) s = "∂^" + std::to_string(a);
    if (eps) s += s.empty() ? "D" : " D";
    if (delta) s += s.empty() ? "D~" : " D~";
    return s;
  }
};

// A factor packs (generator, DerWord) into one integer; sorting factor codes
// gives the monomial order: generator index, then a, eps, delta.
using Factor = std::uint32_t;

inline Factor make_factor(std::uint32_t gen, DerWord w) {
  return (gen << 12) | (std::uint32_t(w.a) << 2) | (std::uint32_t(w.eps) << 1) | std::uint32_t(w.delta);
}
inline std::uint32_t factor_gen(Factor f) { return f >> 12; }
inline DerWord factor_word(Factor f) { return {int((f >> 2) & 0x3ff), int((f >> 1) & 1), int(f & 1)}; }
inline int factor_parity(const Arena& ar, Factor f) {
  return (ar.parity[factor_gen(f)] + int((f >> 1) & 1) + int(f & 1)) & 1;
}
inline int factor_weight2(const Arena& ar, Factor f) {
  DerWord w = factor_word(f);
  return ar.weight2[factor_gen(f)] + 2 * w.a + w.eps + w.delta;
}

using Monomial = boost::container::small_vector<Factor, 4>;

inline int monomial_parity(const Arena& ar, const Monomial& m) {
  int p = 0;
  for (Factor f : m) p ^= factor_parity(ar, f);
  return p;
}
inline int monomial_weight2(const Arena& ar, const Monomial& m) {
  int w = 0;
  for (Factor f : m) w += factor_weight2(ar, f);
  return w;
}

// Sort an unordered product of factors with Koszul signs. Returns 0 if an odd factor repeats.
inline int canonicalize(const Arena& ar, Monomial& m) {
  int sign = 1;
  for (std::size_t i = 1; i < m.size(); ++i) {
    Factor x = m[i];
    int px = factor_parity(ar, x);
    std::size_t j = i;
    while (j > 0 && m[j - 1] > x) {
      if (px && factor_parity(ar, m[j - 1])) sign = -sign;
      m[j] = m[j - 1];
      --j;
    }
    m[j] = x;
  }
  for (std::size_t i = 1; i < m.size(); ++i)
    if (m[i] == m[i - 1] && factor_parity(ar, m[i])) return 0;
  return sign;
}

// Product of two sorted monomials: sign and merged monomial.
inline int multiply_monomials(const Arena& ar, const Monomial& a, const Monomial& b, Monomial& out) {
  out.clear();
  out.reserve(a.size() + b.size());
  int remaining_a_parity = monomial_parity(ar, a);
  int sign = 1;
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i] < b[j])) {
      remaining_a_parity ^= factor_parity(ar, a[i]);
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j] < a[i]) {
      if (remaining_a_parity && factor_parity(ar, b[j])) sign = -sign;
      out.push_back(b[j++]);
    } else {
      // equal factors
      if (factor_parity(ar, a[i])) return 0;
      remaining_a_parity ^= factor_parity(ar, a[i]);
      out.push_back(a[i++]);
      out.push_back(b[j++]);
    }
  }
  return sign;
}

class FieldPoly {
 public:
  using Term = std::pair<Monomial, SuperScalar>;

  FieldPoly() = default;
  explicit FieldPoly(ArenaPtr ar) : ar_(std::move(ar)) {}

  static FieldPoly constant(ArenaPtr ar, const SuperScalar& c) {
    FieldPoly p(std::move(ar));
    if (!c.is_zero()) p.terms_.emplace_back(Monomial{}, c);
    return p;
  }
  static FieldPoly generator(ArenaPtr ar, std::uint32_t g, DerWord w = {}, const SuperScalar& c = 1) {
    FieldPoly p(std::move(ar));
    if (!c.is_zero()) p.terms_.emplace_back(Monomial{make_factor(g, w)}, c);
    return p;
  }
  // Collect unsorted terms into canonical form.
  static FieldPoly from_terms(ArenaPtr ar, std::vector<Term> raw) {
    FieldPoly p(std::move(ar));
    std::sort(raw.begin(), raw.end(), [](const Term& x, const Term& y) { return x.first < y.first; });
    for (auto& t : raw) {
      if (t.second.is_zero()) continue;
      if (!p.terms_.empty() && p.terms_.back().first == t.first) {
        p.terms_.back().second += t.second;
        if (p.terms_.back().second.is_zero()) p.terms_.pop_back();
      } else {
        p.terms_.push_back(std::move(t));
      }
    }
    return p;
  }
  // Raw product of factors in the given order, normalized.
  static FieldPoly product(ArenaPtr ar, Monomial factors, const SuperScalar& c = 1) {
    int s = canonicalize(*ar, factors);
    FieldPoly p(std::move(ar));
    if (s != 0 && !c.is_zero()) p.terms_.emplace_back(std::move(factors), s > 0 ? c : -c);
    return p;
  }

  const ArenaPtr& arena() const { return ar_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  SuperScalar coeff(const Monomial& m) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                               [](const Term& t, const Monomial& k) { return t.first < k; });
    if (it != terms_.end() && it->first == m) return it->second;
    return {};
  }

  // Parity if homogeneous (zero counts as even).
  std::optional<int> parity() const {
    std::optional<int> p;
    for (const auto& t : terms_) {
      int q = monomial_parity(*ar_, t.first);
      if (!p) p = q;
      else if (*p != q) return std::nullopt;
    }
    return p ? p : std::optional<int>(0);
  }
  // Twice the conformal weight if homogeneous; nullopt for mixed or zero.
  std::optional<int> weight2() const {
    std::optional<int> w;
    for (const auto& t : terms_) {
      int q = monomial_weight2(*ar_, t.first);
      if (!w) w = q;
      else if (*w != q) return std::nullopt;
    }
    return w;
  }

  // Split by parity of monomials.
  std::pair<FieldPoly, FieldPoly> split_parity() const {
    FieldPoly e(ar_), o(ar_);
    for (const auto& t : terms_) (monomial_parity(*ar_, t.first) ? o : e).terms_.push_back(t);
    return {e, o};
  }

  friend FieldPoly operator+(const FieldPoly& x, const FieldPoly& y) {
    if (x.terms_.empty()) return y.ar_ ? y : FieldPoly(x.ar_);
    if (y.terms_.empty()) return x;
    check(x, y);
    FieldPoly r(x.ar_);
    r.terms_.reserve(x.terms_.size() + y.terms_.size());
    auto i = x.terms_.begin(), j = y.terms_.begin();
    while (i != x.terms_.end() || j != y.terms_.end()) {
      if (j == y.terms_.end() || (i != x.terms_.end() && i->first < j->first)) {
        r.terms_.push_back(*i++);
      } else if (i == x.terms_.end() || j->first < i->first) {
        r.terms_.push_back(*j++);
      } else {
        SuperScalar c = i->second + j->second;
        if (!c.is_zero()) r.terms_.emplace_back(i->first, std::move(c));
        ++i;
        ++j;
      }
    }
    return r;
  }
  FieldPoly operator-() const {
    FieldPoly r = *this;
    for (auto& t : r.terms_) t.second = -t.second;
    return r;
  }
  friend FieldPoly operator-(const FieldPoly& x, const FieldPoly& y) { return x + (-y); }
  FieldPoly& operator+=(const FieldPoly& y) { return *this = *this + y; }
  FieldPoly& operator-=(const FieldPoly& y) { return *this = *this - y; }

  friend FieldPoly operator*(const SuperScalar& c, const FieldPoly& x) {
    if (c.is_zero()) return FieldPoly(x.ar_);
    FieldPoly r = x;
    for (auto& t : r.terms_) t.second = c * t.second;
    return r;
  }

  friend FieldPoly operator*(const FieldPoly& x, const FieldPoly& y) {
    if (x.terms_.empty() || y.terms_.empty()) return FieldPoly(x.ar_ ? x.ar_ : y.ar_);
    check(x, y);
    std::vector<Term> raw;
    raw.reserve(x.terms_.size() * y.terms_.size());
    Monomial m;
    for (const auto& [mx, cx] : x.terms_)
      for (const auto& [my, cy] : y.terms_) {
        int s = multiply_monomials(*x.ar_, mx, my, m);
        if (s == 0) continue;
        SuperScalar c = cx * cy;
        raw.emplace_back(m, s > 0 ? std::move(c) : -c);
      }
    return from_terms(x.ar_, std::move(raw));
  }

  friend bool operator==(const FieldPoly& x, const FieldPoly& y) {
    if (x.terms_.empty() && y.terms_.empty()) return true;
    return x.ar_ == y.ar_ && x.terms_ == y.terms_;
  }
  friend bool operator!=(const FieldPoly& x, const FieldPoly& y) { return !(x == y); }

  static std::string monomial_str(const Arena& ar, const Monomial& m) {
    std::string s;
    for (Factor f : m) {
      if (!s.empty()) s += "·";
      std::string w = factor_word(f).str();
      s += w.empty() ? ar.names[factor_gen(f)] : w + "(" + ar.names[factor_gen(f)] + ")";
    }
    return s;
  }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto& [m, c] : terms_) {
      if (!s.empty()) s += " + ";
      std::string cs = c.str();
      if (m.empty()) s += cs;
      else if (cs == "1") s += monomial_str(*ar_, m);
      else s += "[" + cs + "]" + monomial_str(*ar_, m);
    }
    return s;
  }

  nlohmann::json to_json() const {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& [m, c] : terms_) {
      nlohmann::json mono = nlohmann::json::array();
      for (Factor f : m) mono.push_back({factor_word(f).str(), ar_->names[factor_gen(f)]});
      out.push_back({{"coeff", c.str()}, {"monomial", mono}});
    }
    return out;
  }

  static void check(const FieldPoly& x, const FieldPoly& y) {
    if (x.ar_ != y.ar_ && x.ar_ && y.ar_ && x.ar_->id != y.ar_->id) throw ArenaMismatch("polynomials from different arenas");
  }

  std::vector<Term>& mutable_terms() { return terms_; }

 private:
  ArenaPtr ar_;
  std::vector<Term> terms_;
};

inline FieldPoly normal_form(ArenaPtr ar, std::vector<std::pair<Monomial, SuperScalar>> raw) {
  std::vector<FieldPoly::Term> terms;
  for (auto& [m, c] : raw) {
    int s = canonicalize(*ar, m);
    if (s == 0) continue;
    terms.emplace_back(m, s > 0 ? c : -c);
  }
  return FieldPoly::from_terms(std::move(ar), std::move(terms));
}

enum class Der { Partial, D, Dt };

// An odd derivation given either structurally (acting on words) or by its values
// on generators, extended by Leibniz; it anticommutes with structural odd derivations
// and commutes with the partial derivative.
class Derivation {
 public:
  enum class Kind { Partial, StructD, StructDt, Table };

  static Derivation partial() { return Derivation(Kind::Partial); }
  static Derivation structural_d() { return Derivation(Kind::StructD); }
  static Derivation structural_dt() { return Derivation(Kind::StructDt); }
  static Derivation table(std::vector<FieldPoly> images) {
    Derivation d(Kind::Table);
    d.images_ = std::make_shared<std::vector<FieldPoly>>(std::move(images));
    return d;
  }

  Kind kind() const { return kind_; }
  int parity() const { return kind_ == Kind::Partial ? 0 : 1; }
  const std::vector<FieldPoly>& images() const { return *images_; }

  FieldPoly apply(const FieldPoly& p) const {
    if (p.is_zero()) return p;
    const Arena& ar = *p.arena();
    if (kind_ == Kind::StructD && ar.structural_n < 1) throw MissingDerivation("arena has no structural D");
    if (kind_ == Kind::StructDt && ar.structural_n < 2) throw MissingDerivation("arena has no structural D~");
    if (kind_ == Kind::Table) return apply_table(p);
    std::vector<FieldPoly::Term> raw;
    for (const auto& [m, c] : p.terms()) {
      int prefix = 0;
      for (std::size_t i = 0; i < m.size(); ++i) {
        Factor f = m[i];
        DerWord w = factor_word(f);
        int sign = 1;
        if (kind_ == Kind::Partial) {
          ++w.a;
        } else {
          if (prefix) sign = -sign;
          if (kind_ == Kind::StructD) {
            if (w.eps) {  // D^2 = d
              w.eps = 0;
              ++w.a;
            } else {
              w.eps = 1;
            }
          } else {
            if (w.eps) sign = -sign;  // pass D
            if (w.delta) {
              w.delta = 0;
              ++w.a;
            } else {
              w.delta = 1;
            }
          }
        }
        prefix ^= factor_parity(ar, f);
        Monomial nm = m;
        nm[i] = make_factor(factor_gen(f), w);
        int s2 = canonicalize(ar, nm);
        if (s2 == 0) continue;
        raw.emplace_back(std::move(nm), (sign * s2 > 0) ? c : -c);
      }
    }
    return FieldPoly::from_terms(p.arena(), std::move(raw));
  }

 private:
  explicit Derivation(Kind k) : kind_(k) {}

  // Image of a single factor d^a D^eps D~^delta g.
  FieldPoly factor_image(const ArenaPtr& ar, Factor f) const {
    DerWord w = factor_word(f);
    FieldPoly x = images_->at(factor_gen(f));
    if (!x.is_zero() && x.arena()->id != ar->id) throw ArenaMismatch("derivation image from another arena");
    if (w.delta) x = Derivation::structural_dt().apply(x);
    if (w.eps) x = Derivation::structural_d().apply(x);
    for (int t = 0; t < w.a; ++t) x = Derivation::partial().apply(x);
    if ((w.eps + w.delta) % 2) x = -x;
    return x;
  }

  FieldPoly apply_table(const FieldPoly& p) const {
    const ArenaPtr& arp = p.arena();
    const Arena& ar = *arp;
    FieldPoly out(arp);
    std::map<Factor, FieldPoly> cache;
    for (const auto& [m, c] : p.terms()) {
      int prefix = 0;
      for (std::size_t i = 0; i < m.size(); ++i) {
        auto it = cache.find(m[i]);
        if (it == cache.end()) it = cache.emplace(m[i], factor_image(arp, m[i])).first;
        const FieldPoly& img = it->second;
        if (!img.is_zero()) {
          Monomial pre(m.begin(), m.begin() + i), post(m.begin() + i + 1, m.end());
          FieldPoly left = FieldPoly::product(arp, pre, prefix ? -c : c);
          FieldPoly right = FieldPoly::product(arp, post);
          out += left * img * right;
        }
        prefix ^= factor_parity(ar, m[i]);
      }
    }
    return out;
  }

  Kind kind_;
  std::shared_ptr<std::vector<FieldPoly>> images_;
};

// The derivations available on an arena: partial always, D and D~ when present.
struct DerivationSet {
  std::optional<Derivation> D;
  std::optional<Derivation> Dt;

  static DerivationSet structural(const Arena& ar) {
    DerivationSet s;
    if (ar.structural_n >= 1) s.D = Derivation::structural_d();
    if (ar.structural_n >= 2) s.Dt = Derivation::structural_dt();
    return s;
  }
  const Derivation& get(Der d) const {
    static const Derivation part = Derivation::partial();
    if (d == Der::Partial) return part;
    const auto& o = d == Der::D ? D : Dt;
    if (!o) throw MissingDerivation(d == Der::D ? "no derivation D registered" : "no derivation D~ registered");
    return *o;
  }
};

inline FieldPoly apply_derivation(const DerivationSet& ds, Der d, const FieldPoly& p) { return ds.get(d).apply(p); }

// Sector bitmask: bit 0 = chi, bit 1 = chi~.
inline const char* sector_name(int s) {
  static const char* names[] = {"1", "chi", "chitilde", "chichitilde"};
  return names[s];
}
inline int sector_size(int s) { return (s & 1) + ((s >> 1) & 1); }

// (lambda^m1 s1)(lambda^m2 s2) = sign * lambda^(m1+m2+dm) s.
struct SectorProduct {
  int sign;
  int dm;
  int s;
};
inline SectorProduct sector_product(int s1, int s2) {
  int sign = 1, dm = 0;
  // chi^a1 chi~^b1 chi^a2 chi~^b2: move chi^a2 past chi~^b1.
  if ((s1 & 2) && (s2 & 1)) sign = -sign;
  int s = 0;
  if ((s1 & 1) && (s2 & 1)) {
    sign = -sign;  // chi^2 = -lambda
    ++dm;
  } else {
    s |= (s1 | s2) & 1;
  }
  if ((s1 & 2) && (s2 & 2)) {
    sign = -sign;
    ++dm;
  } else {
    s |= (s1 | s2) & 2;
  }
  return {sign, dm, s};
}

// Polynomial in lambda and the odd variables of an N-tuple, coefficients on the right.
class LambdaPoly {
 public:
  using Key = std::pair<int, int>;  // (lambda power, sector)

  LambdaPoly() = default;
  LambdaPoly(ArenaPtr ar, int N) : ar_(std::move(ar)), N_(N) {}

  static LambdaPoly from(const FieldPoly& c, int N, int lam = 0, int sector = 0) {
    LambdaPoly r(c.arena(), N);
    r.add_term(lam, sector, c);
    return r;
  }
  static LambdaPoly unit(ArenaPtr ar, int N) { return from(FieldPoly::constant(ar, 1), N); }

  const ArenaPtr& arena() const { return ar_; }
  int N() const { return N_; }
  const std::map<Key, FieldPoly>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  FieldPoly coeff(int lam, int sector) const {
    auto it = terms_.find({lam, sector});
    return it == terms_.end() ? FieldPoly(ar_) : it->second;
  }

  void add_term(int lam, int sector, const FieldPoly& c) {
    if (c.is_zero()) return;
    if (sector >= (1 << N_) ) throw TupleMismatch("sector not available for N=" + std::to_string(N_));
    auto [it, fresh] = terms_.try_emplace({lam, sector}, c);
    if (!fresh) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  friend LambdaPoly operator+(LambdaPoly x, const LambdaPoly& y) {
    check(x, y);
    if (!x.ar_) x.ar_ = y.ar_;
    for (const auto& [k, c] : y.terms_) x.add_term(k.first, k.second, c);
    return x;
  }
  LambdaPoly operator-() const {
    LambdaPoly r = *this;
    for (auto& [k, c] : r.terms_) c = -c;
    return r;
  }
  friend LambdaPoly operator-(const LambdaPoly& x, const LambdaPoly& y) { return x + (-y); }
  LambdaPoly& operator+=(const LambdaPoly& y) { return *this = *this + y; }
  LambdaPoly& operator-=(const LambdaPoly& y) { return *this = *this - y; }
  friend LambdaPoly operator*(const SuperScalar& c, const LambdaPoly& x) {
    LambdaPoly r(x.ar_, x.N_);
    if (c.is_zero()) return r;
    for (const auto& [k, p] : x.terms_) r.terms_.emplace(k, c * p);
    return r;
  }
  friend bool operator==(const LambdaPoly& x, const LambdaPoly& y) {
    return x.N_ == y.N_ && x.terms_ == y.terms_;
  }
  friend bool operator!=(const LambdaPoly& x, const LambdaPoly& y) { return !(x == y); }

  // Multiply by lambda^m * sector on the left.
  LambdaPoly times_var(int m, int sector) const {
    LambdaPoly r(ar_, N_);
    for (const auto& [k, c] : terms_) {
      auto sp = sector_product(sector, k.second);
      r.add_term(k.first + m + sp.dm, sp.s, sp.sign > 0 ? c : -c);
    }
    return r;
  }

  // phi * X, moving phi past the odd variables of X.
  friend LambdaPoly operator*(const FieldPoly& phi, const LambdaPoly& x) {
    LambdaPoly r(x.ar_ ? x.ar_ : phi.arena(), x.N_);
    if (phi.is_zero()) return r;
    auto [ev, od] = phi.split_parity();
    for (const auto& [k, c] : x.terms_) {
      FieldPoly part = ev * c;
      if (!od.is_zero()) part += (sector_size(k.second) % 2 ? -od : od) * c;
      r.add_term(k.first, k.second, part);
    }
    return r;
  }
  friend LambdaPoly operator*(const LambdaPoly& x, const FieldPoly& phi) {
    LambdaPoly r(x.ar_, x.N_);
    for (const auto& [k, c] : x.terms_) r.add_term(k.first, k.second, c * phi);
    return r;
  }

  // Module action of a derivation: d on coefficients; D(chi a) = -chi D(a) + 2 lambda a
  // when chi is its companion, -chi D(a) otherwise.
  LambdaPoly apply(const Derivation& d, int companion) const {
    LambdaPoly r(ar_, N_);
    for (const auto& [k, c] : terms_) {
      const int m = k.first, s = k.second;
      FieldPoly dc = d.apply(c);
      if (d.parity() == 0) {
        r.add_term(m, s, dc);
        continue;
      }
      // D(chi^a chi~^b c): each odd variable passed contributes a sign.
      r.add_term(m, s, sector_size(s) % 2 ? -dc : dc);
      if ((s & 1) && companion == 0) r.add_term(m + 1, s & ~1, 2 * c);
      if ((s & 2) && companion == 1) {
        // D(chi chi~ c) = -chi D(chi~ c) -> -chi * 2 lambda c
        int sign = (s & 1) ? -1 : 1;
        r.add_term(m + 1, s & ~2, SuperScalar(2 * sign) * c);
      }
    }
    return r;
  }

  // Total degree in the tuple, lambda counting 2 and each odd variable 1.
  std::optional<int> max_degree2() const {
    std::optional<int> d;
    for (const auto& [k, c] : terms_) d = std::max(d.value_or(0), 2 * k.first + sector_size(k.second));
    return d;
  }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::string s;
    static const char* sv[] = {"", "χ", "χ~", "χχ~"};
    for (const auto& [k, c] : terms_) {
      if (!s.empty()) s += " + ";
      std::string var;
      if (k.first == 1) var = "λ";
      else if (k.first > 1) var = "λ^" + std::to_string(k.first);
      var += sv[k.second];
      s += var.empty() ? "(" + c.str() + ")" : var + "(" + c.str() + ")";
    }
    return s;
  }

  nlohmann::json to_json() const {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [k, c] : terms_)
      terms.push_back({{"lam", k.first}, {"sector", sector_name(k.second)}, {"poly", c.to_json()}});
    return {{"N", N_}, {"terms", terms}};
  }

  static void check(const LambdaPoly& x, const LambdaPoly& y) {
    if (x.N_ != y.N_) throw TupleMismatch("lambda polynomials over different tuples");
  }

  std::map<Key, FieldPoly>& mutable_terms() { return terms_; }

 private:
  ArenaPtr ar_;
  int N_ = 0;
  std::map<Key, FieldPoly> terms_;
};

inline LambdaPoly mul_lambda(const LambdaPoly& x, const LambdaPoly& y) {
  LambdaPoly::check(x, y);
  LambdaPoly r(x.arena() ? x.arena() : y.arena(), x.N());
  for (const auto& [kx, cx] : x.terms())
    for (const auto& [ky, cy] : y.terms()) {
      auto sp = sector_product(kx.second, ky.second);
      int sign = sp.sign;
      auto [ev, od] = cx.split_parity();
      FieldPoly c = ev * cy;
      if (!od.is_zero()) c += (sector_size(ky.second) % 2 ? -od : od) * cy;
      r.add_term(kx.first + ky.first + sp.dm, sp.s, sign > 0 ? c : -c);
    }
  return r;
}

inline LambdaPoly apply_derivation_lambda(const DerivationSet& ds, Der d, const LambdaPoly& q) {
  if (d == Der::D && q.N() < 1) throw TupleMismatch("D needs an odd variable chi");
  if (d == Der::Dt && q.N() < 2) throw TupleMismatch("D~ needs an odd variable chi~");
  return q.apply(ds.get(d), d == Der::D ? 0 : d == Der::Dt ? 1 : -1);
}

// (D + chi) X, (D~ + chi~) X, (d + lambda) X.
inline LambdaPoly d_plus_var(const DerivationSet& ds, Der d, const LambdaPoly& x) {
  if (d == Der::Partial) return x.apply(ds.get(d), -1) + x.times_var(1, 0);
  int comp = d == Der::D ? 0 : 1;
  return x.apply(ds.get(d), comp) + x.times_var(0, comp == 0 ? 1 : 2);
}

// Substitute Lambda -> -Lambda - nabla, operators acting on coefficients, right to left.
inline LambdaPoly substitute_minus(const DerivationSet& ds, const LambdaPoly& x) {
  LambdaPoly r(x.arena(), x.N());
  for (const auto& [k, c] : x.terms()) {
    LambdaPoly y = LambdaPoly::from(c, x.N());
    if (k.second & 2) y = -d_plus_var(ds, Der::Dt, y);
    if (k.second & 1) y = -d_plus_var(ds, Der::D, y);
    for (int t = 0; t < k.first; ++t) y = -d_plus_var(ds, Der::Partial, y);
    r += y;
  }
  return r;
}

// Polynomial in two supercommuting tuples Lambda and Gamma, written Lambda-variables
// first, then Gamma-variables, then the coefficient.
class BiLambdaPoly {
 public:
  struct Key {
    int lam, gam, sl, sg;
    friend bool operator<(const Key& a, const Key& b) {
      return std::tie(a.lam, a.gam, a.sl, a.sg) < std::tie(b.lam, b.gam, b.sl, b.sg);
    }
    friend bool operator==(const Key& a, const Key& b) {
      return a.lam == b.lam && a.gam == b.gam && a.sl == b.sl && a.sg == b.sg;
    }
  };

  BiLambdaPoly() = default;
  BiLambdaPoly(ArenaPtr ar, int N) : ar_(std::move(ar)), N_(N) {}

  int N() const { return N_; }
  const std::map<Key, FieldPoly>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(Key k, const FieldPoly& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = terms_.try_emplace(k, c);
    if (!fresh) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }
  friend BiLambdaPoly operator+(BiLambdaPoly x, const BiLambdaPoly& y) {
    for (const auto& [k, c] : y.terms_) x.add_term(k, c);
    return x;
  }
  BiLambdaPoly operator-() const {
    BiLambdaPoly r = *this;
    for (auto& [k, c] : r.terms_) c = -c;
    return r;
  }
  friend BiLambdaPoly operator-(const BiLambdaPoly& x, const BiLambdaPoly& y) { return x + (-y); }
  friend BiLambdaPoly operator*(const SuperScalar& c, const BiLambdaPoly& x) {
    BiLambdaPoly r(x.ar_, x.N_);
    for (const auto& [k, p] : x.terms_) r.add_term(k, c * p);
    return r;
  }

  // (Lambda-part sl1, Gamma-part sg1) * (sl2, sg2), variables only.
  static std::tuple<int, Key> var_product(const Key& a, const Key& b) {
    int sign = 1;
    if (sector_size(a.sg) % 2 && sector_size(b.sl) % 2) sign = -sign;
    auto pl = sector_product(a.sl, b.sl);
    auto pg = sector_product(a.sg, b.sg);
    sign *= pl.sign * pg.sign;
    return {sign, Key{a.lam + b.lam + pl.dm, a.gam + b.gam + pg.dm, pl.s, pg.s}};
  }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::string s;
    static const char* sv[] = {"", "χ", "χ~", "χχ~"};
    static const char* gv[] = {"", "ξ", "ξ~", "ξξ~"};
    for (const auto& [k, c] : terms_) {
      if (!s.empty()) s += " + ";
      std::string var;
      if (k.lam) var += "λ^" + std::to_string(k.lam);
      var += sv[k.sl];
      if (k.gam) var += "γ^" + std::to_string(k.gam);
      var += gv[k.sg];
      s += var + "(" + c.str() + ")";
    }
    return s;
  }

 private:
  ArenaPtr ar_;
  int N_ = 0;
  std::map<Key, FieldPoly> terms_;
};

}  // namespace wkit
