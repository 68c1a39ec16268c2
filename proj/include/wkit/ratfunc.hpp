#pragma once

// Rational functions in the level k over Q(i), kept as reduced fractions with a
// monic denominator. Used by the generator oracle to solve over Q(i)(k).

#include "wkit/scalar.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace wkit {

class KPoly {
 public:
  KPoly() = default;
  KPoly(GaussianRational c) {  // NOLINT(implicit)
    if (!c.is_zero()) c_.push_back(c);
  }
  static KPoly monomial(GaussianRational c, int e) {
    KPoly p;
    if (c.is_zero()) return p;
    p.c_.assign(std::size_t(e) + 1, GaussianRational());
    p.c_[std::size_t(e)] = c;
    return p;
  }

  bool is_zero() const { return c_.empty(); }
  int degree() const { return int(c_.size()) - 1; }
  const GaussianRational& lead() const { return c_.back(); }
  GaussianRational at(int e) const { return e < int(c_.size()) ? c_[std::size_t(e)] : GaussianRational(); }
  const std::vector<GaussianRational>& coeffs() const { return c_; }

  friend KPoly operator+(const KPoly& a, const KPoly& b) {
    KPoly r;
    r.c_.resize(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = a.at(int(i)) + b.at(int(i));
    r.trim();
    return r;
  }
  KPoly operator-() const {
    KPoly r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
  }
  friend KPoly operator-(const KPoly& a, const KPoly& b) { return a + (-b); }
  friend KPoly operator*(const KPoly& a, const KPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    KPoly r;
    r.c_.assign(a.c_.size() + b.c_.size() - 1, GaussianRational());
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i].is_zero()) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) r.c_[i + j] = r.c_[i + j] + a.c_[i] * b.c_[j];
    }
    r.trim();
    return r;
  }
  friend KPoly operator*(const GaussianRational& s, const KPoly& a) { return KPoly(s) * a; }
  friend bool operator==(const KPoly& a, const KPoly& b) { return a.c_ == b.c_; }

  // a = q b + r with deg r < deg b.
  static std::pair<KPoly, KPoly> divmod(KPoly a, const KPoly& b) {
    if (b.is_zero()) throw NonInvertible("polynomial division by zero");
    KPoly q;
    const GaussianRational inv = b.lead().inverse();
    while (!a.is_zero() && a.degree() >= b.degree()) {
      int e = a.degree() - b.degree();
      KPoly t = monomial(a.lead() * inv, e);
      q = q + t;
      a = a - t * b;
    }
    return {q, a};
  }

  KPoly monic() const {
    if (is_zero()) return *this;
    return lead().inverse() * *this;
  }

  static KPoly gcd(KPoly a, KPoly b) {
    while (!b.is_zero()) {
      auto r = divmod(a, b).second;
      a = std::move(b);
      b = std::move(r);
    }
    return a.monic();
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }
  std::vector<GaussianRational> c_;
};

class RatFunc {
 public:
  RatFunc() : den_(GaussianRational(1)) {}
  RatFunc(KPoly n) : num_(std::move(n)), den_(GaussianRational(1)) {}  // NOLINT(implicit)
  RatFunc(KPoly n, KPoly d) : num_(std::move(n)), den_(std::move(d)) { normalize(); }
  RatFunc(std::int64_t v) : RatFunc(KPoly(GaussianRational(v))) {}  // NOLINT(implicit)

  // SuperScalar with even kappa exponents only.
  static RatFunc from_scalar(const SuperScalar& s) {
    int lo = 0;
    for (const auto& [e, c] : s.terms()) {
      if (e % 2) throw std::domain_error("odd power of kappa in a level-k rational function");
      lo = std::min(lo, e / 2);
    }
    KPoly n;
    for (const auto& [e, c] : s.terms()) n = n + KPoly::monomial(c, e / 2 - lo);
    return RatFunc(n, KPoly::monomial(GaussianRational(1), -lo));
  }

  bool is_zero() const { return num_.is_zero(); }
  const KPoly& num() const { return num_; }
  const KPoly& den() const { return den_; }

  friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
    if (a.den_ == b.den_) return RatFunc(a.num_ + b.num_, a.den_);
    return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  RatFunc operator-() const {
    RatFunc r = *this;
    r.num_ = -r.num_;
    return r;
  }
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
    if (a.is_zero() || b.is_zero()) return {};
    return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b) {
    if (b.is_zero()) throw NonInvertible("rational function division by zero");
    return RatFunc(a.num_ * b.den_, a.den_ * b.num_);
  }
  friend bool operator==(const RatFunc& a, const RatFunc& b) { return a.num_ == b.num_ && a.den_ == b.den_; }

  // Laurent polynomial in k as a SuperScalar; nullopt if the denominator is not a power of k.
  std::optional<SuperScalar> to_scalar() const {
    const auto& d = den_.coeffs();
    for (std::size_t i = 0; i + 1 < d.size(); ++i)
      if (!d[i].is_zero()) return std::nullopt;
    const int shift = den_.degree();
    SuperScalar s;
    for (int e = 0; e <= num_.degree(); ++e) s += SuperScalar::monomial(num_.at(e), 2 * (e - shift));
    return s;
  }

 private:
  void normalize() {
    if (den_.is_zero()) throw NonInvertible("zero denominator");
    if (num_.is_zero()) {
      den_ = KPoly(GaussianRational(1));
      return;
    }
    KPoly g = KPoly::gcd(num_, den_);
    if (g.degree() > 0) {
      num_ = KPoly::divmod(num_, g).first;
      den_ = KPoly::divmod(den_, g).first;
    }
    GaussianRational l = den_.lead().inverse();
    num_ = l * num_;
    den_ = l * den_;
  }

  KPoly num_;
  KPoly den_;
};

}  // namespace wkit
