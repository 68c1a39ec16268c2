#pragma once

// Exact scalars in Q(i)[kappa, kappa^-1], where the level is k = kappa^2.

#include <boost/container/small_vector.hpp>

#include <cstdint>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>

namespace wkit {

struct NonInvertible : std::domain_error {
  using std::domain_error::domain_error;
};

struct ArithmeticOverflow : std::overflow_error {
  using std::overflow_error::overflow_error;
};

struct ParseError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

namespace detail {

inline std::int64_t narrow(__int128 v) {
  if (v > INT64_MAX || v < INT64_MIN) throw ArithmeticOverflow("rational overflow");
  return static_cast<std::int64_t>(v);
}

inline __int128 gcd128(__int128 a, __int128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    __int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

}  // namespace detail

class Rational {
 public:
  constexpr Rational() = default;
  constexpr Rational(std::int64_t n) : num_(n) {}  // NOLINT(implicit)
  Rational(std::int64_t n, std::int64_t d) { set(n, d); }

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  bool is_zero() const { return num_ == 0; }
  bool is_integer() const { return den_ == 1; }
  int sign() const { return (num_ > 0) - (num_ < 0); }

  friend Rational operator+(const Rational& a, const Rational& b) {
    if (a.den_ == 1 && b.den_ == 1) return from128(__int128(a.num_) + b.num_, 1);
    return from128(__int128(a.num_) * b.den_ + __int128(b.num_) * a.den_,
                   __int128(a.den_) * b.den_);
  }
  friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }
  friend Rational operator*(const Rational& a, const Rational& b) {
    if (a.num_ == 0 || b.num_ == 0) return {};
    if (a.den_ == 1 && b.den_ == 1) return from128(__int128(a.num_) * b.num_, 1);
    return from128(__int128(a.num_) * b.num_, __int128(a.den_) * b.den_);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw NonInvertible("division by zero rational");
    return from128(__int128(a.num_) * b.den_, __int128(a.den_) * b.num_);
  }
  Rational operator-() const {
    Rational r;
    r.num_ = detail::narrow(-__int128(num_));
    r.den_ = den_;
    return r;
  }
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b) {
    return __int128(a.num_) * b.den_ < __int128(b.num_) * a.den_;
  }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
  friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

  double to_double() const { return double(num_) / double(den_); }

  std::string str() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

  static Rational parse(const std::string& s) {
    auto slash = s.find('/');
    try {
      std::size_t used = 0;
      if (slash == std::string::npos) {
        auto v = std::stoll(s, &used);
        if (used != s.size()) throw ParseError("bad rational: " + s);
        return Rational(v);
      }
      auto n = std::stoll(s.substr(0, slash), &used);
      if (used != slash) throw ParseError("bad rational: " + s);
      auto d = std::stoll(s.substr(slash + 1), &used);
      if (used != s.size() - slash - 1) throw ParseError("bad rational: " + s);
      if (d == 0) throw ParseError("zero denominator: " + s);
      return Rational(n, d);
    } catch (const std::logic_error&) {
      throw ParseError("bad rational: " + s);
    }
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

 private:
  static Rational from128(__int128 n, __int128 d) {
    if (d < 0) {
      n = -n;
      d = -d;
    }
    if (d != 1) {
      __int128 g = detail::gcd128(n, d);
      if (g > 1) {
        n /= g;
        d /= g;
      }
    }
    Rational r;
    r.num_ = detail::narrow(n);
    r.den_ = detail::narrow(d);
    return r;
  }
  void set(std::int64_t n, std::int64_t d) {
    if (d == 0) throw NonInvertible("zero denominator");
    *this = from128(n, d);
  }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

// a + b i with rational a, b.
struct GaussianRational {
  Rational re;
  Rational im;

  GaussianRational() = default;
  GaussianRational(Rational r) : re(r) {}  // NOLINT(implicit)
  GaussianRational(std::int64_t r) : re(r) {}  // NOLINT(implicit)
  GaussianRational(Rational r, Rational i) : re(r), im(i) {}

  bool is_zero() const { return re.is_zero() && im.is_zero(); }
  bool is_real() const { return im.is_zero(); }

  friend GaussianRational operator+(const GaussianRational& a, const GaussianRational& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend GaussianRational operator-(const GaussianRational& a, const GaussianRational& b) {
    return {a.re - b.re, a.im - b.im};
  }
  GaussianRational operator-() const { return {-re, -im}; }
  friend GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
    if (a.im.is_zero() && b.im.is_zero()) return {a.re * b.re, Rational()};
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  GaussianRational inverse() const {
    Rational n = re * re + im * im;
    if (n.is_zero()) throw NonInvertible("division by zero");
    return {re / n, -im / n};
  }
  friend GaussianRational operator/(const GaussianRational& a, const GaussianRational& b) {
    return a * b.inverse();
  }
  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re == b.re && a.im == b.im;
  }
  friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }

  // "3", "2/3*i", "(1+2*i)", "(1-2*i)".
  std::string str() const {
    if (im.is_zero()) return re.str();
    std::string ims = im.str() + "*i";
    if (re.is_zero()) return ims;
    if (im.sign() < 0) return "(" + re.str() + "-" + (-im).str() + "*i)";
    return "(" + re.str() + "+" + ims + ")";
  }
};

// Finite sum of c_m kappa^m with Gaussian-rational c_m, kept sorted by m with no zero terms.
class SuperScalar {
 public:
  using Term = std::pair<int, GaussianRational>;
  using Storage = boost::container::small_vector<Term, 2>;

  SuperScalar() = default;
  SuperScalar(std::int64_t v) { if (v != 0) terms_.emplace_back(0, GaussianRational(v)); }  // NOLINT
  SuperScalar(Rational v) { if (!v.is_zero()) terms_.emplace_back(0, GaussianRational(v)); }  // NOLINT
  SuperScalar(GaussianRational v) { if (!v.is_zero()) terms_.emplace_back(0, v); }  // NOLINT

  static SuperScalar monomial(GaussianRational c, int kappa_exp) {
    SuperScalar s;
    if (!c.is_zero()) s.terms_.emplace_back(kappa_exp, c);
    return s;
  }
  static SuperScalar kappa(int e = 1) { return monomial(GaussianRational(1), e); }
  static SuperScalar k(int e = 1) { return kappa(2 * e); }
  static SuperScalar i() { return GaussianRational(Rational(0), Rational(1)); }

  const Storage& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_rational() const {
    return terms_.empty() || (terms_.size() == 1 && terms_[0].first == 0 && terms_[0].second.is_real());
  }
  bool is_unit() const { return terms_.size() == 1; }
  Rational as_rational() const {
    if (!is_rational()) throw std::domain_error("scalar is not rational: " + str());
    return terms_.empty() ? Rational() : terms_[0].second.re;
  }
  GaussianRational coeff(int kappa_exp) const {
    for (const auto& [e, c] : terms_)
      if (e == kappa_exp) return c;
    return {};
  }

  friend SuperScalar operator+(const SuperScalar& a, const SuperScalar& b) {
    if (a.terms_.empty()) return b;
    if (b.terms_.empty()) return a;
    SuperScalar r;
    auto i = a.terms_.begin(), j = b.terms_.begin();
    while (i != a.terms_.end() || j != b.terms_.end()) {
      if (j == b.terms_.end() || (i != a.terms_.end() && i->first < j->first)) {
        r.terms_.push_back(*i++);
      } else if (i == a.terms_.end() || j->first < i->first) {
        r.terms_.push_back(*j++);
      } else {
        auto c = i->second + j->second;
        if (!c.is_zero()) r.terms_.emplace_back(i->first, c);
        ++i;
        ++j;
      }
    }
    return r;
  }
  SuperScalar operator-() const {
    SuperScalar r = *this;
    for (auto& t : r.terms_) t.second = -t.second;
    return r;
  }
  friend SuperScalar operator-(const SuperScalar& a, const SuperScalar& b) { return a + (-b); }
  friend SuperScalar operator*(const SuperScalar& a, const SuperScalar& b) {
    if (a.terms_.empty() || b.terms_.empty()) return {};
    if (a.terms_.size() == 1 && b.terms_.size() == 1)
      return monomial(a.terms_[0].second * b.terms_[0].second, a.terms_[0].first + b.terms_[0].first);
    SuperScalar r;
    for (const auto& [ea, ca] : a.terms_) {
      SuperScalar part;
      for (const auto& [eb, cb] : b.terms_) {
        auto c = ca * cb;
        if (!c.is_zero()) part.terms_.emplace_back(ea + eb, c);
      }
      r = r + part;
    }
    return r;
  }
  SuperScalar& operator+=(const SuperScalar& o) { return *this = *this + o; }
  SuperScalar& operator-=(const SuperScalar& o) { return *this = *this - o; }
  SuperScalar& operator*=(const SuperScalar& o) { return *this = *this * o; }

  // Units of the Laurent ring are the nonzero monomials.
  SuperScalar inv_unit() const {
    if (terms_.size() != 1) throw NonInvertible("not a unit: " + str());
    return monomial(terms_[0].second.inverse(), -terms_[0].first);
  }

  friend bool operator==(const SuperScalar& a, const SuperScalar& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const SuperScalar& a, const SuperScalar& b) { return !(a == b); }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (std::size_t t = 0; t < terms_.size(); ++t) {
      if (t) out += " + ";
      out += terms_[t].second.str();
      if (terms_[t].first != 0) out += "*κ^" + std::to_string(terms_[t].first);
    }
    return out;
  }

  static SuperScalar parse(const std::string& text);

  friend std::ostream& operator<<(std::ostream& os, const SuperScalar& s) { return os << s.str(); }

 private:
  Storage terms_;
};

namespace detail {

inline std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

inline GaussianRational parse_gaussian(std::string c) {
  c = trim(c);
  if (c.empty()) throw ParseError("empty coefficient");
  if (c.front() == '(') {
    if (c.back() != ')') throw ParseError("unbalanced parenthesis: " + c);
    std::string body = c.substr(1, c.size() - 2);
    if (body.size() < 3 || body.substr(body.size() - 2) != "*i") throw ParseError("bad complex: " + c);
    body = body.substr(0, body.size() - 2);
    auto split = body.find_first_of("+-", 1);
    if (split == std::string::npos) throw ParseError("bad complex: " + c);
    Rational re = Rational::parse(body.substr(0, split));
    std::string ims = body.substr(split + 1);
    Rational im = Rational::parse(ims);
    if (body[split] == '-') im = -im;
    return {re, im};
  }
  if (c.size() >= 2 && c.substr(c.size() - 2) == "*i") return {Rational(), Rational::parse(c.substr(0, c.size() - 2))};
  if (c == "i") return {Rational(), Rational(1)};
  if (c == "-i") return {Rational(), Rational(-1)};
  return {Rational::parse(c), Rational()};
}

}  // namespace detail

inline SuperScalar SuperScalar::parse(const std::string& text) {
  std::string s = detail::trim(text);
  if (s.empty()) throw ParseError("empty scalar");
  SuperScalar out;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    auto sep = s.find(" + ", pos);
    std::string term = s.substr(pos, sep == std::string::npos ? std::string::npos : sep - pos);
    term = detail::trim(term);
    int e = 0;
    const std::string kap = "κ^";
    auto kp = term.find(kap);
    std::string coef = term;
    if (kp != std::string::npos) {
      try {
        std::size_t used = 0;
        std::string es = term.substr(kp + kap.size());
        e = std::stoi(es, &used);
        if (used != es.size()) throw ParseError("bad exponent: " + term);
      } catch (const std::logic_error&) {
        throw ParseError("bad exponent: " + term);
      }
      coef = term.substr(0, kp);
      if (coef.empty()) coef = "1";
      else if (coef == "-") coef = "-1";
      else if (coef.back() == '*') coef.pop_back();
      else throw ParseError("bad term: " + term);
    }
    out += monomial(detail::parse_gaussian(coef), e);
    if (sep == std::string::npos) break;
    pos = sep + 3;
  }
  return out;
}

enum class ScalarOp { Add, Mul, Neg, InvUnit };

inline SuperScalar scalar_arith(ScalarOp op, const SuperScalar& a, const SuperScalar& b = {}) {
  switch (op) {
    case ScalarOp::Add: return a + b;
    case ScalarOp::Mul: return a * b;
    case ScalarOp::Neg: return -a;
    case ScalarOp::InvUnit: return a.inv_unit();
  }
  throw std::logic_error("unknown scalar op");
}

struct SqrtConstants {
  SuperScalar sqrt_minus_one;       // i
  SuperScalar sqrt_inv_k;           // kappa^-1
  SuperScalar sqrt_minus_inv_k;     // i kappa^-1
};

inline SqrtConstants sqrt_constants() {
  return {SuperScalar::i(), SuperScalar::kappa(-1), SuperScalar::i() * SuperScalar::kappa(-1)};
}

}  // namespace wkit
