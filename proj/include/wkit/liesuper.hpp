#pragma once

// sl(n+1|n) as (2n+1)x(2n+1) supermatrices, its principal osp(1|2) and sl(2|1)
// subalgebras, and the adapted module basis v_i^(m) with its dual basis.

#include "wkit/linalg.hpp"
#include "wkit/scalar.hpp"

#include <atomic>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace wkit {

struct InvalidRank : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct AlgebraMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct EmbeddingFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DualBasisFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Element of sl(n+1|n). Row/column index a has parity a % 2.
class LieElement {
 public:
  LieElement() = default;
  LieElement(std::uint64_t algebra_id, int size)
      : alg_(algebra_id), size_(size), m_(std::size_t(size) * size) {}

  std::uint64_t algebra_id() const { return alg_; }
  int size() const { return size_; }
  const Rational& at(int a, int b) const { return m_[std::size_t(a) * size_ + b]; }
  Rational& at(int a, int b) { return m_[std::size_t(a) * size_ + b]; }
  const std::vector<Rational>& data() const { return m_; }

  bool is_zero() const {
    for (const auto& x : m_)
      if (!x.is_zero()) return false;
    return true;
  }

  // Parity of a homogeneous element; nullopt if mixed. Zero is even.
  std::optional<int> parity() const {
    int p = -1;
    for (int a = 0; a < size_; ++a)
      for (int b = 0; b < size_; ++b)
        if (!at(a, b).is_zero()) {
          int q = (a + b) % 2;
          if (p < 0) p = q;
          else if (p != q) return std::nullopt;
        }
    return p < 0 ? 0 : p;
  }

  // Twice the ad H eigenvalue of a homogeneous element; nullopt if mixed or zero.
  std::optional<int> grade2() const {
    std::optional<int> g;
    for (int a = 0; a < size_; ++a)
      for (int b = 0; b < size_; ++b)
        if (!at(a, b).is_zero()) {
          if (!g) g = b - a;
          else if (*g != b - a) return std::nullopt;
        }
    return g;
  }

  friend LieElement operator+(LieElement x, const LieElement& y) {
    check(x, y);
    for (std::size_t t = 0; t < x.m_.size(); ++t) x.m_[t] += y.m_[t];
    return x;
  }
  friend LieElement operator-(LieElement x, const LieElement& y) {
    check(x, y);
    for (std::size_t t = 0; t < x.m_.size(); ++t) x.m_[t] -= y.m_[t];
    return x;
  }
  LieElement operator-() const {
    LieElement r = *this;
    for (auto& v : r.m_) v = -v;
    return r;
  }
  friend LieElement operator*(const Rational& c, LieElement x) {
    for (auto& v : x.m_) v *= c;
    return x;
  }
  friend bool operator==(const LieElement& x, const LieElement& y) {
    return x.alg_ == y.alg_ && x.m_ == y.m_;
  }
  friend bool operator!=(const LieElement& x, const LieElement& y) { return !(x == y); }

  // Plain matrix product.
  friend LieElement matmul(const LieElement& x, const LieElement& y) {
    check(x, y);
    LieElement r(x.alg_, x.size_);
    for (int a = 0; a < x.size_; ++a)
      for (int c = 0; c < x.size_; ++c) {
        const Rational& xac = x.at(a, c);
        if (xac.is_zero()) continue;
        for (int b = 0; b < x.size_; ++b)
          if (!y.at(c, b).is_zero()) r.at(a, b) += xac * y.at(c, b);
      }
    return r;
  }

  std::string str() const {
    std::string s;
    for (int a = 0; a < size_; ++a)
      for (int b = 0; b < size_; ++b)
        if (!at(a, b).is_zero()) {
          if (!s.empty()) s += " + ";
          s += at(a, b).str() + "*e(" + std::to_string(a) + "," + std::to_string(b) + ")";
        }
    return s.empty() ? "0" : s;
  }

  static void check(const LieElement& x, const LieElement& y) {
    if (x.alg_ != y.alg_ || x.size_ != y.size_) throw AlgebraMismatch("elements belong to different algebras");
  }

 private:
  std::uint64_t alg_ = 0;
  int size_ = 0;
  std::vector<Rational> m_;
};

// Supercommutator [x,y] = xy - (-1)^{p(x)p(y)} yx, extended bilinearly over parity components.
inline LieElement super_bracket(const LieElement& x, const LieElement& y) {
  LieElement::check(x, y);
  const int n = x.size();
  LieElement r(x.algebra_id(), n);
  for (int a = 0; a < n; ++a)
    for (int c = 0; c < n; ++c) {
      const Rational& xac = x.at(a, c);
      if (xac.is_zero()) continue;
      int px = (a + c) % 2;
      for (int b = 0; b < n; ++b) {
        const Rational& ycb = y.at(c, b);
        if (!ycb.is_zero()) r.at(a, b) += xac * ycb;
      }
      // -(-1)^{px py} y x: contributions y(d,a) x(a,c) land at (d,c).
      for (int d = 0; d < n; ++d) {
        const Rational& yda = y.at(d, a);
        if (yda.is_zero()) continue;
        int py = (d + a) % 2;
        Rational t = yda * xac;
        if (px & py) r.at(d, c) += t;
        else r.at(d, c) -= t;
      }
    }
  return r;
}

class LieSuperAlgebra {
 public:
  int n() const { return n_; }
  int size() const { return 2 * n_ + 1; }
  int dimension() const { return size() * size() - 1; }
  std::uint64_t id() const { return id_; }
  const Rational& form_scale() const { return scale_; }

  LieElement zero() const { return LieElement(id_, size()); }
  LieElement unit(int a, int b) const {
    LieElement x = zero();
    x.at(a, b) = 1;
    return x;
  }

  // e_ab for a != b, and e_aa + e_{a+1,a+1}.
  std::vector<LieElement> standard_basis() const {
    std::vector<LieElement> out;
    const int N = size();
    for (int a = 0; a < N; ++a)
      for (int b = 0; b < N; ++b)
        if (a != b) out.push_back(unit(a, b));
    for (int a = 0; a + 1 < N; ++a) out.push_back(unit(a, a) + unit(a + 1, a + 1));
    return out;
  }

  static Rational supertrace(const LieElement& x) {
    Rational s;
    for (int a = 0; a < x.size(); ++a) s += (a % 2 ? -x.at(a, a) : x.at(a, a));
    return s;
  }

  // (x|y) = scale * str(xy).
  Rational form(const LieElement& x, const LieElement& y) const {
    LieElement::check(x, y);
    if (x.algebra_id() != id_) throw AlgebraMismatch("element from another algebra");
    Rational s;
    const int N = size();
    for (int a = 0; a < N; ++a)
      for (int b = 0; b < N; ++b) {
        const Rational& xab = x.at(a, b);
        if (xab.is_zero() || y.at(b, a).is_zero()) continue;
        Rational t = xab * y.at(b, a);
        s += (a % 2 ? -t : t);
      }
    return s * scale_;
  }

  static std::shared_ptr<LieSuperAlgebra> create(int n) {
    if (n <= 0) throw InvalidRank("rank must be positive, got " + std::to_string(n));
    auto g = std::shared_ptr<LieSuperAlgebra>(new LieSuperAlgebra());
    g->n_ = n;
    static std::atomic<std::uint64_t> next{1};
    g->id_ = next++;
    return g;
  }

  void set_form_scale(Rational s) { scale_ = s; }

 private:
  LieSuperAlgebra() = default;
  int n_ = 0;
  std::uint64_t id_ = 0;
  Rational scale_{1};
};

inline std::shared_ptr<const LieSuperAlgebra> build_algebra(int n) { return LieSuperAlgebra::create(n); }

inline Rational bilinear_form(const LieSuperAlgebra& g, const LieElement& x, const LieElement& y) {
  return g.form(x, y);
}

struct Embedding {
  LieElement H, E, F, e, f, et, ft, U;  // et = e~, ft = f~
};

// Grading by ad H as twice the eigenvalue.
inline std::optional<int> grading(const LieElement& x) { return x.grade2(); }

namespace detail {

inline LieElement build_h(const LieSuperAlgebra& g) {
  LieElement H = g.zero();
  for (int a = 0; a < g.size(); ++a) H.at(a, a) = Rational(g.n() - a, 2);
  return H;
}

}  // namespace detail

struct PrincipalData {
  std::shared_ptr<const LieSuperAlgebra> algebra;
  Embedding emb;
};

// Principal osp(1|2) and sl(2|1); also fixes the form so that (E|F) = 1.
inline Embedding principal_embedding(LieSuperAlgebra& g) {
  const int N = g.size();
  const int n = g.n();
  Embedding m;
  m.H = detail::build_h(g);
  m.f = g.zero();
  m.e = g.zero();
  m.ft = g.zero();
  for (int a = 0; a + 1 < N; ++a) {
    m.f.at(a + 1, a) = 1;
    int j = a / 2;
    m.e.at(a, a + 1) = (a % 2 == 0) ? Rational(-(n - j)) : Rational(j + 1);
    m.ft.at(a + 1, a) = (a % 2 == 0) ? 1 : -1;
  }
  m.E = matmul(m.e, m.e);
  m.F = -matmul(m.f, m.f);
  m.U = super_bracket(m.e, m.ft);
  m.et = -super_bracket(m.E, m.ft);

  Rational ef = LieSuperAlgebra::supertrace(matmul(m.E, m.F));
  if (ef.is_zero()) throw EmbeddingFailure("(E|F) vanishes");
  g.set_form_scale(Rational(1) / ef);

  auto req = [](bool ok, const char* what) {
    if (!ok) throw EmbeddingFailure(std::string("relation failed: ") + what);
  };
  auto br = [](const LieElement& x, const LieElement& y) { return super_bracket(x, y); };
  const Rational two(2);
  // osp(1|2) relations.
  req(br(m.H, m.E) == m.E, "[H,E]=E");
  req(br(m.H, m.F) == -m.F, "[H,F]=-F");
  req(br(m.H, m.e) == Rational(1, 2) * m.e, "[H,e]=e/2");
  req(br(m.H, m.f) == Rational(-1, 2) * m.f, "[H,f]=-f/2");
  req(br(m.e, m.e) == two * m.E, "[e,e]=2E");
  req(br(m.f, m.f) == Rational(-2) * m.F, "[f,f]=-2F");
  req(br(m.e, m.f) == Rational(-2) * m.H, "[e,f]=-2H");
  req(br(m.F, m.e) == m.f, "[F,e]=f");
  req(br(m.E, m.f) == m.e, "[E,f]=e");
  // H, -E, -F, e~, f~ also satisfy them.
  req(br(m.H, m.et) == Rational(1, 2) * m.et, "[H,e~]=e~/2");
  req(br(m.H, m.ft) == Rational(-1, 2) * m.ft, "[H,f~]=-f~/2");
  req(br(m.et, m.et) == Rational(-2) * m.E, "[e~,e~]=-2E");
  req(br(m.ft, m.ft) == two * m.F, "[f~,f~]=2F");
  req(br(m.et, m.ft) == Rational(-2) * m.H, "[e~,f~]=-2H");
  req(br(-m.F, m.et) == m.ft, "[-F,e~]=f~");
  req(br(-m.E, m.ft) == m.et, "[-E,f~]=e~");
  // Mixed relations.
  req(br(m.f, m.ft).is_zero(), "[f,f~]=0");
  req(br(m.e, m.et).is_zero(), "[e,e~]=0");
  req(br(m.et, m.f) == m.U, "[e~,f]=U");
  req(br(m.U, m.f) == -m.ft, "[U,f]=-f~");
  req(br(m.U, m.ft) == -m.f, "[U,f~]=-f");
  req(br(m.U, m.e) == m.et, "[U,e]=e~");
  req(br(m.U, m.et) == m.e, "[U,e~]=e");
  req(g.form(m.E, m.F) == Rational(1), "(E|F)=1");
  return m;
}

// Index (i, m) with 1 <= i <= 2n, 0 <= m <= 2i, flattened in order of i then m.
struct BasisIndex {
  int i = 0;
  int m = 0;
  friend bool operator==(const BasisIndex& a, const BasisIndex& b) { return a.i == b.i && a.m == b.m; }
  friend bool operator<(const BasisIndex& a, const BasisIndex& b) {
    return a.i != b.i ? a.i < b.i : a.m < b.m;
  }
};

class ModuleBasis {
 public:
  int n() const { return n_; }
  std::size_t size() const { return idx_.size(); }
  const std::vector<BasisIndex>& indices() const { return idx_; }
  std::size_t flat(int i, int m) const {
    if (i < 1 || i > 2 * n_ || m < 0 || m > 2 * i) throw std::out_of_range("basis index out of range");
    return offset_[i] + m;
  }
  bool valid(int i, int m) const { return i >= 1 && i <= 2 * n_ && m >= 0 && m <= 2 * i; }
  const LieElement& v(int i, int m) const { return v_[flat(i, m)]; }
  const LieElement& vt(int i, int m) const { return vt_[flat(i, m)]; }
  const LieElement& v_flat(std::size_t c) const { return v_[c]; }
  const LieElement& vt_flat(std::size_t c) const { return vt_[c]; }
  static int parity(int i, int m) { return (i + m) % 2; }
  // Twice the grade of v_i^(m); the dual element has the opposite grade.
  static int grade2(int i, int m) { return i - m; }

  // Coordinates in the basis v: x = sum c v, c = (x | vt).
  std::vector<Rational> coords(const LieElement& x) const {
    std::vector<Rational> c(size());
    for (std::size_t t = 0; t < size(); ++t) {
      Rational s;
      for (const auto& [a, b, w] : dual_functional_[t]) {
        const Rational& xab = x.at(a, b);
        if (!xab.is_zero()) s += xab * w;
      }
      c[t] = s;
    }
    return c;
  }

  LieElement from_coords(const std::vector<Rational>& c) const {
    LieElement x(v_[0].algebra_id(), v_[0].size());
    for (std::size_t t = 0; t < size(); ++t)
      if (!c[t].is_zero()) x = x + c[t] * v_[t];
    return x;
  }

  // Projection onto g^f along [e,g]: keep m = 2i components.
  LieElement sharp(const LieElement& x) const {
    auto c = coords(x);
    for (const auto& bi : idx_)
      if (bi.m != 2 * bi.i) c[flat(bi.i, bi.m)] = 0;
    return from_coords(c);
  }
  // Projection onto g^F along [E,g]: keep m = 2i and m = 2i-1 components.
  LieElement natural(const LieElement& x) const {
    auto c = coords(x);
    for (const auto& bi : idx_)
      if (bi.m < 2 * bi.i - 1) c[flat(bi.i, bi.m)] = 0;
    return from_coords(c);
  }

  // Build from a list of highest-weight vectors v_i^(0), i = 1..2n.
  static ModuleBasis build(const LieSuperAlgebra& g, const LieElement& f,
                           const std::vector<LieElement>& highest) {
    ModuleBasis mb;
    mb.n_ = g.n();
    mb.offset_.assign(2 * mb.n_ + 2, 0);
    std::size_t off = 0;
    for (int i = 1; i <= 2 * mb.n_; ++i) {
      mb.offset_[i] = off;
      LieElement cur = highest.at(i - 1);
      for (int m = 0; m <= 2 * i; ++m) {
        mb.idx_.push_back({i, m});
        mb.v_.push_back(cur);
        cur = super_bracket(f, cur);
      }
      if (!cur.is_zero()) throw DualBasisFailure("ad f chain too long for i=" + std::to_string(i));
      off += 2 * i + 1;
    }
    const std::size_t d = mb.v_.size();
    if (d != std::size_t(g.dimension())) throw DualBasisFailure("basis has wrong size");
    linalg::Matrix<Rational> gram(d, std::vector<Rational>(d));
    for (std::size_t a = 0; a < d; ++a)
      for (std::size_t b = 0; b < d; ++b) {
        const auto& A = mb.idx_[a];
        const auto& B = mb.idx_[b];
        if (A.i - A.m + B.i - B.m != 0) continue;  // grades must cancel
        gram[a][b] = g.form(mb.v_[a], mb.v_[b]);
      }
    auto inv = linalg::inverse(gram);
    if (!inv) throw DualBasisFailure("form is degenerate on the module basis");
    // Dual element c: sum_d y_d v_d with (v_a | sum y_d v_d) = delta_ac, so y = column c of gram^-1.
    for (std::size_t c = 0; c < d; ++c) {
      LieElement x = g.zero();
      for (std::size_t e = 0; e < d; ++e)
        if (!(*inv)[e][c].is_zero()) x = x + (*inv)[e][c] * mb.v_[e];
      mb.vt_.push_back(x);
    }
    for (std::size_t a = 0; a < d; ++a)
      for (std::size_t b = 0; b < d; ++b) {
        Rational want = a == b ? Rational(1) : Rational(0);
        if (g.form(mb.v_[a], mb.vt_[b]) != want) throw DualBasisFailure("dual basis check failed");
      }
    // (x | vt) = scale * sum_{a,b} (-1)^a x_ab vt_ba.
    const int N = g.size();
    for (std::size_t c = 0; c < d; ++c) {
      std::vector<std::tuple<int, int, Rational>> fn;
      for (int a = 0; a < N; ++a)
        for (int b = 0; b < N; ++b) {
          const Rational& w = mb.vt_[c].at(b, a);
          if (w.is_zero()) continue;
          Rational t = w * g.form_scale();
          fn.emplace_back(a, b, a % 2 ? -t : t);
        }
      mb.dual_functional_.push_back(std::move(fn));
    }
    return mb;
  }

 private:
  int n_ = 0;
  std::vector<std::size_t> offset_;
  std::vector<BasisIndex> idx_;
  std::vector<LieElement> v_, vt_;
  std::vector<std::vector<std::tuple<int, int, Rational>>> dual_functional_;
};

// Everything derived from the rank: algebra, embedding, module basis.
struct LieData {
  std::shared_ptr<const LieSuperAlgebra> g;
  Embedding emb;
  ModuleBasis basis;

  int n() const { return g->n(); }
  Rational form(const LieElement& x, const LieElement& y) const { return g->form(x, y); }
};

// v_{2i}^(0) = E^i and v_{2i-1}^(0) = -[f~, v_{2i}^(0)].
inline ModuleBasis build_module_basis(const LieSuperAlgebra& g, const Embedding& emb) {
  std::vector<LieElement> hw(2 * g.n());
  LieElement pw = emb.E;
  for (int i = 1; i <= g.n(); ++i) {
    hw[2 * i - 1] = pw;
    hw[2 * i - 2] = -super_bracket(emb.ft, pw);
    pw = matmul(pw, emb.E);
  }
  for (const auto& h : hw)
    if (!super_bracket(emb.e, h).is_zero()) throw DualBasisFailure("seed is not a highest weight vector");
  return ModuleBasis::build(g, emb.f, hw);
}

inline std::shared_ptr<const LieData> build_lie_data(int n) {
  auto g = LieSuperAlgebra::create(n);
  auto emb = principal_embedding(*g);
  auto basis = build_module_basis(*g, emb);
  auto d = std::make_shared<LieData>();
  d->g = g;
  d->emb = std::move(emb);
  d->basis = std::move(basis);
  return d;
}

inline LieElement sharp(const LieData& d, const LieElement& x) { return d.basis.sharp(x); }
inline LieElement natural(const LieData& d, const LieElement& x) { return d.basis.natural(x); }

struct CheckResult {
  std::string name;
  bool ok = true;
  std::string detail;
};

struct SuiteReport {
  std::vector<CheckResult> checks;
  bool ok() const {
    for (const auto& c : checks)
      if (!c.ok) return false;
    return true;
  }
  void add(std::string name, bool ok, std::string detail = {}) {
    checks.push_back({std::move(name), ok, std::move(detail)});
  }
};

namespace detail {

// Dimension of the smallest subspace containing seed and closed under ad of gens.
inline std::size_t generated_dimension(const ModuleBasis& mb, const LieElement& seed,
                                       const std::vector<LieElement>& gens) {
  std::vector<LieElement> span{seed};
  linalg::Matrix<Rational> rows{mb.coords(seed)};
  std::size_t r = linalg::rank(rows);
  for (std::size_t k = 0; k < span.size(); ++k) {
    for (const auto& x : gens) {
      LieElement y = super_bracket(x, span[k]);
      if (y.is_zero()) continue;
      rows.push_back(mb.coords(y));
      std::size_t r2 = linalg::rank(rows);
      if (r2 > r) {
        r = r2;
        span.push_back(y);
      } else {
        rows.pop_back();
      }
    }
  }
  return r;
}

inline bool coords_within(const ModuleBasis& mb, const LieElement& x, const std::vector<int>& comps) {
  auto c = mb.coords(x);
  for (std::size_t t = 0; t < c.size(); ++t) {
    if (c[t].is_zero()) continue;
    int i = mb.indices()[t].i;
    bool in = false;
    for (int k : comps) in = in || (k == i);
    if (!in) return false;
  }
  return true;
}

}  // namespace detail

// Representation-theoretic facts about the principal subalgebras.
inline SuiteReport verify_section2(const LieData& d) {
  SuiteReport rep;
  const auto& mb = d.basis;
  const auto& m = d.emb;
  const int n = d.n();
  auto br = [](const LieElement& x, const LieElement& y) { return super_bracket(x, y); };

  // osp(1|2): R_i irreducible of dimension 2i+1, graded pieces one-dimensional.
  for (int i = 1; i <= 2 * n; ++i) {
    bool hw = br(m.e, mb.v(i, 0)).is_zero() && br(m.E, mb.v(i, 0)).is_zero();
    bool grades = true;
    for (int k = 0; k <= 2 * i; ++k) grades = grades && mb.v(i, k).grade2() == i - k;
    std::size_t dim = detail::generated_dimension(mb, mb.v(i, 0), {m.e, m.f, m.E, m.F, m.H});
    rep.add("osp_R" + std::to_string(i), hw && grades && dim == std::size_t(2 * i + 1),
            "dim=" + std::to_string(dim));
  }
  std::size_t total = 0;
  for (int i = 1; i <= 2 * n; ++i) total += 2 * i + 1;
  rep.add("osp_sum_dims", total == std::size_t(d.g->dimension()));

  // g^e and g^f bases.
  bool ge = true, gf = true;
  for (int i = 1; i <= 2 * n; ++i) {
    ge = ge && br(m.e, mb.v(i, 0)).is_zero();
    gf = gf && br(m.f, mb.v(i, 2 * i)).is_zero();
  }
  rep.add("kernel_bases", ge && gf);

  // Both commuting squares on every basis vector commuting with U.
  for (const auto& bi : mb.indices()) {
    const LieElement& a = mb.v(bi.i, bi.m);
    if (!br(m.U, a).is_zero()) continue;
    std::string tag = "v(" + std::to_string(bi.i) + "," + std::to_string(bi.m) + ")";
    bool ok = br(m.U, br(m.E, a)).is_zero() && br(m.U, br(m.F, a)).is_zero();
    ok = ok && br(m.U, br(m.f, a)) == -br(m.ft, a);
    ok = ok && br(m.U, -br(m.ft, a)) == br(m.f, a);
    ok = ok && br(m.ft, br(m.f, a)) == -br(m.f, br(m.ft, a));
    ok = ok && br(m.ft, -br(m.ft, a)) == -br(m.F, a);
    ok = ok && br(m.f, br(m.f, a)) == -br(m.F, a);
    ok = ok && br(m.U, br(m.e, a)) == br(m.et, a);
    ok = ok && br(m.U, br(m.et, a)) == br(m.e, a);
    ok = ok && br(m.et, br(m.e, a)) == -br(m.e, br(m.et, a));
    ok = ok && br(m.et, -br(m.et, a)) == br(m.E, a);
    ok = ok && br(m.e, br(m.e, a)) == br(m.E, a);
    rep.add("diagram_" + tag, ok);
  }

  // sl(2|1): R~_i = R_{2i-1} + R_{2i} irreducible of dimension 8i.
  const std::vector<LieElement> sl21{m.e, m.f, m.E, m.F, m.H, m.et, m.ft, m.U};
  for (int i = 1; i <= n; ++i) {
    bool kill = br(m.et, mb.v(2 * i, 0)).is_zero();
    bool closed = true;
    for (int c : {2 * i - 1, 2 * i})
      for (int k = 0; k <= 2 * c; ++k)
        for (const auto& x : sl21) closed = closed && detail::coords_within(mb, br(x, mb.v(c, k)), {2 * i - 1, 2 * i});
    std::size_t dim = detail::generated_dimension(mb, mb.v(2 * i, 0), sl21);
    // Vectors killed by e, e~, E inside R~_i.
    linalg::Matrix<Rational> sys;
    std::vector<std::size_t> cols;
    for (int c : {2 * i - 1, 2 * i})
      for (int k = 0; k <= 2 * c; ++k) cols.push_back(mb.flat(c, k));
    const std::size_t nd = mb.size();
    for (const auto& x : {m.e, m.et, m.E}) {
      std::vector<std::vector<Rational>> images;
      for (auto c : cols) images.push_back(mb.coords(br(x, mb.v_flat(c))));
      for (std::size_t r = 0; r < nd; ++r) {
        std::vector<Rational> row;
        for (std::size_t q = 0; q < cols.size(); ++q) row.push_back(images[q][r]);
        sys.push_back(row);
      }
    }
    std::size_t hw_dim = cols.size() - linalg::rank(sys);
    rep.add("sl21_R" + std::to_string(i),
            kill && closed && dim == std::size_t(8 * i) && hw_dim == 1,
            "dim=" + std::to_string(dim) + " hw=" + std::to_string(hw_dim));
  }
  return rep;
}

// Identities relating the module basis, its dual and the sl(2|1) action.
inline SuiteReport lie_identity_suite(const LieData& d) {
  SuiteReport rep;
  const auto& mb = d.basis;
  const auto& m = d.emb;
  const int n = d.n();
  auto br = [](const LieElement& x, const LieElement& y) { return super_bracket(x, y); };
  auto sh = [&](const LieElement& x) { return mb.sharp(x); };

  bool ok = true;
  std::string bad;
  for (int j = 1; j <= n; ++j)
    if (br(m.et, mb.v(2 * j, 4 * j)) != Rational(2 * j) * mb.v(2 * j - 1, 4 * j - 2)) {
      ok = false;
      bad += " j=" + std::to_string(j);
    }
  rep.add("et_on_lowest_even", ok, bad);
  ok = true;
  bad.clear();
  for (int j = 1; j <= n; ++j) {
    LieElement got = br(m.et, mb.v(2 * j - 1, 4 * j - 2));
    if (got != Rational(-(2 * j - 1)) * mb.v(2 * j, 4 * j - 2)) {
      ok = false;
      bad += " j=" + std::to_string(j) + ": [e~,v(" + std::to_string(2 * j - 1) + "," +
             std::to_string(4 * j - 2) + ")] = " + (got == mb.v(2 * j, 4 * j - 2) ? std::string("+1") : std::string("?")) +
             "*v(" + std::to_string(2 * j) + "," + std::to_string(4 * j - 2) + ")";
    }
  }
  rep.add("et_on_lowest_odd", ok, bad);

  ok = true;
  for (int i = 1; i <= 2 * n; ++i)
    for (int j = 1; j <= 2 * n; ++j)
      for (int t = 0; t <= 2 * j; ++t) {
        if (t <= 2 * j - 1) ok = ok && sh(br(mb.vt(i, 2 * i), mb.v(j, t))).is_zero();
        if (t <= 2 * j - 2) ok = ok && sh(br(mb.vt(i, 2 * i - 1), mb.v(j, t))).is_zero();
      }
  rep.add("key_vanishing", ok);

  ok = true;
  for (int j = 1; j <= 2 * n; ++j) {
    LieElement rhs = br(m.f, mb.vt(j, 2 * j));
    ok = ok && mb.vt(j, 2 * j - 1) == (j % 2 ? -rhs : rhs);
    ok = ok && mb.v(j, 2 * j - 1) == Rational(1, j) * br(m.e, mb.v(j, 2 * j));
  }
  rep.add("dual_and_e_relations", ok);

  ok = true;
  for (int j = 1; j <= 2 * n; ++j)
    for (int k = 1; k <= 2 * n; ++k) {
      LieElement lhs = sh(br(mb.vt(j, 2 * j - 1), mb.v(k, 2 * k - 1)));
      LieElement rhs = Rational(-j, k) * sh(br(mb.vt(j, 2 * j), mb.v(k, 2 * k)));
      ok = ok && lhs == rhs;
    }
  rep.add("odd_even_sharp_ratio", ok);

  ok = true;
  for (int i = 1; i <= 2 * n; ++i)
    for (int j = i + 1; j <= 2 * n; ++j)
      if ((i % 2 == j % 2) || (j % 2 == 1)) ok = ok && sh(br(mb.vt(i, 2 * i), mb.v(j, 2 * j))).is_zero();
  rep.add("parity_vanishing", ok);

  ok = true;
  for (int i = 1; i <= n; ++i) {
    for (int t = 0; t <= 4 * i - 2; ++t) {
      LieElement want = (t % 2 ? Rational(-1) : Rational(1)) * mb.v(2 * i, t + 2);
      ok = ok && br(m.ft, mb.v(2 * i - 1, t)) == want;
    }
    for (int s = 0; s <= 4 * i - 2; ++s) {
      LieElement want = (s % 2 ? Rational(1) : Rational(-1)) * mb.v(2 * i - 1, s);
      ok = ok && br(m.ft, mb.v(2 * i, s)) == want;
    }
  }
  rep.add("ft_action", ok);
  return rep;
}

}  // namespace wkit
