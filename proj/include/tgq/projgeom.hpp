#pragma once

// Subspaces of PG(d,q) in canonical reduced row echelon form, projectivities and conics.

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "tgq/linalg.hpp"

namespace tgq {

class Subspace {
 public:
  Subspace() = default;

  /// Canonical subspace spanned by `rows` in PG(d,q).
  static Subspace from_rows(FieldPtr f, int d, Matrix rows) {
    for (const auto& r : rows)
      if (static_cast<int>(r.size()) != d + 1) fail(ErrorCode::LengthMismatch, "row length differs from d+1");
    Subspace s;
    s.f_ = std::move(f);
    s.d_ = d;
    s.pivots_ = rref_inplace(*s.f_, rows);
    s.rows_ = std::move(rows);
    return s;
  }
  static Subspace point(FieldPtr f, Vec v) {
    const int d = static_cast<int>(v.size()) - 1;
    return from_rows(std::move(f), d, Matrix{std::move(v)});
  }
  static Subspace whole(FieldPtr f, int d) {
    Matrix id(d + 1, Vec(d + 1, 0));
    for (int i = 0; i <= d; ++i) id[i][i] = 1;
    return from_rows(std::move(f), d, std::move(id));
  }
  static Subspace empty(FieldPtr f, int d) { return from_rows(std::move(f), d, {}); }

  const FieldPtr& field() const noexcept { return f_; }
  int ambient_dim() const noexcept { return d_; }
  const Matrix& rows() const noexcept { return rows_; }
  const std::vector<int>& pivots() const noexcept { return pivots_; }
  /// Vector-space dimension r.
  int rank() const noexcept { return static_cast<int>(rows_.size()); }
  /// Projective dimension r-1 (-1 for the empty subspace).
  int dim() const noexcept { return rank() - 1; }
  bool is_empty() const noexcept { return rows_.empty(); }

  /// The normalized vector of a point subspace.
  const Vec& vec() const {
    if (rank() != 1) fail(ErrorCode::BadDimension, "not a point");
    return rows_[0];
  }

  /// Canonical representative of v modulo the row space (pivot columns cleared).
  Vec reduce(Vec v) const {
    const FiniteField& f = *f_;
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const Elem c = v[pivots_[r]];
      if (c == 0) continue;
      const Elem nc = f.neg(c);
      const Vec& row = rows_[r];
      for (std::size_t k = pivots_[r]; k < v.size(); ++k)
        if (row[k]) v[k] = f.add(v[k], f.mul(nc, row[k]));
    }
    return v;
  }
  bool contains_vector(const Vec& v) const { return is_zero(reduce(v)); }
  bool contains(const Subspace& o) const {
    check_same(o);
    for (const auto& r : o.rows_)
      if (!contains_vector(r)) return false;
    return true;
  }

  void check_same(const Subspace& o) const {
    if (d_ != o.d_) fail(ErrorCode::AmbientMismatch, "subspaces live in different ambient spaces");
    if (f_ != o.f_ && !(*f_ == *o.f_)) fail(ErrorCode::FieldMismatch, "subspaces over different fields");
  }

  friend bool operator==(const Subspace& a, const Subspace& b) { return a.d_ == b.d_ && a.rows_ == b.rows_; }
  friend bool operator<(const Subspace& a, const Subspace& b) {
    if (a.d_ != b.d_) return a.d_ < b.d_;
    if (a.rows_.size() != b.rows_.size()) return a.rows_.size() < b.rows_.size();
    return a.rows_ < b.rows_;
  }

  std::size_t hash() const noexcept {
    std::size_t h = std::hash<int>()(d_) * 1000003u;
    for (const auto& r : rows_)
      for (Elem x : r) h = h * 1315423911u + x + 1;
    return h;
  }

 private:
  FieldPtr f_;
  int d_ = -1;
  Matrix rows_;
  std::vector<int> pivots_;
};

struct SubspaceHash {
  std::size_t operator()(const Subspace& s) const noexcept { return s.hash(); }
};

inline Subspace span(const Subspace& a, const Subspace& b) {
  a.check_same(b);
  Matrix rows = a.rows();
  rows.insert(rows.end(), b.rows().begin(), b.rows().end());
  return Subspace::from_rows(a.field(), a.ambient_dim(), std::move(rows));
}

inline Subspace span(std::initializer_list<std::reference_wrapper<const Subspace>> list) {
  const Subspace& first = list.begin()->get();
  Matrix rows;
  for (const auto& s : list) {
    first.check_same(s.get());
    rows.insert(rows.end(), s.get().rows().begin(), s.get().rows().end());
  }
  return Subspace::from_rows(first.field(), first.ambient_dim(), std::move(rows));
}

inline Subspace span_vectors(const Subspace& a, const Matrix& extra) {
  Matrix rows = a.rows();
  rows.insert(rows.end(), extra.begin(), extra.end());
  return Subspace::from_rows(a.field(), a.ambient_dim(), std::move(rows));
}

/// Orthogonal complement under the standard bilinear form.
inline Subspace annihilator(const Subspace& a) {
  const int n = a.ambient_dim() + 1;
  if (a.is_empty()) return Subspace::whole(a.field(), a.ambient_dim());
  return Subspace::from_rows(a.field(), a.ambient_dim(), null_space(*a.field(), a.rows(), n));
}

inline Subspace meet(const Subspace& a, const Subspace& b) {
  a.check_same(b);
  const int n = a.ambient_dim() + 1;
  if (a.is_empty() || b.is_empty()) return Subspace::empty(a.field(), a.ambient_dim());
  if (a.rank() == n) return b;
  if (b.rank() == n) return a;
  Matrix eqs = null_space(*a.field(), a.rows(), n);
  const Matrix eb = null_space(*a.field(), b.rows(), n);
  eqs.insert(eqs.end(), eb.begin(), eb.end());
  return Subspace::from_rows(a.field(), a.ambient_dim(), null_space(*a.field(), std::move(eqs), n));
}

/// All normalized vectors lambda in GF(q)^r (first nonzero entry 1), lexicographic.
inline std::vector<Vec> normalized_coefficients(const FiniteField& f, int r) {
  std::vector<Vec> out;
  const unsigned q = f.q();
  for (int lead = 0; lead < r; ++lead) {
    const int tail = r - lead - 1;
    std::size_t count = 1;
    for (int i = 0; i < tail; ++i) count *= q;
    for (std::size_t code = 0; code < count; ++code) {
      Vec lam(r, 0);
      lam[lead] = 1;
      std::size_t c = code;
      for (int i = r - 1; i > lead; --i) {
        lam[i] = static_cast<Elem>(c % q);
        c /= q;
      }
      out.push_back(std::move(lam));
    }
  }
  return out;
}

inline Vec combine(const FiniteField& f, const Vec& lam, const Matrix& rows) {
  Vec v(rows.empty() ? 0 : rows[0].size(), 0);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (lam[r] == 0) continue;
    for (std::size_t k = 0; k < v.size(); ++k)
      if (rows[r][k]) v[k] = f.add(v[k], f.mul(lam[r], rows[r][k]));
  }
  return v;
}

/// Normalized point vectors of A, ordered lexicographically by their coefficient vector
/// with respect to the canonical basis. The RREF basis makes each lambda*B already normalized.
inline std::vector<Vec> points_of(const Subspace& a) {
  if (a.is_empty()) fail(ErrorCode::EmptySubspace, "points_of on empty subspace");
  const FiniteField& f = *a.field();
  std::vector<Vec> pts;
  for (const auto& lam : normalized_coefficients(f, a.rank())) pts.push_back(combine(f, lam, a.rows()));
  return pts;
}

inline std::size_t point_count(unsigned q, int rank) {
  std::size_t n = 0, pw = 1;
  for (int i = 0; i < rank; ++i) {
    n += pw;
    pw *= q;
  }
  return n;
}

/// Dense codec between normalized points of PG(d,q) and indices 0..N-1 following points_of order.
class PointIndex {
 public:
  PointIndex(FieldPtr f, int d) : f_(std::move(f)), d_(d) {
    std::size_t size = 1;
    for (int i = 0; i <= d; ++i) {
      size *= f_->q();
      if (size > (std::size_t(1) << 28)) fail(ErrorCode::TooLarge, "point index table too large");
    }
    table_.assign(size, -1);
    points_ = points_of(Subspace::whole(f_, d));
    for (std::size_t i = 0; i < points_.size(); ++i) table_[key(points_[i])] = static_cast<std::int32_t>(i);
  }
  std::size_t size() const noexcept { return points_.size(); }
  const Vec& point(std::size_t i) const { return points_[i]; }
  /// Index of the point spanned by v (v need not be normalized).
  std::int32_t index(Vec v) const {
    if (!normalize(*f_, v)) fail(ErrorCode::EmptySubspace, "zero vector is not a point");
    return table_[key(v)];
  }
  std::int32_t index_normalized(const Vec& v) const { return table_[key(v)]; }
  std::vector<std::int32_t> indices_of(const Subspace& s) const {
    std::vector<std::int32_t> out;
    for (const auto& p : points_of(s)) out.push_back(table_[key(p)]);
    return out;
  }

 private:
  std::size_t key(const Vec& v) const {
    std::size_t k = 0;
    for (Elem x : v) k = k * f_->q() + x;
    return k;
  }
  FieldPtr f_;
  int d_;
  std::vector<std::int32_t> table_;
  std::vector<Vec> points_;
};

/// span(center, X) meet target.
inline Subspace project_through(const Subspace& center, const Subspace& target, const Subspace& x) {
  center.check_same(target);
  center.check_same(x);
  if (!meet(center, target).is_empty() || center.rank() + target.rank() != center.ambient_dim() + 1)
    fail(ErrorCode::NotComplementary, "center and target are not complementary");
  if (!meet(center, x).is_empty()) fail(ErrorCode::CenterMeetsX, "projected subspace meets the center");
  return meet(span(center, x), target);
}

/// Collineation x -> M x^sigma of PG(d,q), sigma = Frobenius^frob. Column-vector convention.
class Projectivity {
 public:
  Projectivity() = default;
  Projectivity(FieldPtr f, Matrix m, unsigned frob = 0) : f_(std::move(f)), m_(std::move(m)), frob_(frob) {
    normalize_matrix();
  }

  const Matrix& matrix() const noexcept { return m_; }
  unsigned frobenius_power() const noexcept { return frob_; }
  bool is_linear() const noexcept { return frob_ == 0; }

  Vec apply(const Vec& x) const {
    Vec y = x;
    if (frob_)
      for (auto& c : y) c = f_->frobenius(c, frob_);
    Vec out = mat_vec(*f_, m_, y);
    normalize(*f_, out);
    return out;
  }
  Subspace apply(const Subspace& s) const {
    Matrix rows;
    for (const auto& r : s.rows()) rows.push_back(apply(r));
    return Subspace::from_rows(f_, s.ambient_dim(), std::move(rows));
  }

  friend bool operator==(const Projectivity& a, const Projectivity& b) { return a.m_ == b.m_ && a.frob_ == b.frob_; }

 private:
  void normalize_matrix() {
    for (const auto& row : m_)
      for (Elem x : row)
        if (x) {
          if (x == 1) return;
          const Elem s = f_->inv(x);
          for (auto& r : m_)
            for (auto& y : r) y = f_->mul(y, s);
          return;
        }
    fail(ErrorCode::Singular, "zero matrix");
  }

  FieldPtr f_;
  Matrix m_;
  unsigned frob_ = 0;
};

/// Fits the unique (semi)linear projectivity x -> M x^sigma mapping a frame among
/// the source points as prescribed. Remaining pairs are not checked.
inline Projectivity fit_projectivity(const FieldPtr& f, const std::vector<std::pair<Vec, Vec>>& pairs, int d,
                                     unsigned frob = 0) {
  const FiniteField& F = *f;
  const std::size_t n = d + 1;
  auto twist = [&](Vec v) {
    if (frob)
      for (auto& c : v) c = F.frobenius(c, frob);
    return v;
  };
  for (const auto& [src, dst] : pairs)
    if (src.size() != n || dst.size() != n) fail(ErrorCode::LengthMismatch, "pair vector length differs from d+1");

  std::vector<std::size_t> basis;
  Matrix basis_rows;
  for (std::size_t i = 0; i < pairs.size() && basis.size() < n; ++i) {
    Matrix trial = basis_rows;
    trial.push_back(twist(pairs[i].first));
    if (rank(F, trial) == trial.size()) {
      basis.push_back(i);
      basis_rows.push_back(twist(pairs[i].first));
    }
  }
  if (basis.size() < n) fail(ErrorCode::NoFrame, "source points lie in a hyperplane");

  Matrix dst_rows;
  for (std::size_t i : basis) dst_rows.push_back(pairs[i].second);
  if (rank(F, dst_rows) < n) fail(ErrorCode::Inconsistent, "images of a basis are dependent");

  for (std::size_t u = 0; u < pairs.size(); ++u) {
    if (std::find(basis.begin(), basis.end(), u) != basis.end()) continue;
    const Vec c = solve_combination(F, basis_rows, twist(pairs[u].first));
    if (std::any_of(c.begin(), c.end(), [](Elem x) { return x == 0; })) continue;
    const Vec e = solve_combination(F, dst_rows, pairs[u].second);
    if (e.empty() || std::any_of(e.begin(), e.end(), [](Elem x) { return x == 0; }))
      fail(ErrorCode::Inconsistent, "frame scaling impossible");
    // M = Q diag(e_i / c_i) P^{-1}, with P, Q holding basis points as columns.
    const Matrix p_cols = transpose(basis_rows);
    const Matrix p_inv = inverse(F, p_cols);
    Matrix q_scaled = transpose(dst_rows);
    for (std::size_t i = 0; i < n; ++i) {
      const Elem lam = F.div(e[i], c[i]);
      for (std::size_t r = 0; r < n; ++r) q_scaled[r][i] = F.mul(q_scaled[r][i], lam);
    }
    return Projectivity(f, mat_mul(F, q_scaled, p_inv), frob);
  }
  fail(ErrorCode::NoFrame, "no unit point in general position");
}

/// Conic a x^2 + b y^2 + c z^2 + d xy + e xz + f yz in coordinates given by the plane's
/// canonical basis rows.
struct ConicForm {
  std::array<Elem, 6> coef{};
  Subspace plane;

  const FiniteField& field() const { return *plane.field(); }

  Elem value_local(const Vec& x) const {
    const FiniteField& F = field();
    const Elem terms[6] = {F.mul(x[0], x[0]), F.mul(x[1], x[1]), F.mul(x[2], x[2]),
                           F.mul(x[0], x[1]), F.mul(x[0], x[2]), F.mul(x[1], x[2])};
    Elem s = 0;
    for (int i = 0; i < 6; ++i) s = F.add(s, F.mul(coef[i], terms[i]));
    return s;
  }
  /// Polar matrix G with B(x,y) = x^T G y, B(x,y) = Q(x+y) - Q(x) - Q(y).
  Matrix polar_matrix() const {
    const FiniteField& F = field();
    const Elem a2 = F.add(coef[0], coef[0]), b2 = F.add(coef[1], coef[1]), c2 = F.add(coef[2], coef[2]);
    return {{a2, coef[3], coef[4]}, {coef[3], b2, coef[5]}, {coef[4], coef[5], c2}};
  }
  Vec polar_local(const Vec& x) const { return mat_vec(field(), polar_matrix(), x); }

  /// Local coordinates of an ambient point, or empty if it is outside the plane.
  Vec local(const Vec& v) const {
    Vec lam(3);
    for (int k = 0; k < 3; ++k) lam[k] = v[plane.pivots()[k]];
    if (is_zero(lam) || combine(field(), lam, plane.rows()) != v) return {};
    return lam;
  }
  Vec ambient(const Vec& lam) const {
    Vec v = combine(field(), lam, plane.rows());
    normalize(field(), v);
    return v;
  }
  bool contains(const Vec& ambient_point) const {
    const Vec l = local(ambient_point);
    return !l.empty() && value_local(l) == 0;
  }
};

/// True iff no point of the conic has identically vanishing polar form.
inline bool conic_nonsingular(const ConicForm& c) {
  if (std::all_of(c.coef.begin(), c.coef.end(), [](Elem x) { return x == 0; })) return false;
  for (const auto& x : normalized_coefficients(c.field(), 3))
    if (c.value_local(x) == 0 && is_zero(c.polar_local(x))) return false;
  return true;
}

/// Conic points as ambient normalized vectors, in local lexicographic order.
inline std::vector<Vec> conic_points(const ConicForm& c) {
  std::vector<Vec> out;
  for (const auto& x : normalized_coefficients(c.field(), 3))
    if (c.value_local(x) == 0) out.push_back(c.ambient(x));
  return out;
}

/// Tangent line {y : B(p,y) = 0} at a point of the conic.
inline Subspace conic_tangent(const ConicForm& c, const Vec& p) {
  const Vec l = c.local(p);
  if (l.empty() || c.value_local(l) != 0) fail(ErrorCode::NotOnConic, "point not on conic");
  const Vec g = c.polar_local(l);
  if (is_zero(g)) fail(ErrorCode::Singular, "polar vanishes at a conic point");
  Matrix rows;
  for (const auto& k : null_space(c.field(), Matrix{g}, 3)) rows.push_back(combine(c.field(), k, c.plane.rows()));
  return Subspace::from_rows(c.plane.field(), c.plane.ambient_dim(), std::move(rows));
}

/// Radical point of the polar form (characteristic 2 only).
inline Subspace conic_nucleus(const ConicForm& c) {
  if (c.field().p() != 2) fail(ErrorCode::NucleusOddChar, "nucleus exists only in characteristic 2");
  const Matrix rad = null_space(c.field(), c.polar_matrix(), 3);
  if (rad.size() != 1) fail(ErrorCode::Singular, "radical is not a single point");
  return Subspace::point(c.plane.field(), combine(c.field(), rad[0], c.plane.rows()));
}

/// Fits the unique conic through `points` with the prescribed tangent lines at the
/// tangency points. A tangency contributes the point condition and one polar condition.
inline ConicForm fit_conic(const FieldPtr& f, int d, const std::vector<Vec>& points,
                           const std::vector<std::pair<Vec, Subspace>>& tangency) {
  Matrix gens = points;
  for (const auto& [p, line] : tangency) {
    gens.push_back(p);
    gens.insert(gens.end(), line.rows().begin(), line.rows().end());
  }
  Subspace plane = Subspace::from_rows(f, d, gens);
  if (plane.dim() > 2) fail(ErrorCode::Precondition, "inputs are not coplanar");
  if (plane.dim() < 2) fail(ErrorCode::NoConic, "inputs are collinear");
  ConicForm c;
  c.plane = plane;
  const FiniteField& F = *f;

  auto point_row = [&](const Vec& x) {
    return Vec{F.mul(x[0], x[0]), F.mul(x[1], x[1]), F.mul(x[2], x[2]),
               F.mul(x[0], x[1]), F.mul(x[0], x[2]), F.mul(x[1], x[2])};
  };
  auto polar_row = [&](const Vec& x, const Vec& t) {
    const Elem two = F.add(1, 1);
    return Vec{F.mul(two, F.mul(x[0], t[0])), F.mul(two, F.mul(x[1], t[1])), F.mul(two, F.mul(x[2], t[2])),
               F.add(F.mul(x[0], t[1]), F.mul(x[1], t[0])), F.add(F.mul(x[0], t[2]), F.mul(x[2], t[0])),
               F.add(F.mul(x[1], t[2]), F.mul(x[2], t[1]))};
  };

  Matrix sys;
  for (const auto& p : points) sys.push_back(point_row(c.local(p)));
  std::vector<std::pair<Vec, Vec>> tang_local;
  for (const auto& [p, line] : tangency) {
    const Vec lp = c.local(p);
    if (line.dim() != 1 || !line.contains_vector(p)) fail(ErrorCode::Precondition, "tangent is not a line through its point");
    Vec other;
    for (const auto& r : line.rows())
      if (rank(F, Matrix{r, p}) == 2) {
        other = r;
        break;
      }
    const Vec lt = c.local(other);
    sys.push_back(point_row(lp));
    sys.push_back(polar_row(lp, lt));
    tang_local.emplace_back(lp, lt);
  }
  const Matrix sol = null_space(F, sys, 6);
  if (sol.empty()) fail(ErrorCode::NoConic, "no conic satisfies the conditions");
  if (sol.size() > 1) fail(ErrorCode::Underdetermined, "solution space has dimension " + std::to_string(sol.size()));
  for (int i = 0; i < 6; ++i) c.coef[i] = sol[0][i];
  if (!conic_nonsingular(c)) fail(ErrorCode::Singular, "fitted conic is degenerate");
  for (const auto& [lp, lt] : tang_local) {
    const Vec g = c.polar_local(lp);
    if (is_zero(g) || dot(F, g, lt) != 0) fail(ErrorCode::Singular, "tangency not realized");
  }
  return c;
}

}  // namespace tgq
