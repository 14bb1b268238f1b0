#pragma once

// Eggs O(n,m,q): q^m+1 pairwise skew (n-1)-spaces of PG(2n+m-1,q), every three spanning
// a (3n-1)-space, each inside a unique (n+m-1)-dimensional tangent space.

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <random>
#include <string>
#include <unordered_set>
#include <vector>

#include "tgq/projgeom.hpp"

namespace tgq {

struct ValidateOptions {
  bool full = false;
  std::uint64_t seed = 0;
  std::uint64_t exhaustive_limit = 1000000;
  std::uint64_t sample_size = 1000000;
};

inline std::uint64_t ipow(std::uint64_t b, unsigned e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

class Egg {
 public:
  FieldPtr field;
  int n = 0, m = 0;
  std::vector<Subspace> elements;
  std::vector<Subspace> tangents;
  std::vector<std::string> warnings;
  nlohmann::json validation;  // mode, seed and counts of the validating run

  unsigned q() const { return field->q(); }
  int ambient_dim() const { return 2 * n + m - 1; }
  std::size_t size() const { return elements.size(); }

  const PointIndex& points() const { return *index_; }
  /// Element containing a point index, or -1 for points off the union of elements.
  int owner(std::int32_t point) const { return owner_[point]; }
  int owner_of(const Vec& v) const { return owner_[index_->index(v)]; }
  const std::vector<int>& owner_table() const { return owner_; }

  /// Copy with elements 0 and b exchanged.
  Egg relabeled(int b) const {
    Egg e = *this;
    std::swap(e.elements[0], e.elements[b]);
    std::swap(e.tangents[0], e.tangents[b]);
    for (auto& o : e.owner_)
      if (o == 0)
        o = b;
      else if (o == b)
        o = 0;
    return e;
  }

  void build_index() {
    index_ = std::make_shared<PointIndex>(field, ambient_dim());
    owner_.assign(index_->size(), -1);
    for (std::size_t i = 0; i < elements.size(); ++i)
      for (auto p : index_->indices_of(elements[i])) {
        if (owner_[p] != -1)
          fail(ErrorCode::TripleSpanFailure, "elements " + std::to_string(owner_[p]) + " and " + std::to_string(i) + " meet",
               {{"pair", {owner_[p], i}}, {"point", index_->point(p)}});
        owner_[p] = static_cast<int>(i);
      }
  }

 private:
  std::shared_ptr<const PointIndex> index_;
  std::vector<int> owner_;
};

namespace detail {

inline bool triple_spans(const FiniteField& f, const Egg& e, int i, int j, int k) {
  Matrix rows = e.elements[i].rows();
  rows.insert(rows.end(), e.elements[j].rows().begin(), e.elements[j].rows().end());
  rows.insert(rows.end(), e.elements[k].rows().begin(), e.elements[k].rows().end());
  return static_cast<int>(rank(f, std::move(rows))) == 3 * e.n;
}

/// Tangent space at element i: pi_i together with every point outside the spans <pi_i, pi_j>.
inline Subspace collect_tangent(const Egg& e, int i) {
  const PointIndex& idx = e.points();
  std::vector<char> marked(idx.size(), 0);
  for (std::size_t j = 0; j < e.size(); ++j) {
    if (static_cast<int>(j) == i) continue;
    for (auto p : idx.indices_of(span(e.elements[i], e.elements[j]))) marked[p] = 1;
  }
  Matrix collected;
  std::size_t count = 0;
  for (auto p : idx.indices_of(e.elements[i])) {
    marked[p] = 0;
    collected.push_back(idx.point(p));
    ++count;
  }
  for (std::size_t p = 0; p < idx.size(); ++p)
    if (!marked[p] && e.owner(static_cast<std::int32_t>(p)) != i) {
      collected.push_back(idx.point(p));
      ++count;
    }
  // Every collected point lies in the span, so equal counts mean equal point sets.
  Subspace tau = Subspace::from_rows(e.field, e.ambient_dim(), collected);
  if (tau.dim() != e.n + e.m - 1 || point_count(e.q(), tau.rank()) != count)
    fail(ErrorCode::TangentFailure, "tangent point set at element " + std::to_string(i) + " is not an (n+m-1)-space",
         {{"element", i}, {"collected", count}, {"span_dim", tau.dim()}});
  for (std::size_t j = 0; j < e.size(); ++j)
    if (static_cast<int>(j) != i && !meet(tau, e.elements[j]).is_empty())
      fail(ErrorCode::TangentFailure, "tangent space meets another element", {{"element", i}, {"other", j}});
  return tau;
}

}  // namespace detail

/// Validates candidate elements as O(n,m,q) and computes all tangent spaces.
inline Egg egg_validate(const FieldPtr& f, int n, int m, std::vector<Subspace> elements, const ValidateOptions& opt = {}) {
  Egg e;
  e.field = f;
  e.n = n;
  e.m = m;
  const unsigned q = f->q();
  const std::uint64_t expected = ipow(q, m) + 1;
  if (elements.size() != expected)
    fail(ErrorCode::WrongCount, "expected " + std::to_string(expected) + " elements, got " + std::to_string(elements.size()),
         {{"expected", expected}, {"got", elements.size()}});
  for (std::size_t i = 0; i < elements.size(); ++i)
    if (elements[i].ambient_dim() != 2 * n + m - 1 || elements[i].dim() != n - 1)
      fail(ErrorCode::WrongDim, "element " + std::to_string(i) + " has wrong dimension", {{"element", i}});
  e.elements = std::move(elements);
  if (n != m) {
    // n(a+1) = m a  <=>  a = n / (m - n), which must be an odd integer.
    if (m <= n || n % (m - n) != 0 || (n / (m - n)) % 2 == 0)
      e.warnings.push_back("parameters violate n = m or n(a+1) = ma with a odd");
    if (q % 2 == 0 && m != 2 * n) e.warnings.push_back("q even requires n = m or m = 2n");
  }
  e.build_index();

  const std::uint64_t k = e.size();
  const std::uint64_t triples = k * (k - 1) * (k - 2) / 6;
  const bool exhaustive = opt.full || triples <= opt.exhaustive_limit;
  std::uint64_t checked = 0;
  auto check = [&](int a, int b, int c) {
    ++checked;
    if (!detail::triple_spans(*f, e, a, b, c))
      fail(ErrorCode::TripleSpanFailure, "triple does not span a (3n-1)-space", {{"triple", {a, b, c}}});
  };
  if (exhaustive) {
    for (std::uint64_t a = 0; a < k; ++a)
      for (std::uint64_t b = a + 1; b < k; ++b)
        for (std::uint64_t c = b + 1; c < k; ++c) check(int(a), int(b), int(c));
  } else {
    std::mt19937_64 rng(opt.seed);
    std::uniform_int_distribution<std::uint64_t> pick(0, k - 1);
    for (std::uint64_t s = 0; s < opt.sample_size; ++s) {
      std::uint64_t a = pick(rng), b = pick(rng), c = pick(rng);
      if (a == b || b == c || a == c) continue;
      check(int(a), int(b), int(c));
    }
  }
  e.tangents.resize(k);
  for (std::uint64_t i = 0; i < k; ++i) e.tangents[i] = detail::collect_tangent(e, int(i));
  e.validation = {{"mode", exhaustive ? "full" : "sample"},
                  {"seed", opt.seed},
                  {"triples_total", triples},
                  {"triples_checked", checked},
                  {"tangents", k}};
  return e;
}

struct GoodnessReport {
  int element = 0;
  bool good = true;
  std::map<int, std::uint64_t> span_histogram;  // element count -> number of distinct spans
  std::uint64_t distinct_spans = 0;
  std::uint64_t pairs_covered = 0;
  std::vector<int> counterexample;  // (i, j, k) when bad
};

/// Counts the elements in every (3n-1)-space <pi_i, pi_j, pi_k>; good iff all counts are q^n+1.
/// Spans are processed once: all pairs inside a processed span are skipped.
inline GoodnessReport goodness_test(const Egg& e, int i) {
  if (e.m != 2 * e.n) fail(ErrorCode::NotM2N, "goodness requires m = 2n");
  const FiniteField& F = *e.field;
  const int k = static_cast<int>(e.size());
  const int target = static_cast<int>(ipow(e.q(), e.n) + 1);
  GoodnessReport rep;
  rep.element = i;
  std::vector<char> done(std::size_t(k) * k, 0);
  for (int a = 0; a < k; ++a)
    for (int b = a + 1; b < k; ++b) {
      if (a == i || b == i || done[a * k + b]) continue;
      const Subspace s = span({e.elements[i], e.elements[a], e.elements[b]});
      const Matrix ann = null_space(F, s.rows(), e.ambient_dim() + 1);
      std::vector<int> inside;
      for (int c = 0; c < k; ++c) {
        bool in = true;
        for (const auto& r : e.elements[c].rows()) {
          for (const auto& h : ann)
            if (dot(F, r, h)) {
              in = false;
              break;
            }
          if (!in) break;
        }
        if (in) inside.push_back(c);
      }
      for (int x : inside)
        for (int y : inside)
          if (x < y && x != i && y != i && !done[x * k + y]) {
            done[x * k + y] = 1;
            ++rep.pairs_covered;
          }
      ++rep.distinct_spans;
      ++rep.span_histogram[static_cast<int>(inside.size())];
      if (static_cast<int>(inside.size()) != target && rep.good) {
        rep.good = false;
        rep.counterexample = {i, a, b};
      }
    }
  return rep;
}

/// Elements are the annihilators of the tangent spaces.
inline Egg translation_dual(const Egg& e, const ValidateOptions& opt = {}) {
  if (e.n == e.m && e.q() % 2 == 0) fail(ErrorCode::DualHypothesisFailed, "translation dual needs q odd when n = m");
  std::vector<Subspace> dual;
  for (const auto& t : e.tangents) dual.push_back(annihilator(t));
  return egg_validate(e.field, e.n, e.m, std::move(dual), opt);
}

/// (b, c) with x^2 + b x + c irreducible, least in code order (b first).
inline std::pair<Elem, Elem> irreducible_quadratic(const FiniteField& f) {
  for (unsigned b = 0; b < f.q(); ++b)
    for (unsigned c = 0; c < f.q(); ++c) {
      bool root = false;
      for (unsigned x = 0; x < f.q() && !root; ++x)
        root = f.add(f.add(f.mul(Elem(x), Elem(x)), f.mul(Elem(b), Elem(x))), Elem(c)) == 0;
      if (!root) return {Elem(b), Elem(c)};
    }
  fail(ErrorCode::ReduciblePoly, "no irreducible quadratic");
}

/// Points of x0 x1 + x2^2 + b x2 x3 + c x3^2 = 0 in PG(3,F), in point enumeration order.
inline std::vector<Vec> elliptic_quadric_ovoid(const FieldPtr& f) {
  const FiniteField& F = *f;
  const auto [b, c] = irreducible_quadratic(F);
  std::vector<Vec> out;
  for (const auto& x : points_of(Subspace::whole(f, 3))) {
    const Elem v = F.add(F.add(F.mul(x[0], x[1]), F.mul(x[2], x[2])),
                         F.add(F.mul(b, F.mul(x[2], x[3])), F.mul(c, F.mul(x[3], x[3]))));
    if (v == 0) out.push_back(x);
  }
  return out;
}

/// Points of x z = y^2 in PG(2,F).
inline std::vector<Vec> conic_oval(const FieldPtr& f) {
  std::vector<Vec> out;
  for (const auto& x : points_of(Subspace::whole(f, 2)))
    if (f->mul(x[0], x[2]) == f->mul(x[1], x[1])) out.push_back(x);
  return out;
}

/// Throws InputNotOvoid unless `pts` has q^2+1 (ovoid) or q+1 (oval) points with no three collinear.
inline void check_ovoid_or_oval(const FieldPtr& f, const std::vector<Vec>& pts) {
  if (pts.empty()) fail(ErrorCode::InputNotOvoid, "empty point set");
  const int d = static_cast<int>(pts[0].size()) - 1;
  const unsigned q = f->q();
  if (d != 2 && d != 3) fail(ErrorCode::InputNotOvoid, "input must live in PG(2,q) or PG(3,q)");
  const std::size_t expected = d == 3 ? std::size_t(q) * q + 1 : q + 1;
  if (pts.size() != expected) fail(ErrorCode::InputNotOvoid, "wrong number of points", {{"expected", expected}, {"got", pts.size()}});
  PointIndex idx(f, d);
  std::vector<char> in(idx.size(), 0);
  for (const auto& p : pts) {
    const auto k = idx.index(p);
    if (in[k]) fail(ErrorCode::InputNotOvoid, "repeated point", {{"point", p}});
    in[k] = 1;
  }
  for (std::size_t a = 0; a < pts.size(); ++a)
    for (std::size_t b = a + 1; b < pts.size(); ++b) {
      int on = 0;
      for (const auto& x : points_of(Subspace::from_rows(f, d, {pts[a], pts[b]}))) on += in[idx.index_normalized(x)];
      if (on > 2) fail(ErrorCode::InputNotOvoid, "three collinear points", {{"pair", {a, b}}});
    }
}

/// GF(q^n)^k viewed as GF(q)^{kn}: a point a becomes the (n-1)-space spanned by w^j a,
/// j = 0..n-1, w the class of x. The base field must be the prime field of `big`.
inline std::vector<Subspace> field_reduce(const FieldPtr& big, const FieldPtr& base, const std::vector<Vec>& pts) {
  if (base->e() != 1 || base->p() != big->p())
    fail(ErrorCode::Unsupported, "field reduction is implemented over the prime subfield only");
  const unsigned n = big->e();
  const Elem w = big->generator_x();
  std::vector<Subspace> out;
  for (const auto& a : pts) {
    const int k = static_cast<int>(a.size());
    Matrix rows;
    Elem scale = 1;
    for (unsigned j = 0; j < n; ++j) {
      Vec row;
      for (int c = 0; c < k; ++c)
        for (unsigned coef : big->coeffs(big->mul(scale, a[c]))) row.push_back(static_cast<Elem>(coef));
      rows.push_back(std::move(row));
      scale = n == 1 ? scale : big->mul(scale, w);
    }
    out.push_back(Subspace::from_rows(base, k * static_cast<int>(n) - 1, std::move(rows)));
  }
  return out;
}

/// Egg from an ovoid of PG(3,q^n) (gives O(n,2n,q)) or an oval of PG(2,q^n) (gives O(n,n,q)).
inline Egg egg_from_field_reduction(const FieldPtr& big, const std::vector<Vec>& pts, const FieldPtr& base,
                                    const ValidateOptions& opt = {}) {
  check_ovoid_or_oval(big, pts);
  const int n = static_cast<int>(big->e());
  const int m = pts[0].size() == 4 ? 2 * n : n;
  return egg_validate(base, n, m, field_reduce(big, base, pts), opt);
}

/// O(1,2,q) from the elliptic quadric of PG(3,q).
inline Egg elliptic_quadric_egg(unsigned q, const ValidateOptions& opt = {}) {
  auto f = field_of_order(q);
  std::vector<Subspace> els;
  for (const auto& p : elliptic_quadric_ovoid(f)) els.push_back(Subspace::point(f, p));
  return egg_validate(f, 1, 2, std::move(els), opt);
}

/// O(n,2n,p) by field reduction of the elliptic quadric of PG(3,p^n).
inline Egg reduced_quadric_egg(unsigned p, unsigned n, const ValidateOptions& opt = {}) {
  if (n == 1) return elliptic_quadric_egg(p, opt);
  auto big = field_create(p, n);
  return egg_from_field_reduction(big, elliptic_quadric_ovoid(big), field_create(p, 1), opt);
}

}  // namespace tgq
