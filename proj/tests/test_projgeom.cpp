#include <gtest/gtest.h>

#include <random>
#include <set>

#include "tgq/projgeom.hpp"

using namespace tgq;

namespace {

Subspace random_subspace(const FieldPtr& f, int d, std::mt19937& rng) {
  std::uniform_int_distribution<int> count(0, d + 1);
  std::uniform_int_distribution<unsigned> pick(0, f->q() - 1);
  Matrix rows(count(rng), Vec(d + 1));
  for (auto& r : rows)
    for (auto& x : r) x = static_cast<Elem>(pick(rng));
  return Subspace::from_rows(f, d, rows);
}

template <class F>
ErrorCode code_of(F&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::Parse;
}

// Every form (a..f) vanishing on `pts` in PG(2,q), listed by code; brute force over q^6.
std::vector<std::array<Elem, 6>> forms_through(const FiniteField& f, const std::vector<Vec>& pts,
                                               const std::vector<std::pair<Vec, Vec>>& polar = {}) {
  std::vector<std::array<Elem, 6>> out;
  const unsigned q = f.q();
  std::size_t total = 1;
  for (int i = 0; i < 6; ++i) total *= q;
  for (std::size_t code = 1; code < total; ++code) {
    std::array<Elem, 6> c{};
    std::size_t x = code;
    for (int i = 0; i < 6; ++i) {
      c[i] = static_cast<Elem>(x % q);
      x /= q;
    }
    auto val = [&](const Vec& p) {
      Elem s = 0;
      const Elem t[6] = {f.mul(p[0], p[0]), f.mul(p[1], p[1]), f.mul(p[2], p[2]),
                         f.mul(p[0], p[1]), f.mul(p[0], p[2]), f.mul(p[1], p[2])};
      for (int i = 0; i < 6; ++i) s = f.add(s, f.mul(c[i], t[i]));
      return s;
    };
    bool ok = true;
    for (const auto& p : pts) ok = ok && val(p) == 0;
    for (const auto& [p, t] : polar) {
      Vec sum(3);
      for (int i = 0; i < 3; ++i) sum[i] = f.add(p[i], t[i]);
      ok = ok && f.sub(f.sub(val(sum), val(p)), val(t)) == 0;
    }
    if (ok) out.push_back(c);
  }
  return out;
}

}  // namespace

TEST(SubspaceFromRows, Examples) {
  auto f = field_of_order(3);
  auto p = Subspace::from_rows(f, 3, {{2, 0, 0, 0}});
  EXPECT_EQ(p.rows(), (Matrix{{1, 0, 0, 0}}));
  auto f2 = field_of_order(2);
  EXPECT_EQ(Subspace::from_rows(f2, 1, {{1, 0}, {0, 1}, {1, 1}}).rank(), 2);
  EXPECT_TRUE(Subspace::from_rows(f, 3, {}).is_empty());
  EXPECT_EQ(code_of([&] { Subspace::from_rows(f, 3, {{1, 0}}); }), ErrorCode::LengthMismatch);
}

TEST(SpanMeet, Examples) {
  auto f = field_of_order(3);
  auto h1 = annihilator(Subspace::point(f, {1, 0, 0, 0}));
  auto h2 = annihilator(Subspace::point(f, {0, 1, 0, 0}));
  EXPECT_EQ(h1.rank(), 3);
  EXPECT_EQ(meet(h1, h2).rank(), 2);
  EXPECT_EQ(span(h1, h1), h1);
  Matrix a(4, Vec(8, 0)), b(4, Vec(8, 0));
  for (int i = 0; i < 4; ++i) {
    a[i][i] = 1;
    b[i][4 + i] = 1;
  }
  EXPECT_TRUE(meet(Subspace::from_rows(f, 7, a), Subspace::from_rows(f, 7, b)).is_empty());
  EXPECT_EQ(code_of([&] { meet(h1, Subspace::whole(f, 2)); }), ErrorCode::AmbientMismatch);
}

TEST(Annihilator, Examples) {
  auto f = field_of_order(3);
  auto h = annihilator(Subspace::point(f, {1, 0, 0, 0}));
  EXPECT_EQ(h.rank(), 3);
  for (const auto& r : h.rows()) EXPECT_EQ(r[0], 0);
  EXPECT_EQ(annihilator(Subspace::empty(f, 3)).rank(), 4);
  auto line = Subspace::from_rows(f, 7, {{1, 2, 0, 0, 1, 0, 0, 0}, {0, 1, 1, 1, 0, 0, 2, 0}});
  EXPECT_EQ(annihilator(line).rank(), 6);
}

TEST(Annihilator, InvolutionAndDimension) {
  auto f = field_of_order(3);
  std::mt19937 rng(0);
  for (int it = 0; it < 10000; ++it) {
    auto a = random_subspace(f, 7, rng);
    auto b = annihilator(a);
    ASSERT_EQ(b.rank(), 8 - a.rank());
    ASSERT_EQ(annihilator(b), a);
  }
}

TEST(SpanMeet, ModularLawAndDimensionFormula) {
  auto f = field_of_order(3);
  std::mt19937 rng(7);
  for (int it = 0; it < 2000; ++it) {
    auto a = random_subspace(f, 5, rng);
    auto b = random_subspace(f, 5, rng);
    auto c = span(a, random_subspace(f, 5, rng));
    ASSERT_EQ(meet(span(a, b), c), span(a, meet(b, c)));
    ASSERT_EQ(span(a, b).rank() + meet(a, b).rank(), a.rank() + b.rank());
  }
}

TEST(PointsOf, Counts) {
  EXPECT_EQ(points_of(Subspace::whole(field_of_order(3), 3)).size(), 40u);
  auto f4 = field_of_order(4);
  EXPECT_EQ(points_of(Subspace::from_rows(f4, 3, {{1, 2, 0, 0}, {0, 0, 1, 3}})).size(), 5u);
  EXPECT_EQ(points_of(Subspace::whole(field_of_order(2), 2)).size(), 7u);
  EXPECT_EQ(code_of([] { points_of(Subspace::empty(field_of_order(2), 2)); }), ErrorCode::EmptySubspace);
}

TEST(PointsOf, NormalizedDistinctAndContained) {
  auto f = field_of_order(4);
  std::mt19937 rng(3);
  for (int it = 0; it < 50; ++it) {
    auto s = random_subspace(f, 4, rng);
    if (s.is_empty()) continue;
    auto pts = points_of(s);
    std::set<Vec> seen;
    for (auto p : pts) {
      Vec n = p;
      ASSERT_TRUE(normalize(*f, n));
      ASSERT_EQ(n, p);
      ASSERT_TRUE(s.contains_vector(p));
      ASSERT_TRUE(seen.insert(p).second);
    }
    ASSERT_EQ(pts.size(), point_count(4, s.rank()));
  }
}

TEST(PointIndexCodec, RoundTrip) {
  auto f = field_of_order(3);
  PointIndex idx(f, 3);
  ASSERT_EQ(idx.size(), 40u);
  for (std::size_t i = 0; i < idx.size(); ++i) {
    Vec v = idx.point(i);
    for (auto& x : v) x = f->mul(x, 2);
    ASSERT_EQ(idx.index(v), static_cast<int>(i));
  }
}

TEST(ProjectThrough, Examples) {
  auto f = field_of_order(3);
  auto center = Subspace::point(f, {0, 0, 0, 1});
  auto target = Subspace::from_rows(f, 3, {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}});
  EXPECT_EQ(project_through(center, target, Subspace::point(f, {1, 1, 1, 2})).vec(), (Vec{1, 1, 1, 0}));
  auto inside = Subspace::from_rows(f, 3, {{1, 2, 0, 0}, {0, 0, 1, 0}});
  EXPECT_EQ(project_through(center, target, inside), inside);
  EXPECT_EQ(code_of([&] { project_through(center, target, span(center, inside)); }), ErrorCode::CenterMeetsX);
  EXPECT_EQ(code_of([&] { project_through(center, center, inside); }), ErrorCode::NotComplementary);
}

TEST(FitProjectivity, IdentityOnFrame) {
  auto f = field_of_order(3);
  std::vector<std::pair<Vec, Vec>> pairs;
  for (const Vec& v : Matrix{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 1}}) pairs.emplace_back(v, v);
  auto m = fit_projectivity(f, pairs, 2);
  EXPECT_EQ(m.matrix(), (Matrix{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}));
}

TEST(FitProjectivity, TranslationOfProjectiveLine) {
  auto f = field_of_order(3);
  // x -> x+1 on the affine chart (x,1); the point (1,0) is fixed.
  std::vector<std::pair<Vec, Vec>> pairs = {{{0, 1}, {1, 1}}, {{1, 1}, {2, 1}}, {{2, 1}, {0, 1}}, {{1, 0}, {1, 0}}};
  for (auto& [s, t] : pairs) {
    normalize(*f, s);
    normalize(*f, t);
  }
  // Brute force over all 2x2 matrices for those mapping every pair, normalized by first nonzero entry.
  std::set<Matrix> found;
  for (unsigned code = 0; code < 81; ++code) {
    Matrix m{{Elem(code % 3), Elem(code / 3 % 3)}, {Elem(code / 9 % 3), Elem(code / 27)}};
    if (rank(*f, m) < 2) continue;
    bool ok = true;
    for (const auto& [s, t] : pairs) {
      Vec img = mat_vec(*f, m, s);
      normalize(*f, img);
      ok = ok && img == t;
    }
    if (ok && m[0][0] == 1) found.insert(m);
  }
  ASSERT_EQ(found.size(), 1u);
  EXPECT_EQ(*found.begin(), (Matrix{{1, 1}, {0, 1}}));
  EXPECT_EQ(fit_projectivity(f, pairs, 1).matrix(), *found.begin());
}

TEST(FitProjectivity, CollinearSourcesHaveNoFrame) {
  auto f = field_of_order(3);
  std::vector<std::pair<Vec, Vec>> pairs;
  for (const Vec& v : Matrix{{1, 0, 0}, {0, 1, 0}, {1, 1, 0}, {1, 2, 0}}) pairs.emplace_back(v, v);
  EXPECT_EQ(code_of([&] { fit_projectivity(f, pairs, 2); }), ErrorCode::NoFrame);
}

TEST(FitProjectivity, ReproducesRandomMaps) {
  auto f = field_of_order(4);
  std::mt19937 rng(11);
  std::uniform_int_distribution<unsigned> pick(0, 3);
  PointIndex idx(f, 3);
  for (int it = 0; it < 30; ++it) {
    Matrix m(4, Vec(4));
    do {
      for (auto& r : m)
        for (auto& x : r) x = pick(rng);
    } while (rank(*f, m) < 4);
    for (unsigned frob : {0u, 1u}) {
      Projectivity truth(f, m, frob);
      std::vector<std::pair<Vec, Vec>> pairs;
      for (std::size_t i = 0; i < idx.size(); ++i) pairs.emplace_back(idx.point(i), truth.apply(idx.point(i)));
      auto fit = fit_projectivity(f, pairs, 3, frob);
      ASSERT_EQ(fit, truth);
      for (const auto& [s, t] : pairs) ASSERT_EQ(fit.apply(s), t);
    }
  }
}

TEST(FitConic, FivePointsOverGF5) {
  auto f = field_of_order(5);
  // The conic x z - y^2 over GF(5); (0,1,0) is not on it, so (1,4,1) is used as fifth point.
  std::vector<Vec> pts = {{1, 0, 0}, {0, 0, 1}, {1, 1, 1}, {1, 2, 4}, {1, 4, 1}};
  auto brute = forms_through(*f, pts);
  ASSERT_EQ(brute.size(), 4u);  // one projective form: its q-1 nonzero multiples
  auto c = fit_conic(f, 2, pts, {});
  // x z - y^2 normalized so the first nonzero coefficient is 1: (0, -1, 0, 0, 1, 0) -> (0,1,0,0,-1,0).
  EXPECT_EQ(c.coef, (std::array<Elem, 6>{0, 1, 0, 0, 4, 0}));
  bool in_brute = false;
  for (const auto& b : brute) in_brute |= b == c.coef;
  EXPECT_TRUE(in_brute);
}

TEST(FitConic, LiteralFivePointsAreUniqueButNotXzMinusY2) {
  auto f = field_of_order(5);
  std::vector<Vec> pts = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 1}, {1, 2, 4}};
  auto brute = forms_through(*f, pts);
  ASSERT_EQ(brute.size(), 4u);
  auto c = fit_conic(f, 2, pts, {});
  bool in_brute = false;
  for (const auto& b : brute) in_brute |= b == c.coef;
  EXPECT_TRUE(in_brute);
  EXPECT_FALSE(c.contains(Vec{1, 1, 2}) && c.contains(Vec{1, 2, 4}) && c.value_local({1, 3, 9 % 5}) == 0 &&
               c.coef == (std::array<Elem, 6>{0, 1, 0, 0, 4, 0}));
}

TEST(FitConic, ThreePointsTwoTangentsUniqueAtQ3) {
  auto f = field_of_order(3);
  // x z - y^2: tangents at (1,0,0) and (0,0,1) are z = 0 and x = 0, meeting in u = (0,1,0).
  std::vector<Vec> pts = {{1, 1, 1}};
  auto z0 = Subspace::from_rows(f, 2, {{1, 0, 0}, {0, 1, 0}});
  auto x0 = Subspace::from_rows(f, 2, {{0, 1, 0}, {0, 0, 1}});
  auto c = fit_conic(f, 2, pts, {{{1, 0, 0}, z0}, {{0, 0, 1}, x0}});
  auto brute = forms_through(*f, {{1, 1, 1}, {1, 0, 0}, {0, 0, 1}}, {{{1, 0, 0}, {0, 1, 0}}, {{0, 0, 1}, {0, 1, 0}}});
  ASSERT_EQ(brute.size(), 2u);
  EXPECT_EQ(conic_tangent(c, {1, 0, 0}), z0);
  EXPECT_EQ(conic_tangent(c, {0, 0, 1}), x0);
  EXPECT_EQ(conic_points(c).size(), 4u);
}

TEST(FitConic, CollinearInputsFail) {
  auto f = field_of_order(5);
  std::vector<Vec> pts = {{1, 0, 0}, {0, 1, 0}, {1, 1, 0}, {0, 0, 1}, {1, 2, 3}};
  const auto code = code_of([&] { fit_conic(f, 2, pts, {}); });
  EXPECT_TRUE(code == ErrorCode::Singular || code == ErrorCode::NoConic);
  EXPECT_EQ(code_of([&] { fit_conic(f, 2, {{1, 0, 0}, {0, 1, 0}, {1, 1, 0}}, {}); }), ErrorCode::NoConic);
}

TEST(ConicTangent, XzMinusY2AtOrigin) {
  auto f = field_of_order(3);
  ConicForm c;
  c.plane = Subspace::whole(f, 2);
  c.coef = {0, 2, 0, 0, 1, 0};
  auto t = conic_tangent(c, {1, 0, 0});
  EXPECT_EQ(t, Subspace::from_rows(f, 2, {{1, 0, 0}, {0, 1, 0}}));
  int on = 0;
  for (const auto& p : points_of(t)) on += c.contains(p);
  EXPECT_EQ(on, 1);
  EXPECT_EQ(code_of([&] { conic_tangent(c, {0, 1, 0}); }), ErrorCode::NotOnConic);
  EXPECT_EQ(code_of([&] { conic_nucleus(c); }), ErrorCode::NucleusOddChar);
}

TEST(ConicNucleus, GF4UniqueOffConicOnAllTangents) {
  auto f = field_of_order(4);
  ConicForm c;
  c.plane = Subspace::whole(f, 2);
  c.coef = {0, 1, 0, 0, 1, 0};  // x z + y^2
  ASSERT_TRUE(conic_nonsingular(c));
  auto pts = conic_points(c);
  ASSERT_EQ(pts.size(), 5u);
  // Brute force: plane points lying on every tangent.
  std::vector<Vec> common;
  for (const auto& y : points_of(c.plane)) {
    bool all = true;
    for (const auto& p : pts) all = all && conic_tangent(c, p).contains_vector(y);
    if (all) common.push_back(y);
  }
  ASSERT_EQ(common.size(), 1u);
  EXPECT_EQ(conic_nucleus(c).vec(), common[0]);
  EXPECT_FALSE(c.contains(common[0]));
}

class ConicProps : public ::testing::TestWithParam<unsigned> {};

TEST_P(ConicProps, NonsingularConicsBehaveClassically) {
  auto f = field_of_order(GetParam());
  const unsigned q = f->q();
  std::mt19937 rng(q);
  std::uniform_int_distribution<unsigned> pick(0, q - 1);
  int tested = 0;
  for (int it = 0; it < 400 && tested < 60; ++it) {
    ConicForm c;
    c.plane = Subspace::whole(f, 2);
    for (auto& x : c.coef) x = pick(rng);
    if (!conic_nonsingular(c)) continue;
    ++tested;
    auto pts = conic_points(c);
    ASSERT_EQ(pts.size(), q + 1);
    std::vector<Subspace> tangents;
    for (const auto& p : pts) {
      auto t = conic_tangent(c, p);
      int on = 0;
      for (const auto& y : points_of(t)) on += c.contains(y);
      ASSERT_EQ(on, 1);
      for (const auto& o : tangents) ASSERT_NE(o, t);
      tangents.push_back(t);
    }
    if (q % 2 == 0) {
      auto nuc = conic_nucleus(c);
      for (const auto& t : tangents) ASSERT_TRUE(t.contains(nuc));
    } else {
      std::set<Matrix> meets;
      for (std::size_t a = 0; a < tangents.size(); ++a)
        for (std::size_t b = a + 1; b < tangents.size(); ++b) ASSERT_TRUE(meets.insert(meet(tangents[a], tangents[b]).rows()).second);
    }
  }
  EXPECT_GT(tested, 10);
}

INSTANTIATE_TEST_SUITE_P(Fields, ConicProps, ::testing::Values(2u, 3u, 4u, 5u, 7u, 8u, 9u));
