#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "tgq/egg.hpp"

using namespace tgq;

namespace {

template <class F>
ErrorCode code_of(F&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::Parse;
}

const Egg& o123() {
  static const Egg e = elliptic_quadric_egg(3);
  return e;
}
const Egg& o243() {
  static const Egg e = reduced_quadric_egg(3, 2);
  return e;
}

// Direct form of the tangent definition: points x off the union such that <pi_i, x> meets no
// other element, visited in a shuffled order.
Subspace tangent_by_definition(const Egg& e, int i, std::uint64_t seed) {
  auto pts = points_of(Subspace::whole(e.field, e.ambient_dim()));
  std::mt19937_64 rng(seed);
  std::shuffle(pts.begin(), pts.end(), rng);
  Matrix rows = e.elements[i].rows();
  for (const auto& x : pts) {
    if (e.owner_of(x) != -1) continue;
    const Subspace s = span_vectors(e.elements[i], {x});
    bool ok = true;
    for (std::size_t j = 0; j < e.size() && ok; ++j)
      if (static_cast<int>(j) != i && !meet(s, e.elements[j]).is_empty()) ok = false;
    if (ok) rows.push_back(x);
  }
  return Subspace::from_rows(e.field, e.ambient_dim(), rows);
}

}  // namespace

TEST(EllipticQuadric, PointCountsAndNoThreeCollinear) {
  EXPECT_EQ(elliptic_quadric_ovoid(field_of_order(3)).size(), 10u);
  auto f9 = field_of_order(9);
  auto ov = elliptic_quadric_ovoid(f9);
  EXPECT_EQ(ov.size(), 82u);
  EXPECT_NO_THROW(check_ovoid_or_oval(f9, ov));
  // Every line of PG(3,3) meets the ovoid in at most 2 points.
  auto f3 = field_of_order(3);
  auto o3 = elliptic_quadric_ovoid(f3);
  auto all = points_of(Subspace::whole(f3, 3));
  for (std::size_t a = 0; a < all.size(); ++a)
    for (std::size_t b = a + 1; b < all.size(); ++b) {
      auto line = Subspace::from_rows(f3, 3, {all[a], all[b]});
      int on = 0;
      for (const auto& p : o3) on += line.contains_vector(p);
      ASSERT_LE(on, 2);
    }
}

TEST(EggValidate, O123IsValid) {
  const Egg& e = o123();
  EXPECT_EQ(e.size(), 10u);
  EXPECT_TRUE(e.warnings.empty());
  EXPECT_EQ(e.validation["mode"], "full");
}

TEST(EggValidate, CollinearTripleFails) {
  auto f = field_of_order(3);
  auto pts = elliptic_quadric_ovoid(f);
  std::vector<Subspace> els;
  for (const auto& p : pts) els.push_back(Subspace::point(f, p));
  // Replace one point by a third point on the line through the first two.
  auto line = Subspace::from_rows(f, 3, {pts[0], pts[1]});
  for (const auto& x : points_of(line))
    if (x != pts[0] && x != pts[1]) {
      els[9] = Subspace::point(f, x);
      break;
    }
  EXPECT_EQ(code_of([&] { egg_validate(f, 1, 2, els); }), ErrorCode::TripleSpanFailure);
  els.pop_back();
  EXPECT_EQ(code_of([&] { egg_validate(f, 1, 2, els); }), ErrorCode::WrongCount);
  EXPECT_EQ(code_of([&] { egg_validate(f, 2, 2, std::vector<Subspace>(10, Subspace::point(f, pts[0]))); }),
            ErrorCode::WrongDim);
}

TEST(EggValidate, O243FromFieldReduction) {
  const Egg& e = o243();
  EXPECT_EQ(e.size(), 82u);
  EXPECT_EQ(e.ambient_dim(), 7);
  EXPECT_EQ(e.validation["triples_checked"], 88560);
  for (const auto& t : e.tangents) EXPECT_EQ(t.dim(), 5);
  for (std::size_t i = 0; i < e.size(); ++i)
    for (std::size_t j = 0; j < e.size(); ++j)
      if (i != j) {
        ASSERT_TRUE(meet(e.tangents[i], e.elements[j]).is_empty());
      }
}

TEST(EggValidate, PseudoOvalFromConic) {
  auto f9 = field_of_order(9);
  Egg e = egg_from_field_reduction(f9, conic_oval(f9), field_of_order(3));
  EXPECT_EQ(e.n, 2);
  EXPECT_EQ(e.m, 2);
  EXPECT_EQ(e.size(), 10u);
  EXPECT_EQ(e.ambient_dim(), 5);
}

TEST(EggValidate, FieldReductionRejectsNonOvoid) {
  auto f9 = field_of_order(9);
  auto pts = elliptic_quadric_ovoid(f9);
  pts[5] = pts[4];
  EXPECT_EQ(code_of([&] { egg_from_field_reduction(f9, pts, field_of_order(3)); }), ErrorCode::InputNotOvoid);
  auto line_pts = points_of(Subspace::from_rows(f9, 2, {{1, 0, 0}, {0, 1, 0}}));
  EXPECT_EQ(code_of([&] { egg_from_field_reduction(f9, line_pts, field_of_order(3)); }), ErrorCode::InputNotOvoid);
}

TEST(Tangent, O123EqualsQuadricPolarPlane) {
  const Egg& e = o123();
  const FiniteField& F = *e.field;
  const auto [b, c] = irreducible_quadratic(F);
  auto Q = [&](const Vec& x) {
    return F.add(F.add(F.mul(x[0], x[1]), F.mul(x[2], x[2])), F.add(F.mul(b, F.mul(x[2], x[3])), F.mul(c, F.mul(x[3], x[3]))));
  };
  for (std::size_t i = 0; i < e.size(); ++i) {
    const Vec& p = e.elements[i].vec();
    Matrix rows;
    for (const auto& y : points_of(Subspace::whole(e.field, 3))) {
      Vec s(4);
      for (int k = 0; k < 4; ++k) s[k] = F.add(p[k], y[k]);
      if (F.sub(F.sub(Q(s), Q(p)), Q(y)) == 0) rows.push_back(y);
    }
    EXPECT_EQ(e.tangents[i], Subspace::from_rows(e.field, 3, rows));
  }
}

TEST(Tangent, IndependentOfEnumerationOrder) {
  for (const Egg* e : {&o123(), &o243()})
    for (int i : {0, 1, static_cast<int>(e->size()) - 1})
      for (std::uint64_t seed : {1u, 2u}) EXPECT_EQ(tangent_by_definition(*e, i, seed), e->tangents[i]);
}

TEST(Egg, UnionSize) {
  for (const Egg* e : {&o123(), &o243()}) {
    const std::size_t per = point_count(e->q(), e->n);
    std::size_t covered = 0;
    for (int o : e->owner_table()) covered += o >= 0;
    EXPECT_EQ(covered, e->size() * per);
  }
}

TEST(Goodness, O123GoodWithPlaneSectionsOfFour) {
  for (std::size_t i = 0; i < o123().size(); ++i) {
    auto r = goodness_test(o123(), static_cast<int>(i));
    EXPECT_TRUE(r.good);
    EXPECT_EQ(r.span_histogram.size(), 1u);
    EXPECT_EQ(r.span_histogram.begin()->first, 4);
    EXPECT_EQ(r.pairs_covered, 36u);
  }
}

TEST(Goodness, O243GoodAtEveryElement) {
  std::uint64_t pairs = 0;
  for (std::size_t i = 0; i < o243().size(); ++i) {
    auto r = goodness_test(o243(), static_cast<int>(i));
    ASSERT_TRUE(r.good) << i;
    ASSERT_EQ(r.span_histogram.begin()->first, 10);
    ASSERT_EQ(r.distinct_spans, 90u);
    pairs += r.pairs_covered;
  }
  EXPECT_EQ(pairs, 82u * 81 * 80 / 2);
}

TEST(Goodness, PlantedBadElementIsReported) {
  Egg bad = o243();
  // Move element 5 onto a line of the span <pi_0, pi_1, pi_2> that misses all elements there.
  const Subspace s = span({bad.elements[0], bad.elements[1], bad.elements[2]});
  auto pts = points_of(s);
  Subspace planted;
  for (std::size_t a = 0; a < pts.size() && planted.is_empty(); ++a)
    for (std::size_t b = a + 1; b < pts.size(); ++b) {
      auto l = Subspace::from_rows(bad.field, 7, {pts[a], pts[b]});
      bool skew = true;
      for (const auto& el : bad.elements) skew = skew && meet(l, el).is_empty();
      if (skew) {
        planted = l;
        break;
      }
    }
  ASSERT_FALSE(planted.is_empty());
  bad.elements[5] = planted;
  auto r = goodness_test(bad, 0);
  EXPECT_FALSE(r.good);
  EXPECT_EQ(r.counterexample.size(), 3u);
  EXPECT_EQ(code_of([&] { goodness_test(egg_from_field_reduction(field_of_order(9), conic_oval(field_of_order(9)), field_of_order(3)), 0); }),
            ErrorCode::NotM2N);
}

TEST(TranslationDual, O123AndO243) {
  for (const Egg* e : {&o123(), &o243()}) {
    Egg d = translation_dual(*e);
    EXPECT_EQ(d.size(), e->size());
    for (std::size_t i = 0; i < e->size(); ++i) ASSERT_EQ(d.tangents[i], annihilator(e->elements[i]));
  }
  auto f4 = field_of_order(4);
  std::vector<Subspace> oval;
  for (const auto& p : conic_oval(f4)) oval.push_back(Subspace::point(f4, p));
  Egg pseudo = egg_validate(f4, 1, 1, oval);
  EXPECT_EQ(code_of([&] { translation_dual(pseudo); }), ErrorCode::DualHypothesisFailed);
}

TEST(Egg, RelabelSwapsBaseElement) {
  Egg r = o123().relabeled(3);
  EXPECT_EQ(r.elements[0], o123().elements[3]);
  EXPECT_EQ(r.tangents[3], o123().tangents[0]);
  EXPECT_EQ(r.owner_of(o123().elements[3].vec()), 0);
}
