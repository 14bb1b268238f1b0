#include <gtest/gtest.h>

#include <set>

#include "tgq/tgq_model.hpp"

using namespace tgq;

namespace {

const TModel& t123() {
  static const TModel t(elliptic_quadric_egg(3));
  return t;
}
const TModel& t243() {
  static const TModel t(reduced_quadric_egg(3, 2));
  return t;
}

}  // namespace

TEST(BuildModel, CountsAndOrders) {
  EXPECT_EQ(t123().structure().v(), 112u);
  EXPECT_EQ(t123().structure().b(), 280u);
  TModel t122(elliptic_quadric_egg(2));
  auto o = gq_check(t122.structure());
  EXPECT_EQ(o.s, 2);
  EXPECT_EQ(o.t, 4);
  EXPECT_EQ(t122.structure().v(), 27u);
  EXPECT_EQ(t122.structure().b(), 45u);
}

TEST(BuildModel, O243SampledCheck) {
  const auto& S = t243().structure();
  EXPECT_EQ(S.v(), 7300u);
  EXPECT_EQ(S.b(), 59860u);
  auto o = gq_check(S);
  EXPECT_EQ(o.mode, "sample");
  EXPECT_EQ(o.s, 9);
  EXPECT_EQ(o.t, 81);
  EXPECT_EQ(o.pairs_checked > 900000, true);
}

TEST(BuildModel, IncidenceMatchesSubspaceContainment) {
  // Each incidence of the codec agrees with containment of the modelled subspaces.
  const auto& T = t123();
  const auto& S = T.structure();
  for (Index l = 0; l < Index(S.b()); ++l) {
    const Subspace ls = T.line_subspace(l);
    for (Index p = 0; p < Index(S.v()); ++p) {
      if (p == T.infinity()) {
        ASSERT_EQ(S.incident(p, l), T.line_type(l) == TModel::LineType::Element);
        continue;
      }
      const Subspace ps = T.point_subspace(p);
      const bool expect = T.point_type(p) == TModel::PointType::Affine ? ls.contains(ps) : ps.contains(ls);
      ASSERT_EQ(S.incident(p, l), expect) << p << " " << l;
    }
  }
}

TEST(Translation, IdentityRegularityAndHomomorphism) {
  const auto& T = t123();
  const auto& S = T.structure();
  const auto vecs = T.all_vectors(T.vector_length());
  auto zero = T.translation(vecs[0]);
  EXPECT_TRUE(zero.is_identity());
  std::set<Index> images;
  for (const auto& w : vecs) {
    auto c = T.translation(w);
    ASSERT_TRUE(is_collineation(S, c));
    ASSERT_EQ(c.point_map[T.infinity()], T.infinity());
    for (std::size_t i = 0; i < T.egg().size(); ++i) ASSERT_EQ(c.line_map[T.element_line(i)], T.element_line(i));
    if (w != vecs[0]) {
      for (std::size_t p = 0; p < T.affine_count(); ++p) ASSERT_NE(c.point_map[p], Index(p));
    }
    images.insert(c.point_map[0]);
  }
  EXPECT_EQ(images.size(), T.affine_count());
  const auto& F = *T.egg().field;
  for (std::size_t a = 0; a < vecs.size(); a += 7)
    for (std::size_t b = 0; b < vecs.size(); b += 11) {
      Vec sum(vecs[a].size());
      for (std::size_t k = 0; k < sum.size(); ++k) sum[k] = F.add(vecs[a][k], vecs[b][k]);
      ASSERT_EQ(T.translation(vecs[a]).then(T.translation(vecs[b])), T.translation(sum));
    }
}

TEST(LineSymmetries, OrderSAndMaximal) {
  const auto& T = t123();
  for (std::size_t i = 0; i < T.egg().size(); ++i) {
    auto g = T.line_symmetries(i);
    ASSERT_EQ(g.size(), 3u);
    EXPECT_TRUE(g[0].is_identity());
    for (const auto& c : g) EXPECT_TRUE(fixes_star_of(T.structure(), c, T.element_line(i)));
    auto brute = symmetry_group_about(T.structure(), T.element_line(i));
    std::sort(g.begin(), g.end());
    EXPECT_EQ(brute, g);
  }
}

TEST(TranslationPoint, InfinityAndEveryPointOfClassicalInstance) {
  const auto& T = t123();
  EXPECT_TRUE(translation_point_check(T, T.infinity()).translation_point);
  for (Index p : {Index(0), Index(40), T.tangent_point(3, 1)}) {
    auto v = translation_point_check(T, p);
    EXPECT_TRUE(v.translation_point) << p;
    EXPECT_EQ(v.group_orders.size(), 10u);
  }
}

TEST(TranslationPoint, DirectionsSpanTranslationGroup) {
  for (const TModel* T : {&t123(), &t243()}) EXPECT_EQ(symmetry_direction_span(T->egg()).rank(), T->vector_length());
}

TEST(Coregularity, InfinityInBothInstances) {
  for (const TModel* T : {&t123(), &t243()})
    for (const auto& r : coregularity(T->structure(), T->infinity())) ASSERT_TRUE(r.regular);
}
