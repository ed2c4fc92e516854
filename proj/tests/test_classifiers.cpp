#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fixtures.hpp"
#include "flippath/classifiers.hpp"

using namespace flippath;

TEST_CASE("labels") {
  const ClassLabels w = classify(fixtures::w5());
  CHECK(w.wheel);
  CHECK_FALSE(w.convex);
  // (2,1) sits close enough to the bottom edge to form the chain 0 4 1.
  CHECK(w.gdc);
  CHECK(w.spinal);

  const ClassLabels deep = classify(fixtures::w6());
  CHECK(deep.wheel);
  CHECK_FALSE(deep.gdc);

  const ClassLabels pent = classify(PointSet({{0, 0}, {4, 0}, {6, 3}, {2, 6}, {-2, 3}}));
  CHECK(pent.convex);
  CHECK(pent.gdc);
  CHECK(pent.spinal);
  CHECK_FALSE(pent.wheel);
  REQUIRE(pent.spine);
  CHECK(pent.spine->cycle == std::vector<Index>{0, 1, 2, 3, 4});

  const ClassLabels dc = classify(fixtures::dc8());
  CHECK(dc.gdc);
  CHECK(dc.spinal);
  REQUIRE(dc.decomposition);
  CHECK(dc.decomposition->chains.size() == 4);
  for (const Chain& c : dc.decomposition->chains) CHECK(c.members.size() == 3);
}

TEST_CASE("double circle decomposition and spine") {
  const PointSet s = fixtures::dc8();
  const auto d = find_gdc_decomposition(s);
  REQUIRE(d);
  CHECK(d->chains[0].members == std::vector<Index>{0, 4, 1});
  CHECK(d->chains[1].members == std::vector<Index>{1, 5, 2});
  CHECK(d->chains[2].members == std::vector<Index>{2, 6, 3});
  CHECK(d->chains[3].members == std::vector<Index>{3, 7, 0});
  CHECK(verify_decomposition(s, *d));
  const auto sp = find_spine(s);
  REQUIRE(sp);
  CHECK(sp->cycle == std::vector<Index>{0, 4, 1, 5, 2, 6, 3, 7});
  CHECK(is_uncrossed_spanning_cycle(CrossTable(s), sp->cycle));
  CHECK(d->share_chain(0, 4, 1));
  CHECK_FALSE(d->share_chain(4, 5));
  CHECK(d->chains_of(0).size() == 2);
  CHECK(d->chains_of(5).size() == 1);
}

TEST_CASE("wheels") {
  const PointSet w = fixtures::w5();
  const auto d = find_gdc_decomposition(w);
  REQUIRE(d);
  CHECK(d->chains[0].members == std::vector<Index>{0, 4, 1});
  CHECK(find_spine(w)->cycle == std::vector<Index>{0, 4, 1, 2, 3});
  // A central point sees every hull edge with other hull points in its
  // wedge, so condition (iv) fails everywhere.
  CHECK_FALSE(find_gdc_decomposition(fixtures::w6()));
}

TEST_CASE("convex sets decompose into hull edges") {
  const PointSet c = fixtures::convex(6);
  const auto d = find_gdc_decomposition(c);
  REQUIRE(d);
  for (const Chain& ch : d->chains) CHECK(ch.members.size() == 2);
}

TEST_CASE("chain conditions reject bad witnesses") {
  const PointSet s = fixtures::dc8();
  const Hull h(s);
  CHECK(is_concave_chain(s, h, 0, 1, {0, 4, 1}));
  // Two-point chains are always concave; covering 4 is the decomposition's job.
  CHECK(is_concave_chain(s, h, 0, 1, {0, 1}));
  CHECK_FALSE(is_concave_chain(s, h, 0, 1, {0, 5, 1}));    // 5 belongs to another edge
  CHECK_FALSE(is_concave_chain(s, h, 0, 2, {0, 4, 2}));    // not hull-consecutive
  CHECK_FALSE(is_concave_chain(s, h, 0, 1, {0, 4, 2, 1}));  // extreme point inside
  ChainDecomposition bad = *find_gdc_decomposition(s);
  std::swap(bad.chains[0].members[1], bad.chains[1].members[1]);
  CHECK_FALSE(verify_decomposition(s, bad));
}

TEST_CASE("empty triangle check") {
  const PointSet pent({{0, 0}, {4, 0}, {6, 3}, {2, 6}, {-2, 3}});
  CHECK(empty_triangle_convexity_check(pent, {0, 1, 2, 3, 4}));
  CHECK_FALSE(empty_triangle_convexity_check(fixtures::dc8(), {0, 4, 1, 5, 2, 6, 3, 7}));
  CHECK_FALSE(empty_triangle_convexity_check(fixtures::w5(), {0, 1, 2, 3, 4}));
  CHECK_FALSE(empty_triangle_convexity_check(fixtures::w5(), {0, 4, 1, 2, 3}));
}

TEST_CASE("certificate text round trip") {
  const ClassLabels dc = classify(fixtures::dc8());
  const std::string text = certificate_text(dc);
  CHECK(text.rfind("SPINE: 0 4 1 5 2 6 3 7\n", 0) == 0);
  CHECK(text.find("CHAIN 0 1: 0 4 1\n") != std::string::npos);
  const Certificate c = parse_certificate(text);
  REQUIRE(c.spine);
  REQUIRE(c.decomposition);
  CHECK(c.spine->cycle == dc.spine->cycle);
  CHECK(verify_decomposition(fixtures::dc8(), *c.decomposition));
  CHECK_THROWS_AS(parse_certificate("SPINE 0 1 2"), std::invalid_argument);
  CHECK_THROWS_AS(parse_certificate("CHAIN x: 0 1"), std::invalid_argument);
}

TEST_CASE("labels are invariant under relabeling and similarity maps") {
  const PointSet s = fixtures::dc8();
  std::vector<Point> pts(s.points().begin(), s.points().end());
  std::rotate(pts.begin(), pts.begin() + 3, pts.end());
  for (Point& p : pts) p = {3 * p.x + 17, 3 * p.y - 5};
  const ClassLabels a = classify(s), b = classify(PointSet(pts));
  CHECK(a.convex == b.convex);
  CHECK(a.wheel == b.wheel);
  CHECK(a.gdc == b.gdc);
  CHECK(a.spinal == b.spinal);
}
