#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "flippath/geometry.hpp"

using namespace flippath;

TEST_CASE("orient signs") {
  CHECK(orient({0, 0}, {1, 0}, {0, 1}) == 1);
  CHECK(orient({0, 0}, {1, 1}, {2, 2}) == 0);
  CHECK(orient({0, 0}, {0, 1}, {1, 0}) == -1);
}

TEST_CASE("orient is exact near the coordinate limit") {
  // The determinant here is 1 while each product is about 2^100.
  const Coord big = Coord{1} << 50;
  CHECK(orient({0, 0}, {big, big + 1}, {big - 1, big}) == 1);
}

TEST_CASE("segments_cross") {
  CHECK(segments_cross({0, 0}, {2, 2}, {0, 2}, {2, 0}));
  CHECK_FALSE(segments_cross({0, 0}, {1, 0}, {1, 0}, {2, 1}));
  CHECK_FALSE(segments_cross({0, 0}, {1, 0}, {0, 1}, {1, 1}));
}

TEST_CASE("predicate symmetries on random input") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> u(-50, 50);
  auto pt = [&] { return Point{u(rng), u(rng)}; };
  for (int it = 0; it < 2000; ++it) {
    const Point a = pt(), b = pt(), c = pt(), d = pt();
    CHECK(orient(a, b, c) == -orient(a, c, b));
    const bool x = segments_cross(a, b, c, d);
    CHECK(x == segments_cross(c, d, a, b));
    CHECK(x == segments_cross(b, a, d, c));
    // Reference: long double area signs are exact at this magnitude.
    const long double det = static_cast<long double>(b.x - a.x) * (c.y - a.y) -
                            static_cast<long double>(b.y - a.y) * (c.x - a.x);
    CHECK(orient(a, b, c) == (det > 0) - (det < 0));
  }
}

TEST_CASE("general position and PointSet validation") {
  const std::vector<Point> line{{0, 0}, {1, 0}, {2, 0}};
  CHECK_FALSE(is_general_position(line));
  CHECK(is_general_position(fixtures::w5().points()));
  const std::vector<Point> two{{0, 0}, {5, 5}};
  CHECK(is_general_position(two));
  CHECK_THROWS_AS(PointSet{line}, GeometryError);
  CHECK_THROWS_AS(PointSet({{1, 1}, {1, 1}, {0, 3}}), GeometryError);
}

TEST_CASE("convex hull") {
  CHECK(convex_hull(fixtures::square()) == std::vector<Index>{0, 1, 2, 3});
  const PointSet w = fixtures::w5();
  CHECK(convex_hull(w) == std::vector<Index>{0, 1, 2, 3});
  const Hull h(w);
  CHECK(h.is_interior(4));
  CHECK(h.interior_count() == 1);
  CHECK(h.next(3) == 0);
  CHECK(h.prev(0) == 3);
  CHECK(h.consecutive(0, 3));
  CHECK_FALSE(h.consecutive(0, 2));
  CHECK(convex_hull(PointSet({{0, 0}, {3, 1}, {1, 4}})).size() == 3);
  // Hull triples turn left.
  const PointSet dc = fixtures::dc8();
  const auto hull = convex_hull(dc);
  REQUIRE(hull.size() == 4);
  for (std::size_t i = 0; i < hull.size(); ++i)
    CHECK(orient(dc[hull[i]], dc[hull[(i + 1) % 4]], dc[hull[(i + 2) % 4]]) == 1);
}

TEST_CASE("radial order") {
  const std::vector<Point> others{{1, 0}, {0, 1}, {-1, 0}};
  CHECK(radial_order({0, 0}, others, {1, 0}) == std::vector<Index>{0, 1, 2});
  CHECK(radial_order({0, 0}, others, {0, 1}) == std::vector<Index>{1, 2, 0});
  const std::vector<Point> corners{{0, 0}, {4, 0}, {4, 4}, {0, 4}};
  CHECK(radial_order({2, 1}, corners, {0, 0}) == std::vector<Index>{0, 1, 2, 3});
  const std::vector<Point> one{{3, 3}};
  CHECK(radial_order({0, 0}, one, {3, 3}) == std::vector<Index>{0});
  const std::vector<Point> same_ray{{1, 1}, {2, 2}};
  CHECK_THROWS_AS(radial_order({0, 0}, same_ray, {1, 0}), GeometryError);
}

TEST_CASE("triangle emptiness") {
  const PointSet w = fixtures::w5();
  CHECK_FALSE(triangle_empty(w, 0, 1, 2));
  CHECK(triangle_empty(w, 0, 1, 4));
  CHECK(triangle_empty(PointSet({{0, 0}, {3, 1}, {1, 4}}), 0, 1, 2));
  for (auto [a, b, c] : {std::array{0, 1, 2}, std::array{2, 0, 1}, std::array{1, 2, 0}, std::array{2, 1, 0}})
    CHECK_FALSE(triangle_empty(w, a, b, c));
}

TEST_CASE("rational helpers") {
  // Lines y = 0 and x = 3 meet at (3, 0).
  const RationalPoint x = line_intersection({0, 0}, {1, 0}, {3, 5}, {0, 1});
  CHECK(x.x == 3 * x.den);
  CHECK(x.y == 0);
  CHECK_THROWS_AS(line_intersection({0, 0}, {1, 1}, {0, 1}, {2, 2}), GeometryError);
  // Lines y = x and y = 1 - x meet at (1/2, 1/2).
  const RationalPoint h = line_intersection({0, 0}, {1, 1}, {0, 1}, {1, -1});
  CHECK(h.x * 2 == h.den);
  CHECK(orient_around(h, {1, 0}, {1, 1}) == 1);
  CHECK(compare_distance(h, {0, 0}, {1, 1}) == 0);
  CHECK(compare_distance(h, {0, 0}, {2, 2}) < 0);
}

TEST_CASE("polygon containment") {
  const std::vector<Point> sq{{0, 0}, {4, 0}, {4, 4}, {0, 4}};
  CHECK(inside_polygon(sq, {2, 1}));
  CHECK_FALSE(inside_polygon(sq, {5, 1}));
  // Midpoint queries through doubled coordinates: (1/2, 7/2) is inside.
  CHECK(inside_polygon(sq, {1, 7}, 2));
  CHECK_FALSE(inside_polygon(sq, {1, 9}, 2));
  // A ray through a vertex of a non-convex polygon.
  const std::vector<Point> dart{{0, 0}, {6, 0}, {3, 2}, {6, 4}, {0, 4}};
  CHECK(inside_polygon(dart, {1, 2}));
  CHECK_FALSE(inside_polygon(dart, {5, 2}));
}
