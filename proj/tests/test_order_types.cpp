#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "fixtures.hpp"
#include "flippath/order_types.hpp"

using namespace flippath;

TEST_CASE("signature is invariant under relabeling and mirroring") {
  const PointSet w = fixtures::w5();
  const std::string sig = order_type_signature(w);
  CHECK(order_type_signature(PointSet({{2, 1}, {4, 4}, {0, 0}, {0, 4}, {4, 0}})) == sig);
  CHECK(order_type_signature(PointSet({{0, 0}, {-4, 0}, {-4, 4}, {0, 4}, {-2, 1}})) == sig);
  CHECK(order_type_signature(fixtures::convex(5)) != sig);
}

TEST_CASE("signature separates five-point sets by interior count") {
  const PointSet a({{0, 0}, {4, 0}, {4, 4}, {0, 4}, {2, 1}});
  const PointSet b({{0, 0}, {10, 0}, {5, 8}, {1, 1}, {9, 1}});
  CHECK(order_type_signature(a) != order_type_signature(b));
}

TEST_CASE("generated catalogs match the published counts up to n = 7") {
  const auto cats = generate_order_types(7);
  REQUIRE(cats.size() == 5);
  const std::vector<std::size_t> expected{1, 2, 3, 16, 135};
  for (std::size_t i = 0; i < cats.size(); ++i) {
    CHECK(cats[i].n == static_cast<int>(i) + 3);
    CHECK(cats[i].sets.size() == expected[i]);
    std::set<std::string> sigs;
    for (const PointSet& s : cats[i].sets) {
      CHECK(s.size() == cats[i].n);
      CHECK(max_coordinate(s) <= 255);
      for (const Point& p : s.points()) CHECK((p.x >= 0 && p.y >= 0));
      sigs.insert(order_type_signature(s));
    }
    CHECK(sigs.size() == cats[i].sets.size());
  }
}
