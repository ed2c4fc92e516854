#pragma once

#include <algorithm>
#include <numeric>
#include <set>
#include <vector>

#include "flippath/paths.hpp"

namespace fixtures {

using flippath::Order;
using flippath::Point;
using flippath::PointSet;

// (0,0) (4,0) (4,4) (0,4) and the center (2,1).
inline PointSet w5() { return PointSet({{0, 0}, {4, 0}, {4, 4}, {0, 4}, {2, 1}}); }

// Pentagon with a central point; a wheel that is not a double circle.
inline PointSet w6() { return PointSet({{0, 0}, {4, 0}, {5, 3}, {2, 5}, {-1, 3}, {2, 2}}); }

inline PointSet square() { return PointSet({{0, 0}, {4, 0}, {4, 4}, {0, 4}}); }

// Double circle on a square: corners 0..3, inner points 4..7 near the edges.
inline PointSet dc8() { return PointSet({{0, 0}, {10, 0}, {10, 10}, {0, 10}, {5, 1}, {9, 5}, {5, 9}, {1, 5}}); }

// Points on the parabola y = x^2 are in convex position.
inline PointSet convex(int n) {
  std::vector<Point> pts;
  for (int i = 0; i < n; ++i) pts.push_back({i, static_cast<flippath::Coord>(i) * i});
  return PointSet(pts);
}

// Brute force over all permutations with v1 < vn.
inline std::set<Order> brute_force_paths(const PointSet& s) {
  std::set<Order> out;
  Order p(static_cast<std::size_t>(s.size()));
  std::iota(p.begin(), p.end(), 0);
  do {
    if (p.front() < p.back() && flippath::is_plane_path(s, p)) out.insert(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

}  // namespace fixtures
