#pragma once

// Exact integer predicates over planar point sets.
//
// Every predicate works on 64-bit coordinates and evaluates determinants in
// 128-bit arithmetic, so results are exact for |x|, |y| < 2^62.

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace flippath {

using Coord = std::int64_t;
using Index = int;

struct Point {
  Coord x = 0;
  Coord y = 0;

  friend bool operator==(const Point&, const Point&) = default;
  friend auto operator<=>(const Point&, const Point&) = default;
};

class GeometryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Sign of det(b - a, c - a): +1 ccw, -1 cw, 0 collinear.
int orient(Point a, Point b, Point c);

/// True iff the open segments ab and cd share a point. Segments that share
/// an endpoint never cross (general position rules out overlap).
bool segments_cross(Point a, Point b, Point c, Point d);

/// All points distinct and no three collinear.
bool is_general_position(std::span<const Point> points);

/// Ordered, index-stable point set in general position.
class PointSet {
 public:
  PointSet() = default;
  /// Throws GeometryError on duplicate or collinear points.
  explicit PointSet(std::vector<Point> points);

  [[nodiscard]] int size() const { return static_cast<int>(points_.size()); }
  [[nodiscard]] const Point& operator[](Index i) const { return points_[static_cast<std::size_t>(i)]; }
  [[nodiscard]] std::span<const Point> points() const { return points_; }

  friend bool operator==(const PointSet&, const PointSet&) = default;

 private:
  std::vector<Point> points_;
};

/// Extreme points in counter-clockwise order, starting at the lowest
/// (then leftmost) point.
std::vector<Index> convex_hull(const PointSet& s);

/// Per-index flag: true for points strictly inside the hull.
std::vector<bool> interior_mask(const PointSet& s);

/// Convex hull with O(1) position and neighbor queries.
class Hull {
 public:
  Hull() = default;
  explicit Hull(const PointSet& s);

  /// Extreme points, counter-clockwise.
  [[nodiscard]] const std::vector<Index>& order() const { return order_; }
  [[nodiscard]] int size() const { return static_cast<int>(order_.size()); }
  [[nodiscard]] bool is_extreme(Index i) const { return pos_[static_cast<std::size_t>(i)] >= 0; }
  [[nodiscard]] bool is_interior(Index i) const { return pos_[static_cast<std::size_t>(i)] < 0; }
  /// Counter-clockwise successor / predecessor of an extreme point.
  [[nodiscard]] Index next(Index i) const;
  [[nodiscard]] Index prev(Index i) const;
  [[nodiscard]] bool consecutive(Index a, Index b) const;
  [[nodiscard]] int interior_count() const { return static_cast<int>(pos_.size() - order_.size()); }

 private:
  std::vector<Index> order_;
  std::vector<int> pos_;
};

/// Indices into `others` sorted counter-clockwise around `center`, starting
/// at the ray from `center` through `start_direction`. Throws GeometryError
/// if two of `others` are collinear with `center` on the same ray, or if
/// `center` coincides with one of them.
std::vector<Index> radial_order(Point center, std::span<const Point> others, Point start_direction);

/// True iff no point of `s` other than a, b, c lies strictly inside abc.
bool triangle_empty(const PointSet& s, Index a, Index b, Index c);

/// Strictly inside triangle abc (abc in either orientation).
bool strictly_inside_triangle(Point p, Point a, Point b, Point c);

/// Even-odd containment of q / scale in the simple polygon (vertices in
/// cyclic order). Points on the boundary give an unspecified answer; callers
/// only query points off every polygon edge.
bool inside_polygon(std::span<const Point> polygon, Point q, Coord scale = 1);

/// Point with rational coordinates (x / den, y / den), den > 0.
struct RationalPoint {
  __int128 x = 0;
  __int128 y = 0;
  __int128 den = 1;
};

/// Intersection of the line through p with direction dp and the line through
/// q with direction dq. Throws GeometryError if the lines are parallel.
RationalPoint line_intersection(Point p, Point dp, Point q, Point dq);

/// Sign of det(a - c, b - c) for a rational center c. Throws GeometryError on
/// arithmetic overflow.
int orient_around(const RationalPoint& c, Point a, Point b);

/// Squared distance comparison from a rational center: sign(|a-c|^2 - |b-c|^2).
int compare_distance(const RationalPoint& c, Point a, Point b);

}  // namespace flippath
