#include "flippath/geometry.hpp"

#include <algorithm>
#include <numeric>

namespace flippath {

namespace {

using Wide = __int128;

int sign(Wide v) { return (v > 0) - (v < 0); }

Wide cross(Wide ax, Wide ay, Wide bx, Wide by) { return ax * by - ay * bx; }

// Checked multiply/subtract for the rational predicates.
Wide mul(Wide a, Wide b) {
  Wide r;
  if (__builtin_mul_overflow(a, b, &r)) throw GeometryError("rational predicate overflow");
  return r;
}
Wide sub(Wide a, Wide b) {
  Wide r;
  if (__builtin_sub_overflow(a, b, &r)) throw GeometryError("rational predicate overflow");
  return r;
}
Wide add(Wide a, Wide b) {
  Wide r;
  if (__builtin_add_overflow(a, b, &r)) throw GeometryError("rational predicate overflow");
  return r;
}

}  // namespace

int orient(Point a, Point b, Point c) {
  return sign(cross(Wide{b.x} - a.x, Wide{b.y} - a.y, Wide{c.x} - a.x, Wide{c.y} - a.y));
}

bool segments_cross(Point a, Point b, Point c, Point d) {
  if (a == c || a == d || b == c || b == d) return false;
  const int o1 = orient(a, b, c);
  const int o2 = orient(a, b, d);
  const int o3 = orient(c, d, a);
  const int o4 = orient(c, d, b);
  return o1 * o2 < 0 && o3 * o4 < 0;
}

bool is_general_position(std::span<const Point> points) {
  const std::size_t n = points.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      if (points[i] == points[j]) return false;
      for (std::size_t k = j + 1; k < n; ++k)
        if (orient(points[i], points[j], points[k]) == 0) return false;
    }
  return true;
}

PointSet::PointSet(std::vector<Point> points) : points_(std::move(points)) {
  const std::size_t n = points_.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      if (points_[i] == points_[j])
        throw GeometryError("points " + std::to_string(i) + " and " + std::to_string(j) + " coincide");
      for (std::size_t k = j + 1; k < n; ++k)
        if (orient(points_[i], points_[j], points_[k]) == 0)
          throw GeometryError("points " + std::to_string(i) + ", " + std::to_string(j) + ", " +
                              std::to_string(k) + " are collinear");
    }
}

std::vector<Index> convex_hull(const PointSet& s) {
  const int n = s.size();
  std::vector<Index> idx(static_cast<std::size_t>(n));
  std::iota(idx.begin(), idx.end(), 0);
  if (n < 3) return idx;
  std::sort(idx.begin(), idx.end(), [&](Index a, Index b) {
    return std::pair{s[a].y, s[a].x} < std::pair{s[b].y, s[b].x};
  });
  // Monotone chain on (y, x) order; the result starts at the lowest point and
  // runs counter-clockwise.
  std::vector<Index> hull(2 * static_cast<std::size_t>(n));
  std::size_t k = 0;
  for (int i = 0; i < n; ++i) {
    while (k >= 2 && orient(s[hull[k - 2]], s[hull[k - 1]], s[idx[i]]) >= 0) --k;
    hull[k++] = idx[i];
  }
  for (int i = n - 2, lower = static_cast<int>(k) + 1; i >= 0; --i) {
    while (static_cast<int>(k) >= lower && orient(s[hull[k - 2]], s[hull[k - 1]], s[idx[i]]) >= 0) --k;
    hull[k++] = idx[i];
  }
  hull.resize(k - 1);
  // The (y, x) sweep with ">= 0" pops yields a clockwise chain; flip it.
  std::reverse(hull.begin() + 1, hull.end());
  return hull;
}

std::vector<bool> interior_mask(const PointSet& s) {
  std::vector<bool> inside(static_cast<std::size_t>(s.size()), true);
  for (Index h : convex_hull(s)) inside[static_cast<std::size_t>(h)] = false;
  return inside;
}

Hull::Hull(const PointSet& s) : order_(convex_hull(s)), pos_(static_cast<std::size_t>(s.size()), -1) {
  for (std::size_t i = 0; i < order_.size(); ++i) pos_[static_cast<std::size_t>(order_[i])] = static_cast<int>(i);
}

Index Hull::next(Index i) const {
  const int p = pos_[static_cast<std::size_t>(i)];
  if (p < 0) throw GeometryError("Hull::next on interior point");
  return order_[static_cast<std::size_t>((p + 1) % size())];
}

Index Hull::prev(Index i) const {
  const int p = pos_[static_cast<std::size_t>(i)];
  if (p < 0) throw GeometryError("Hull::prev on interior point");
  return order_[static_cast<std::size_t>((p + size() - 1) % size())];
}

bool Hull::consecutive(Index a, Index b) const {
  return is_extreme(a) && is_extreme(b) && (next(a) == b || prev(a) == b);
}

std::vector<Index> radial_order(Point center, std::span<const Point> others, Point start_direction) {
  const Wide dx = Wide{start_direction.x} - center.x;
  const Wide dy = Wide{start_direction.y} - center.y;
  if (dx == 0 && dy == 0) throw GeometryError("radial_order: start direction equals center");
  auto half = [&](const Point& p) {
    const Wide vx = Wide{p.x} - center.x, vy = Wide{p.y} - center.y;
    const Wide c = cross(dx, dy, vx, vy);
    if (c > 0) return 0;
    if (c == 0 && dx * vx + dy * vy > 0) return 0;
    return 1;
  };
  std::vector<Index> order(others.size());
  std::iota(order.begin(), order.end(), 0);
  for (const Point& p : others)
    if (p == center) throw GeometryError("radial_order: point coincides with center");
  bool tie = false;
  std::sort(order.begin(), order.end(), [&](Index a, Index b) {
    const Point& pa = others[static_cast<std::size_t>(a)];
    const Point& pb = others[static_cast<std::size_t>(b)];
    const int ha = half(pa), hb = half(pb);
    if (ha != hb) return ha < hb;
    const int o = orient(center, pa, pb);
    if (o == 0 && a != b) tie = true;
    return o > 0;
  });
  if (tie) throw GeometryError("radial_order: two points collinear with center");
  return order;
}

bool strictly_inside_triangle(Point p, Point a, Point b, Point c) {
  const int o1 = orient(a, b, p), o2 = orient(b, c, p), o3 = orient(c, a, p);
  return (o1 > 0 && o2 > 0 && o3 > 0) || (o1 < 0 && o2 < 0 && o3 < 0);
}

bool triangle_empty(const PointSet& s, Index a, Index b, Index c) {
  for (Index i = 0; i < s.size(); ++i) {
    if (i == a || i == b || i == c) continue;
    if (strictly_inside_triangle(s[i], s[a], s[b], s[c])) return false;
  }
  return true;
}

bool inside_polygon(std::span<const Point> polygon, Point q, Coord scale) {
  bool inside = false;
  const std::size_t m = polygon.size();
  for (std::size_t i = 0, j = m - 1; i < m; j = i++) {
    const Wide xi = Wide{polygon[i].x} * scale, yi = Wide{polygon[i].y} * scale;
    const Wide xj = Wide{polygon[j].x} * scale, yj = Wide{polygon[j].y} * scale;
    if ((yi > q.y) == (yj > q.y)) continue;
    // Edge straddles the horizontal line through q; test which side q is on.
    const Wide lhs = (Wide{q.x} - xi) * (yj - yi);
    const Wide rhs = (xj - xi) * (Wide{q.y} - yi);
    if ((yj > yi) ? lhs < rhs : lhs > rhs) inside = !inside;
  }
  return inside;
}

RationalPoint line_intersection(Point p, Point dp, Point q, Point dq) {
  // p + t dp = q + u dq  =>  t = cross(q - p, dq) / cross(dp, dq)
  const Wide den = cross(dp.x, dp.y, dq.x, dq.y);
  if (den == 0) throw GeometryError("line_intersection: parallel lines");
  const Wide num = cross(Wide{q.x} - p.x, Wide{q.y} - p.y, dq.x, dq.y);
  RationalPoint r;
  r.x = add(mul(Wide{p.x}, den), mul(num, dp.x));
  r.y = add(mul(Wide{p.y}, den), mul(num, dp.y));
  r.den = den;
  if (r.den < 0) {
    r.x = -r.x;
    r.y = -r.y;
    r.den = -r.den;
  }
  return r;
}

int orient_around(const RationalPoint& c, Point a, Point b) {
  const Wide ax = sub(mul(Wide{a.x}, c.den), c.x), ay = sub(mul(Wide{a.y}, c.den), c.y);
  const Wide bx = sub(mul(Wide{b.x}, c.den), c.x), by = sub(mul(Wide{b.y}, c.den), c.y);
  return sign(sub(mul(ax, by), mul(ay, bx)));
}

int compare_distance(const RationalPoint& c, Point a, Point b) {
  const Wide ax = sub(mul(Wide{a.x}, c.den), c.x), ay = sub(mul(Wide{a.y}, c.den), c.y);
  const Wide bx = sub(mul(Wide{b.x}, c.den), c.x), by = sub(mul(Wide{b.y}, c.den), c.y);
  return sign(sub(add(mul(ax, ax), mul(ay, ay)), add(mul(bx, bx), mul(by, by))));
}

}  // namespace flippath
