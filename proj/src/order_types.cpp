#include "flippath/order_types.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <optional>
#include <unordered_map>

namespace flippath {

namespace {

using Wide = __int128;

int sgn(Wide v) { return (v > 0) - (v < 0); }

// o[a][b][c] for all index triples.
class OrientTable {
 public:
  explicit OrientTable(const PointSet& s) : n_(s.size()), o_(static_cast<std::size_t>(n_ * n_ * n_), 0) {
    for (int a = 0; a < n_; ++a)
      for (int b = 0; b < n_; ++b)
        for (int c = 0; c < n_; ++c)
          if (a != b && b != c && a != c) o_[idx(a, b, c)] = static_cast<signed char>(orient(s[a], s[b], s[c]));
  }
  [[nodiscard]] int operator()(int a, int b, int c) const { return o_[idx(a, b, c)]; }

 private:
  [[nodiscard]] std::size_t idx(int a, int b, int c) const { return static_cast<std::size_t>((a * n_ + b) * n_ + c); }
  int n_;
  std::vector<signed char> o_;
};

std::vector<Index> labeling(const OrientTable& o, int n, Index pivot, bool mirrored) {
  const int m = mirrored ? -1 : 1;
  std::vector<Index> rest;
  for (Index i = 0; i < n; ++i)
    if (i != pivot) rest.push_back(i);
  std::sort(rest.begin(), rest.end(), [&](Index a, Index b) { return m * o(pivot, a, b) > 0; });
  rest.insert(rest.begin(), pivot);
  return rest;
}

std::string signature_of(const OrientTable& o, const std::vector<Index>& label, bool mirrored) {
  const int n = static_cast<int>(label.size());
  const int m = mirrored ? -1 : 1;
  std::string out;
  out.reserve(static_cast<std::size_t>(n * (n - 1) * (n - 2) / 6));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) out.push_back(m * o(label[i], label[j], label[k]) > 0 ? '1' : '0');
  return out;
}

[[maybe_unused]] bool same_labeled_order_type(const PointSet& a, const std::vector<Point>& b) {
  const int n = a.size();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k)
        if (orient(a[i], a[j], a[k]) != orient(b[i], b[j], b[k])) return false;
  return true;
}

std::vector<Point> translated_to_origin(std::vector<Point> pts) {
  Coord mx = pts[0].x, my = pts[0].y;
  for (const Point& p : pts) {
    mx = std::min(mx, p.x);
    my = std::min(my, p.y);
  }
  for (Point& p : pts) {
    p.x -= mx;
    p.y -= my;
  }
  return pts;
}

int violations(const std::vector<Point>& pts, const std::vector<signed char>& want) {
  const int n = static_cast<int>(pts.size());
  int bad = 0;
  std::size_t t = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k, ++t)
        bad += orient(pts[static_cast<std::size_t>(i)], pts[static_cast<std::size_t>(j)], pts[static_cast<std::size_t>(k)]) !=
               want[t];
  return bad;
}

// Smallest-grid realization of the labeled order type of `s` found by
// rounding onto grids of increasing size, repairing each rounding by
// greedy single-point moves.
PointSet compact(const PointSet& s) {
  const int n = s.size();
  std::vector<signed char> want;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) want.push_back(static_cast<signed char>(orient(s[i], s[j], s[k])));
  Coord hi = 1;
  for (const Point& p : s.points()) hi = std::max({hi, p.x, p.y});
  // Orientation-preserving affine maps tried before gridding; the first is
  // the identity.
  static constexpr std::array<std::array<long double, 4>, 6> kMaps{{
      {1, 0, 0, 1}, {0.8L, -0.6L, 0.6L, 0.8L}, {0.6L, 0.8L, -0.8L, 0.6L},
      {1, 0.5L, 0, 1}, {1, 0, 0.5L, 1}, {0.7071L, -0.7071L, 0.7071L, 0.7071L}}};
  auto attempt = [&](Coord grid, const std::array<long double, 4>& m) -> std::optional<std::vector<Point>> {
    std::vector<long double> xs, ys;
    for (const Point& p : s.points()) {
      xs.push_back(m[0] * p.x + m[1] * p.y);
      ys.push_back(m[2] * p.x + m[3] * p.y);
    }
    const long double mnx = *std::min_element(xs.begin(), xs.end()), mny = *std::min_element(ys.begin(), ys.end());
    const long double ext =
        std::max(*std::max_element(xs.begin(), xs.end()) - mnx, *std::max_element(ys.begin(), ys.end()) - mny);
    const long double f = static_cast<long double>(grid) / ext;
    std::vector<Point> pts;
    for (int i = 0; i < n; ++i)
      pts.push_back({std::llround((xs[static_cast<std::size_t>(i)] - mnx) * f),
                     std::llround((ys[static_cast<std::size_t>(i)] - mny) * f)});
    int bad = violations(pts, want);
    for (int round = 0; round < 4 * n && bad > 0; ++round) {
      bool moved = false;
      for (int i = 0; i < n && bad > 0; ++i) {
        const Point orig = pts[static_cast<std::size_t>(i)];
        Point best = orig;
        int best_bad = bad;
        for (Coord dx = -3; dx <= 3; ++dx)
          for (Coord dy = -3; dy <= 3; ++dy) {
            const Point c{orig.x + dx, orig.y + dy};
            if (c.x < 0 || c.y < 0 || c.x > grid || c.y > grid) continue;
            pts[static_cast<std::size_t>(i)] = c;
            const int b = violations(pts, want);
            if (b < best_bad) {
              best_bad = b;
              best = c;
            }
          }
        pts[static_cast<std::size_t>(i)] = best;
        if (best_bad < bad) moved = true;
        bad = best_bad;
      }
      if (!moved) break;
    }
    if (bad == 0 && is_general_position(pts)) return pts;
    return std::nullopt;
  };
  for (int bits = 3; bits <= 24; ++bits) {
    const Coord grid = (Coord{1} << bits) - 1;
    if (grid >= hi) break;
    for (const auto& m : kMaps)
      if (auto pts = attempt(grid, m)) return PointSet(translated_to_origin(std::move(*pts)));
    if (bits == 8) {
      // Last chance for the byte grid: a fan of rotations combined with shears.
      for (int r = 1; r < 48; ++r) {
        const long double a = 0.1309L * r, c = std::cos(a), sn = std::sin(a), sh = 0.25L * (r % 5) - 0.5L;
        const std::array<long double, 4> m{c, -sn + sh * c, sn, c + sh * sn};
        if (auto pts = attempt(grid, m)) return PointSet(translated_to_origin(std::move(*pts)));
      }
    }
  }
  return PointSet(translated_to_origin(std::vector<Point>(s.points().begin(), s.points().end())));
}

struct Candidate {
  PointSet points;
};

// One point per cell of the arrangement of lines through pairs of `r`,
// realized exactly on a (possibly refined) integer grid.
void arrangement_extensions(const PointSet& r, const std::function<void(PointSet)>& emit) {
  const int n = r.size();
  struct Line {
    Point a;
    Point d;
  };
  std::vector<Line> lines;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) lines.push_back({r[i], {r[j].x - r[i].x, r[j].y - r[i].y}});

  Coord extent = 1;
  for (const Point& p : r.points()) extent = std::max({extent, p.x, p.y});

  // Vertex v as rational (X/D, Y/D); rays sorted by angle.
  auto process_vertex = [&](Wide X, Wide Y, Wide D) {
    std::vector<int> through;
    std::vector<int> sign_at(lines.size(), 0);
    for (std::size_t li = 0; li < lines.size(); ++li) {
      const Line& L = lines[li];
      const Wide s = Wide{L.d.x} * (Y - Wide{L.a.y} * D) - Wide{L.d.y} * (X - Wide{L.a.x} * D);
      sign_at[li] = sgn(s);
      if (s == 0) through.push_back(static_cast<int>(li));
    }
    std::vector<Point> rays;
    for (int li : through) {
      rays.push_back(lines[static_cast<std::size_t>(li)].d);
      rays.push_back({-lines[static_cast<std::size_t>(li)].d.x, -lines[static_cast<std::size_t>(li)].d.y});
    }
    auto half = [](const Point& p) { return (p.y > 0 || (p.y == 0 && p.x > 0)) ? 0 : 1; };
    std::sort(rays.begin(), rays.end(), [&](const Point& a, const Point& b) {
      if (half(a) != half(b)) return half(a) < half(b);
      return Wide{a.x} * b.y - Wide{a.y} * b.x > 0;
    });
    rays.erase(std::unique(rays.begin(), rays.end(),
                           [](const Point& a, const Point& b) {
                             return Wide{a.x} * b.y - Wide{a.y} * b.x == 0 && Wide{a.x} * b.x + Wide{a.y} * b.y > 0;
                           }),
               rays.end());
    const long double vx = static_cast<long double>(X) / static_cast<long double>(D);
    const long double vy = static_cast<long double>(Y) / static_cast<long double>(D);
    for (std::size_t k = 0; k < rays.size(); ++k) {
      const Point u = rays[k], w = rays[(k + 1) % rays.size()];
      const long double lu = std::hypot(static_cast<long double>(u.x), static_cast<long double>(u.y));
      const long double lw = std::hypot(static_cast<long double>(w.x), static_cast<long double>(w.y));
      const long double bx = u.x / lu + w.x / lw, by = u.y / lu + w.y / lw;
      std::vector<int> want(lines.size());
      long double tmin = static_cast<long double>(extent);
      for (std::size_t li = 0; li < lines.size(); ++li) {
        const Line& L = lines[li];
        if (sign_at[li] != 0) {
          want[li] = sign_at[li];
          const long double denom = L.d.x * by - L.d.y * bx;
          const long double val = L.d.x * (vy - L.a.y) - L.d.y * (vx - L.a.x);
          if (denom != 0) {
            const long double t = -val / denom;
            if (t > 0) tmin = std::min(tmin, t);
          }
        } else {
          const int cu = sgn(Wide{L.d.x} * u.y - Wide{L.d.y} * u.x);
          const int cw = sgn(Wide{L.d.x} * w.y - Wide{L.d.y} * w.x);
          want[li] = cu != 0 ? cu : cw;
        }
      }
      const long double qx = vx + 0.5L * tmin * bx, qy = vy + 0.5L * tmin * by;
      for (int m = 0; m < 40; ++m) {
        const Coord scale = Coord{1} << m;
        const Point q{std::llround(qx * scale), std::llround(qy * scale)};
        bool ok = true;
        for (std::size_t li = 0; li < lines.size() && ok; ++li) {
          const Line& L = lines[li];
          const Wide s = Wide{L.d.x} * (Wide{q.y} - Wide{L.a.y} * scale) - Wide{L.d.y} * (Wide{q.x} - Wide{L.a.x} * scale);
          ok = sgn(s) == want[li];
        }
        if (!ok) continue;
        std::vector<Point> pts;
        for (const Point& p : r.points()) pts.push_back({p.x * scale, p.y * scale});
        pts.push_back(q);
        emit(PointSet(translated_to_origin(std::move(pts))));
        break;
      }
    }
  };

  for (int i = 0; i < n; ++i) process_vertex(r[i].x, r[i].y, 1);
  std::vector<std::array<int, 2>> ends;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) ends.push_back({i, j});
  for (std::size_t a = 0; a < lines.size(); ++a)
    for (std::size_t b = a + 1; b < lines.size(); ++b) {
      if (ends[a][0] == ends[b][0] || ends[a][0] == ends[b][1] || ends[a][1] == ends[b][0] || ends[a][1] == ends[b][1])
        continue;
      const Line& p = lines[a];
      const Line& q = lines[b];
      const Wide den = Wide{p.d.x} * q.d.y - Wide{p.d.y} * q.d.x;
      if (den == 0) continue;
      const Wide num = (Wide{q.a.x} - p.a.x) * q.d.y - (Wide{q.a.y} - p.a.y) * q.d.x;
      Wide X = Wide{p.a.x} * den + num * p.d.x, Y = Wide{p.a.y} * den + num * p.d.y, D = den;
      if (D < 0) {
        X = -X;
        Y = -Y;
        D = -D;
      }
      process_vertex(X, Y, D);
    }
}

}  // namespace

Coord max_coordinate(const PointSet& s) {
  Coord m = 0;
  for (const Point& p : s.points()) m = std::max({m, p.x < 0 ? -p.x : p.x, p.y < 0 ? -p.y : p.y});
  return m;
}

std::vector<Index> radial_labeling(const PointSet& s, Index pivot, bool mirrored) {
  return labeling(OrientTable(s), s.size(), pivot, mirrored);
}

std::string order_type_signature(const PointSet& s) {
  const OrientTable o(s);
  std::string best;
  for (Index h : convex_hull(s))
    for (bool mirrored : {false, true}) {
      std::string sig = signature_of(o, labeling(o, s.size(), h, mirrored), mirrored);
      if (best.empty() || sig < best) best = std::move(sig);
    }
  return best;
}

std::vector<OrderTypeCatalog> generate_order_types(int max_n, const GeneratorOptions& opt) {
  std::vector<OrderTypeCatalog> out;
  if (max_n < 3) return out;
  std::vector<std::vector<PointSet>> seeds{{PointSet({{0, 0}, {1, 0}, {0, 1}})}};
  out.push_back({3, {seeds[0][0]}});
  for (int n = 4; n <= max_n; ++n) {
    OrderTypeCatalog cat{n, {}};
    std::unordered_map<std::string, int> known;
    std::vector<std::vector<PointSet>> next;
    for (const auto& group : seeds)
      for (const PointSet& r : group)
        arrangement_extensions(r, [&](PointSet cand) {
          std::string sig = order_type_signature(cand);
          auto it = known.find(sig);
          if (it == known.end()) {
            PointSet small = compact(cand);
            known.emplace(std::move(sig), static_cast<int>(cat.sets.size()));
            cat.sets.push_back(small);
            next.push_back({small});
            if (opt.progress) opt.progress(n, cat.sets.size());
          } else if (static_cast<int>(next[static_cast<std::size_t>(it->second)].size()) < opt.seeds_per_type) {
            next[static_cast<std::size_t>(it->second)].push_back(max_coordinate(cand) > 4096 ? compact(cand) : std::move(cand));
          }
        });
    seeds = std::move(next);
    out.push_back(std::move(cat));
  }
  return out;
}

}  // namespace flippath
