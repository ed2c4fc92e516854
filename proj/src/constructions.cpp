#include "flippath/constructions.hpp"

#include <algorithm>

namespace flippath {

namespace {

// `members` sorted counter-clockwise around s[center], starting at `start`.
std::vector<Index> around(const PointSet& s, Index center, const std::vector<Index>& members, Index start) {
  std::vector<Point> pts;
  for (Index m : members) pts.push_back(s[m]);
  std::vector<Index> out;
  for (Index k : radial_order(s[center], pts, s[start])) out.push_back(members[static_cast<std::size_t>(k)]);
  return out;
}

std::vector<Index> all_except(int n, Index skip) {
  std::vector<Index> out;
  for (Index i = 0; i < n; ++i)
    if (i != skip) out.push_back(i);
  return out;
}

// Viable partners of an extreme anchor, ccw from hull.next(anchor) to
// hull.prev(anchor).
std::vector<Index> extreme_viable_order(const PointSet& s, const Hull& h, Index anchor) {
  std::vector<Index> members;
  for (Index i = 0; i < s.size(); ++i)
    if (i != anchor && (h.is_interior(i) || h.consecutive(anchor, i))) members.push_back(i);
  return around(s, anchor, members, h.next(anchor));
}

// Hull vertices strictly between `from` and `to`, walking clockwise from `from`.
std::vector<Index> hull_cw_between(const Hull& h, Index from, Index to) {
  std::vector<Index> out;
  for (Index v = h.prev(from); v != to; v = h.prev(v)) out.push_back(v);
  return out;
}

}  // namespace

bool is_plane_cycle(const CrossTable& t, const CycleOrder& cycle) {
  const int n = static_cast<int>(cycle.size());
  if (n != t.n() || n < 3) return false;
  if (!is_plane_path(t, cycle)) return false;
  const EdgeMask& closing = t.crossing(t.edge_id(cycle.front(), cycle.back()));
  for (int i = 1; i < n; ++i)
    if (closing.test(t.edge_id(cycle[static_cast<std::size_t>(i - 1)], cycle[static_cast<std::size_t>(i)]))) return false;
  return true;
}

bool is_plane_cycle(const PointSet& s, const CycleOrder& cycle) {
  const int n = static_cast<int>(cycle.size());
  if (n != s.size() || n < 3 || !is_plane_path(s, cycle)) return false;
  const Point a = s[cycle.front()], b = s[cycle.back()];
  for (int i = 1; i < n; ++i)
    if (segments_cross(a, b, s[cycle[static_cast<std::size_t>(i - 1)]], s[cycle[static_cast<std::size_t>(i)]])) return false;
  return true;
}

Order oriented_from(const Order& path, Index p) {
  if (path.front() == p) return path;
  if (path.back() == p) return Order(path.rbegin(), path.rend());
  throw ConstructionError("vertex " + std::to_string(p) + " is not an end vertex of the path");
}

SpanningPath path_with_endpoints(const PointSet& s, Index p, Index q) {
  const int n = s.size();
  if (p == q) throw ConstructionError("path_with_endpoints: p and q coincide");
  if (p < 0 || q < 0 || p >= n || q >= n) throw ConstructionError("path_with_endpoints: index out of range");
  if (n == 2) return SpanningPath({p, q});
  const Hull h(s);
  if (h.is_interior(p)) {
    // Connect p to the point radially after q, then sweep around to q.
    std::vector<Index> sweep = around(s, p, all_except(n, p), q);
    Order path{p};
    path.insert(path.end(), sweep.begin() + 1, sweep.end());
    path.push_back(q);
    return SpanningPath(path);
  }
  if (h.is_interior(q)) return path_with_endpoints(s, q, p).reversed();

  // Both extreme: sort around the crossing x of two strict supporting lines
  // through p and q; p and q are then the first and last points seen from x.
  auto support = [&](Index v, int weight) {
    const Point a = s[h.prev(v)], o = s[v], b = s[h.next(v)];
    return Point{weight * (o.x - a.x) + (b.x - o.x), weight * (o.y - a.y) + (b.y - o.y)};
  };
  const Point dq = support(q, 1);
  Point dp = support(p, 1);
  if (static_cast<__int128>(dp.x) * dq.y - static_cast<__int128>(dp.y) * dq.x == 0) dp = support(p, 2);
  const RationalPoint x = line_intersection(s[p], dp, s[q], dq);
  const int dir = orient_around(x, s[p], s[q]);
  Order path(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) path[static_cast<std::size_t>(i)] = i;
  std::sort(path.begin(), path.end(), [&](Index a, Index b) {
    if (a == b) return false;
    const int o = orient_around(x, s[a], s[b]);
    if (o != 0) return o == dir;
    return compare_distance(x, s[a], s[b]) < 0;
  });
  if (path.front() != p || path.back() != q) throw ConstructionError("path_with_endpoints: supporting-line sort failed");
  return SpanningPath(path);
}

bool viable_start_edge(const Hull& h, Index u, Index v) {
  return u != v && (h.is_interior(u) || h.is_interior(v) || h.consecutive(u, v));
}

bool viable_start_edge(const PointSet& s, Index u, Index v) { return viable_start_edge(Hull(s), u, v); }

SpanningPath path_from_start_edge(const PointSet& s, Index u, Index v) {
  const int n = s.size();
  const Hull h(s);
  if (!viable_start_edge(h, u, v))
    throw ConstructionError("edge " + std::to_string(u) + "-" + std::to_string(v) + " is not a viable starting edge");
  if (n == 2) return SpanningPath({u, v});
  if (h.is_interior(u) || h.consecutive(u, v)) {
    std::vector<Index> sweep = around(s, u, all_except(n, u), v);
    // For an extreme u the sweep must turn into the hull, away from the
    // outside of the edge uv.
    if (h.is_extreme(u) && h.prev(u) == v) std::reverse(sweep.begin() + 1, sweep.end());
    Order path{u};
    path.insert(path.end(), sweep.begin(), sweep.end());
    return SpanningPath(path);
  }
  // u extreme, v interior: u v, then P2 reversed, P3, P1.
  const std::vector<Index> order = extreme_viable_order(s, h, u);
  const auto at = static_cast<std::size_t>(std::find(order.begin(), order.end(), v) - order.begin());
  Order path{u};
  path.insert(path.end(), order.begin() + static_cast<std::ptrdiff_t>(at), order.end());
  for (Index w : hull_cw_between(h, order.back(), order.front())) path.push_back(w);
  path.insert(path.end(), order.begin(), order.begin() + static_cast<std::ptrdiff_t>(at));
  return SpanningPath(path);
}

Index ViableStartSet::after(Index p) const {
  const auto it = std::find(members.begin(), members.end(), p);
  if (it == members.end()) throw ConstructionError("vertex not in viable start set");
  return std::next(it) == members.end() ? members.front() : *std::next(it);
}

bool ViableStartSet::contains(Index p) const { return std::find(members.begin(), members.end(), p) != members.end(); }

bool ViableStartSet::consecutive(Index q, Index r) const {
  return contains(q) && contains(r) && q != r && (after(q) == r || after(r) == q);
}

ViableStartSet viable_start_set(const PointSet& s, Index anchor) {
  const Hull h(s);
  ViableStartSet out{anchor, {}};
  if (h.is_extreme(anchor)) {
    out.members = extreme_viable_order(s, h, anchor);
  } else {
    std::vector<Index> rest = all_except(s.size(), anchor);
    out.members = around(s, anchor, rest, rest.front());
  }
  return out;
}

CycleOrder cycle_with_two_edges(const PointSet& s, Index v1, Index q, Index r) {
  const ViableStartSet vs = viable_start_set(s, v1);
  if (!vs.consecutive(q, r))
    throw ConstructionError("cycle_with_two_edges: " + std::to_string(q) + " and " + std::to_string(r) +
                            " are not consecutive viable partners of " + std::to_string(v1));
  const Hull h(s);
  const int n = s.size();
  CycleOrder cycle{v1};
  if (h.is_interior(v1) || (h.consecutive(v1, q) && h.consecutive(v1, r) && vs.members.front() != vs.members.back() &&
                            ((vs.members.front() == q && vs.members.back() == r) ||
                             (vs.members.front() == r && vs.members.back() == q)))) {
    // Sweep around v1 from q, away from r, ending at r.
    std::vector<Index> sweep = around(s, v1, all_except(n, v1), q);
    if (sweep[1] == r) std::reverse(sweep.begin() + 1, sweep.end());
    cycle.insert(cycle.end(), sweep.begin(), sweep.end());
    return cycle;
  }
  // v1 extreme with q, r adjacent in the viable order: lo comes right before hi.
  const std::vector<Index>& order = vs.members;
  const auto iq = static_cast<std::size_t>(std::find(order.begin(), order.end(), q) - order.begin());
  const auto ir = static_cast<std::size_t>(std::find(order.begin(), order.end(), r) - order.begin());
  const std::size_t hi_at = std::max(iq, ir);
  cycle.insert(cycle.end(), order.begin() + static_cast<std::ptrdiff_t>(hi_at), order.end());
  for (Index w : hull_cw_between(h, order.back(), order.front())) cycle.push_back(w);
  cycle.insert(cycle.end(), order.begin(), order.begin() + static_cast<std::ptrdiff_t>(hi_at));
  if (cycle[1] != q) std::reverse(cycle.begin() + 1, cycle.end());
  return cycle;
}

BfsOracles::BfsOracles(const PointSet& s, FlipFilter filter) : points_(s), table_(s), filter_(filter) {}

const BfsOracles::Cached& BfsOracles::get(const Constraint& c) {
  auto& slot = cache_[c.vertices];
  if (!slot) {
    auto fresh = std::make_unique<Cached>();
    fresh->family = enumerate_paths(table_, c);
    fresh->graph = build_flip_graph(table_, fresh->family, filter_);
    slot = std::move(fresh);
  }
  return *slot;
}

std::optional<FlipSequence> BfsOracles::connect_same_edge(const Order& from, const Order& to) {
  if (from.size() < 2 || from[0] != to[0] || from[1] != to[1])
    throw ConstructionError("edge oracle: paths must start with the same edge");
  const Cached& c = get(Constraint::edge(from[0], from[1]));
  return shortest_flip_sequence(table_, c.family, c.graph, from, to);
}

std::optional<FlipSequence> BfsOracles::connect_same_start(Index p, const Order& from, const Order& to) {
  const Cached& c = get(Constraint::start(p));
  return shortest_flip_sequence(table_, c.family, c.graph, oriented_from(from, p), oriented_from(to, p));
}

EdgeOracle BfsOracles::edge_oracle() {
  return [this](const Order& a, const Order& b) { return connect_same_edge(a, b); };
}

StartOracle BfsOracles::start_oracle() {
  return [this](Index p, const Order& a, const Order& b) { return connect_same_start(p, a, b); };
}

FixedStartReport connect_fixed_start(const PointSet& s, Index p, const Order& from, const Order& to,
                                     const EdgeOracle& oracle) {
  const CrossTable t(s);
  Order cur = oriented_from(from, p);
  const Order goal = oriented_from(to, p);
  FixedStartReport rep{FlipSequence(cur), 0};
  if (cur == goal) return rep;
  const ViableStartSet vs = viable_start_set(s, p);
  auto run_oracle = [&](const Order& a, const Order& b) {
    if (a == b) return;
    auto seq = oracle(a, b);
    if (!seq)
      throw OracleFailure("no flip sequence between " + format_path(a) + " and " + format_path(b) +
                          " with fixed starting edge");
    rep.sequence.append(t, *seq);
  };
  while (cur[1] != goal[1]) {
    const Index v2 = cur[1];
    const Index vx = vs.after(v2);
    const CycleOrder cycle = cycle_with_two_edges(s, p, v2, vx);
    // The cycle starts p, v2 and ends with vx: dropping p vx leaves a path
    // starting with the current edge.
    run_oracle(cur, cycle);
    rep.sequence.push(t, Edge(p, v2), Edge(p, vx));
    cur = oriented_from(rep.sequence.end(), p);
    ++rep.rotations;
    if (rep.rotations > static_cast<int>(vs.members.size()))
      throw ConstructionError("connect_fixed_start: rotation did not reach the target edge");
  }
  run_oracle(cur, goal);
  return rep;
}

AnyReport connect_any(const PointSet& s, const Order& from, const Order& to, const StartOracle& oracle) {
  const CrossTable t(s);
  AnyReport rep{FlipSequence(from), std::nullopt, 0};
  if (SpanningPath(from) == SpanningPath(to)) return rep;
  auto run = [&](Index p, const Order& a, const Order& b) {
    ++rep.oracle_calls;
    auto seq = oracle(p, oriented_from(a, p), oriented_from(b, p));
    if (!seq)
      throw OracleFailure("no flip sequence between " + format_path(a) + " and " + format_path(b) +
                          " with fixed end vertex " + std::to_string(p));
    rep.sequence.append(t, *seq);
  };
  for (Index p : {from.front(), from.back()})
    if (p == to.front() || p == to.back()) {
      run(p, from, to);
      return rep;
    }
  const Index va = from.front(), vc = to.front();
  const Order middle = path_with_endpoints(s, va, vc).order();
  rep.middle = middle;
  run(va, from, middle);
  run(vc, middle, to);
  return rep;
}

}  // namespace flippath
