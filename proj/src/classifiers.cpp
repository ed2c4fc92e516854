#include "flippath/classifiers.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace flippath {

namespace {

// Condition (iv) for the pair x, y against the points in `outside`.
bool separates(const PointSet& s, Index p, Index q, Index x, Index y, const std::vector<Index>& outside) {
  const int op = (p == x || p == y) ? 0 : orient(s[x], s[y], s[p]);
  const int oq = (q == x || q == y) ? 0 : orient(s[x], s[y], s[q]);
  if (op != 0 && oq != 0 && op != oq) return outside.empty();
  int side = 0;
  for (Index z : outside) {
    const int oz = orient(s[x], s[y], s[z]);
    if (oz == op || oz == oq) return false;
    if (side == 0) side = oz;
    if (oz != side) return false;
  }
  return true;
}

bool convex_position(const PointSet& s, const std::vector<Index>& pts) {
  const std::size_t m = pts.size();
  if (m < 4) return true;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t b = a + 1; b < m; ++b)
        for (std::size_t c = b + 1; c < m; ++c) {
          if (i == a || i == b || i == c) continue;
          if (strictly_inside_triangle(s[pts[i]], s[pts[a]], s[pts[b]], s[pts[c]])) return false;
        }
  return true;
}

bool chain_ok(const PointSet& s, Index p, Index q, const std::vector<Index>& members, const std::vector<Index>& outside) {
  if (!convex_position(s, members)) return false;
  for (std::size_t i = 0; i < members.size(); ++i)
    for (std::size_t j = i + 1; j < members.size(); ++j)
      if (!separates(s, p, q, members[i], members[j], outside)) return false;
  return true;
}

// Members in chain order p .. q, read off the hull of the chain itself.
std::vector<Index> chain_order(const PointSet& s, Index p, Index q, const std::vector<Index>& members) {
  if (members.size() <= 2) return {p, q};
  std::vector<Point> pts;
  for (Index m : members) pts.push_back(s[m]);
  const std::vector<Index> local = convex_hull(PointSet(pts));
  std::vector<Index> cyc;
  for (Index k : local) cyc.push_back(members[static_cast<std::size_t>(k)]);
  std::rotate(cyc.begin(), std::find(cyc.begin(), cyc.end(), p), cyc.end());
  if (cyc[1] == q) std::reverse(cyc.begin() + 1, cyc.end());
  return cyc;
}

}  // namespace

std::vector<Edge> Spine::edges() const {
  std::vector<Edge> out;
  for (std::size_t i = 0; i < cycle.size(); ++i) out.emplace_back(cycle[i], cycle[(i + 1) % cycle.size()]);
  return out;
}

bool Chain::contains(Index v) const { return std::find(members.begin(), members.end(), v) != members.end(); }

std::vector<int> ChainDecomposition::chains_of(Index v) const {
  std::vector<int> out;
  for (std::size_t i = 0; i < chains.size(); ++i)
    if (chains[i].contains(v)) out.push_back(static_cast<int>(i));
  return out;
}

bool ChainDecomposition::share_chain(Index a, Index b) const {
  return std::any_of(chains.begin(), chains.end(), [&](const Chain& c) { return c.contains(a) && c.contains(b); });
}

bool ChainDecomposition::share_chain(Index a, Index b, Index c) const {
  return std::any_of(chains.begin(), chains.end(),
                     [&](const Chain& ch) { return ch.contains(a) && ch.contains(b) && ch.contains(c); });
}

bool is_concave_chain(const PointSet& s, const Hull& h, Index p, Index q, const std::vector<Index>& members) {
  if (p == q || !h.consecutive(p, q)) return false;
  std::vector<bool> in(static_cast<std::size_t>(s.size()), false);
  for (Index m : members) {
    if (m < 0 || m >= s.size() || in[static_cast<std::size_t>(m)]) return false;
    in[static_cast<std::size_t>(m)] = true;
  }
  if (!in[static_cast<std::size_t>(p)] || !in[static_cast<std::size_t>(q)]) return false;
  for (Index m : members)
    if (m != p && m != q && h.is_extreme(m)) return false;
  std::vector<Index> outside;
  for (Index z = 0; z < s.size(); ++z)
    if (!in[static_cast<std::size_t>(z)]) outside.push_back(z);
  return chain_ok(s, p, q, members, outside);
}

bool verify_decomposition(const PointSet& s, const ChainDecomposition& d) {
  const Hull h(s);
  const auto& hull = h.order();
  if (d.chains.size() != hull.size()) return false;
  std::vector<int> cover(static_cast<std::size_t>(s.size()), 0);
  for (std::size_t i = 0; i < d.chains.size(); ++i) {
    const Chain& c = d.chains[i];
    const Index p = hull[i], q = hull[(i + 1) % hull.size()];
    if (c.p != p || c.q != q || c.members.front() != p || c.members.back() != q) return false;
    if (!is_concave_chain(s, h, p, q, c.members)) return false;
    if (chain_order(s, p, q, c.members) != c.members) return false;
    for (Index m : c.members) ++cover[static_cast<std::size_t>(m)];
  }
  for (Index v = 0; v < s.size(); ++v)
    if (cover[static_cast<std::size_t>(v)] != (h.is_extreme(v) ? 2 : 1)) return false;
  return true;
}

std::optional<ChainDecomposition> find_gdc_decomposition(const PointSet& s) {
  const Hull h(s);
  const std::vector<Index>& hull = h.order();
  const std::size_t k = hull.size();
  if (k < 3) return std::nullopt;
  std::vector<Index> inner;
  for (Index v = 0; v < s.size(); ++v)
    if (h.is_interior(v)) inner.push_back(v);

  // Candidate hull edges per inner point: the chain {p, y, q} must pass
  // condition (iv) against the other extreme points, which no chain of pq
  // can contain.
  std::vector<std::vector<std::size_t>> cand(inner.size());
  for (std::size_t i = 0; i < inner.size(); ++i)
    for (std::size_t e = 0; e < k; ++e) {
      const Index p = hull[e], q = hull[(e + 1) % k];
      std::vector<Index> others;
      for (Index z : hull)
        if (z != p && z != q) others.push_back(z);
      if (chain_ok(s, p, q, {p, inner[i], q}, others)) cand[i].push_back(e);
    }
  for (const auto& c : cand)
    if (c.empty()) return std::nullopt;

  std::vector<std::vector<Index>> members(k);
  for (std::size_t e = 0; e < k; ++e) members[e] = {hull[e], hull[(e + 1) % k]};
  std::vector<int> assigned(static_cast<std::size_t>(s.size()), -1);

  // Points known to be off chain e: other extremes and inner points placed elsewhere.
  auto known_outside = [&](std::size_t e) {
    std::vector<Index> out;
    for (Index z = 0; z < s.size(); ++z) {
      if (h.is_extreme(z)) {
        if (z != hull[e] && z != hull[(e + 1) % k]) out.push_back(z);
      } else if (assigned[static_cast<std::size_t>(z)] >= 0 && assigned[static_cast<std::size_t>(z)] != static_cast<int>(e)) {
        out.push_back(z);
      }
    }
    return out;
  };

  std::function<bool(std::size_t)> place = [&](std::size_t i) -> bool {
    if (i == inner.size()) {
      for (std::size_t e = 0; e < k; ++e)
        if (!chain_ok(s, hull[e], hull[(e + 1) % k], members[e], known_outside(e))) return false;
      return true;
    }
    const Index y = inner[i];
    for (std::size_t e : cand[i]) {
      members[e].push_back(y);
      assigned[static_cast<std::size_t>(y)] = static_cast<int>(e);
      bool ok = true;
      // Re-check every chain: the new point is outside all chains but e.
      for (std::size_t f = 0; f < k && ok; ++f)
        ok = chain_ok(s, hull[f], hull[(f + 1) % k], members[f], known_outside(f));
      if (ok && place(i + 1)) return true;
      members[e].pop_back();
      assigned[static_cast<std::size_t>(y)] = -1;
    }
    return false;
  };
  if (!place(0)) return std::nullopt;

  ChainDecomposition d;
  for (std::size_t e = 0; e < k; ++e) {
    const Index p = hull[e], q = hull[(e + 1) % k];
    d.chains.push_back({p, q, chain_order(s, p, q, members[e])});
  }
  return d;
}

Spine spine_from_chains(const ChainDecomposition& d) {
  Spine sp;
  for (const Chain& c : d.chains) sp.cycle.insert(sp.cycle.end(), c.members.begin(), c.members.end() - 1);
  return sp;
}

bool is_uncrossed_spanning_cycle(const CrossTable& t, const std::vector<Index>& cycle) {
  const int n = t.n();
  if (static_cast<int>(cycle.size()) != n || n < 3) return false;
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  for (Index v : cycle) {
    if (v < 0 || v >= n || seen[static_cast<std::size_t>(v)]) return false;
    seen[static_cast<std::size_t>(v)] = true;
  }
  for (std::size_t i = 0; i < cycle.size(); ++i)
    if (!t.uncrossed(Edge(cycle[i], cycle[(i + 1) % cycle.size()]))) return false;
  return true;
}

std::optional<Spine> find_spine(const PointSet& s) {
  if (auto d = find_gdc_decomposition(s)) return spine_from_chains(*d);
  const int n = s.size();
  if (n < 3) return std::nullopt;
  if (n > kMaxSpineSearch)
    throw std::length_error("spine search is limited to " + std::to_string(kMaxSpineSearch) + " points");
  const CrossTable t(s);
  std::vector<std::vector<Index>> adj(static_cast<std::size_t>(n));
  for (Index a = 0; a < n; ++a)
    for (Index b = a + 1; b < n; ++b)
      if (t.uncrossed(Edge(a, b))) {
        adj[static_cast<std::size_t>(a)].push_back(b);
        adj[static_cast<std::size_t>(b)].push_back(a);
      }
  for (const auto& a : adj)
    if (a.size() < 2) return std::nullopt;

  std::vector<Index> cycle{0};
  std::vector<bool> used(static_cast<std::size_t>(n), false);
  used[0] = true;
  // Unused vertices need two usable neighbors (unused, or a path end).
  auto dead_end = [&]() {
    for (Index v = 0; v < n; ++v) {
      if (used[static_cast<std::size_t>(v)]) continue;
      int free = 0;
      for (Index w : adj[static_cast<std::size_t>(v)])
        if (!used[static_cast<std::size_t>(w)] || w == cycle.back() || w == 0) ++free;
      if (free < 2) return true;
    }
    return false;
  };
  std::function<bool()> extend = [&]() -> bool {
    if (static_cast<int>(cycle.size()) == n) {
      const auto& a = adj[static_cast<std::size_t>(cycle.back())];
      return std::find(a.begin(), a.end(), 0) != a.end();
    }
    if (dead_end()) return false;
    for (Index w : adj[static_cast<std::size_t>(cycle.back())]) {
      if (used[static_cast<std::size_t>(w)]) continue;
      used[static_cast<std::size_t>(w)] = true;
      cycle.push_back(w);
      if (extend()) return true;
      cycle.pop_back();
      used[static_cast<std::size_t>(w)] = false;
    }
    return false;
  };
  if (!extend()) return std::nullopt;
  return Spine{cycle};
}

bool empty_triangle_convexity_check(const PointSet& s, const std::vector<Index>& cycle) {
  const std::size_t m = cycle.size();
  for (std::size_t i = 0; i < m; ++i) {
    const Index a = cycle[i], b = cycle[(i + 1) % m];
    for (Index c = 0; c < s.size(); ++c)
      if (c != a && c != b && !triangle_empty(s, a, b, c)) return false;
  }
  return true;
}

ClassLabels classify(const PointSet& s) {
  ClassLabels out;
  const Hull h(s);
  out.convex = h.interior_count() == 0;
  out.wheel = s.size() >= 4 && h.interior_count() == 1;
  out.decomposition = find_gdc_decomposition(s);
  out.gdc = out.decomposition.has_value();
  out.spine = out.gdc ? spine_from_chains(*out.decomposition) : find_spine(s);
  out.spinal = out.spine.has_value();
  return out;
}

std::string certificate_text(const ClassLabels& labels) {
  std::ostringstream os;
  if (labels.spine) os << "SPINE: " << format_path(labels.spine->cycle) << '\n';
  if (labels.decomposition)
    for (const Chain& c : labels.decomposition->chains)
      os << "CHAIN " << c.p << ' ' << c.q << ": " << format_path(c.members) << '\n';
  return os.str();
}

Certificate parse_certificate(const std::string& text) {
  Certificate out;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto colon = line.find(':');
    if (colon == std::string::npos)
      throw std::invalid_argument("certificate line " + std::to_string(lineno) + ": missing ':'");
    const std::string head = line.substr(0, colon);
    const Order body = parse_path(line.substr(colon + 1));
    if (head == "SPINE") {
      out.spine = Spine{body};
    } else if (head.rfind("CHAIN ", 0) == 0) {
      std::istringstream hs(head.substr(6));
      Chain c;
      if (!(hs >> c.p >> c.q)) throw std::invalid_argument("certificate line " + std::to_string(lineno) + ": bad chain header");
      c.members = body;
      if (!out.decomposition) out.decomposition.emplace();
      out.decomposition->chains.push_back(std::move(c));
    } else {
      throw std::invalid_argument("certificate line " + std::to_string(lineno) + ": unknown record '" + head + "'");
    }
  }
  return out;
}

}  // namespace flippath
