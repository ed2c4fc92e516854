#include "flippath/enumeration.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace flippath {

std::string to_string(FlipFilter f) {
  switch (f) {
    case FlipFilter::all_types: return "all";
    case FlipFilter::type1_only: return "type1";
    case FlipFilter::types12: return "type12";
  }
  return "all";
}

FlipFilter parse_filter(const std::string& text) {
  if (text == "all") return FlipFilter::all_types;
  if (text == "type1") return FlipFilter::type1_only;
  if (text == "type12") return FlipFilter::types12;
  throw std::invalid_argument("unknown flip filter '" + text + "' (expected all, type1 or type12)");
}

std::string to_string(const Constraint& c) {
  auto list = [&] {
    std::string s;
    for (std::size_t i = 0; i < c.vertices.size(); ++i) s += (i ? "," : "") + std::to_string(c.vertices[i]);
    return s;
  };
  switch (c.kind) {
    case Constraint::Kind::all: return "all";
    case Constraint::Kind::fixed_start: return "start=" + list();
    case Constraint::Kind::fixed_edge: return "edge=" + list();
    case Constraint::Kind::fixed_prefix: return "prefix=" + list();
  }
  return "all";
}

Constraint parse_constraint(const std::string& text) {
  if (text == "all") return Constraint::all();
  const auto eq = text.find('=');
  if (eq == std::string::npos) throw std::invalid_argument("bad constraint '" + text + "'");
  const std::string kind = text.substr(0, eq);
  Order v;
  std::stringstream ss(text.substr(eq + 1));
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    std::size_t used = 0;
    const int x = std::stoi(tok, &used);
    if (used != tok.size() || x < 0) throw std::invalid_argument("bad vertex '" + tok + "' in constraint");
    v.push_back(x);
  }
  if (kind == "start" && v.size() == 1) return Constraint::start(v[0]);
  if (kind == "edge" && v.size() == 2) return Constraint::edge(v[0], v[1]);
  if (kind == "prefix" && v.size() >= 1) return Constraint::prefix(v);
  throw std::invalid_argument("bad constraint '" + text + "'");
}

namespace {

bool starts_with(const Order& path, const Order& prefix) {
  return prefix.size() <= path.size() && std::equal(prefix.begin(), prefix.end(), path.begin());
}

bool ends_with_reversed(const Order& path, const Order& prefix) {
  return prefix.size() <= path.size() && std::equal(prefix.begin(), prefix.end(), path.rbegin());
}

struct Enumerator {
  const CrossTable& t;
  int n;
  bool dedup_reversal;
  Order path;
  std::vector<bool> used;
  EdgeMask mask;
  std::vector<PathKey>* out = nullptr;
  long long count = 0;

  void extend() {
    if (static_cast<int>(path.size()) == n) {
      if (dedup_reversal && path.front() > path.back()) return;
      ++count;
      if (out) out->push_back(path_key(path));
      return;
    }
    const Index last = path.back();
    for (Index w = 0; w < n; ++w) {
      if (used[static_cast<std::size_t>(w)]) continue;
      const int id = t.edge_id(last, w);
      if (t.crossing(id).intersects(mask)) continue;
      used[static_cast<std::size_t>(w)] = true;
      mask.set(id);
      path.push_back(w);
      extend();
      path.pop_back();
      mask.reset(id);
      used[static_cast<std::size_t>(w)] = false;
    }
  }

  // Seeds the search with a fixed prefix; false if the prefix is not plane.
  bool seed(const Order& prefix) {
    path.clear();
    used.assign(static_cast<std::size_t>(n), false);
    mask = EdgeMask{};
    for (Index v : prefix) {
      if (v < 0 || v >= n || used[static_cast<std::size_t>(v)]) throw std::invalid_argument("constraint vertices must be distinct indices");
      if (!path.empty()) {
        const int id = t.edge_id(path.back(), v);
        if (t.crossing(id).intersects(mask)) return false;
        mask.set(id);
      }
      used[static_cast<std::size_t>(v)] = true;
      path.push_back(v);
    }
    return true;
  }
};

}  // namespace

bool satisfies(const Constraint& c, const Order& path) {
  if (c.kind == Constraint::Kind::all) return true;
  return starts_with(path, c.vertices) || ends_with_reversed(path, c.vertices);
}

Order pinned(const Constraint& c, const Order& path) {
  if (c.kind == Constraint::Kind::all) return SpanningPath(path).canonical().order();
  if (starts_with(path, c.vertices)) return path;
  return Order(path.rbegin(), path.rend());
}

PathFamily enumerate_paths(const CrossTable& t, const Constraint& c) {
  PathFamily fam;
  fam.constraint = c;
  fam.n = t.n();
  Enumerator e{t, t.n(), c.kind == Constraint::Kind::all, {}, {}, {}, &fam.members};
  if (c.kind == Constraint::Kind::all) {
    for (Index s = 0; s < t.n(); ++s)
      if (e.seed({s})) e.extend();
  } else if (e.seed(c.vertices)) {
    e.extend();
  }
  fam.index.reserve(fam.members.size());
  for (std::size_t i = 0; i < fam.members.size(); ++i) fam.index.emplace(fam.members[i], static_cast<int>(i));
  return fam;
}

PathFamily enumerate_paths(const PointSet& s, const Constraint& c) { return enumerate_paths(CrossTable(s), c); }

long long count_paths_with_prefix(const CrossTable& t, const Order& prefix) {
  Enumerator e{t, t.n(), false, {}, {}, {}, nullptr};
  if (!e.seed(prefix)) return 0;
  e.extend();
  return e.count;
}

bool passes_filter(FlipFilter filter, const Order& path, const Flip& f) {
  switch (filter) {
    case FlipFilter::all_types: return true;
    case FlipFilter::types12: return f.type != 3;
    case FlipFilter::type1_only: return is_type1_move(path, f);
  }
  return true;
}

FlipGraph build_flip_graph(const CrossTable& t, const PathFamily& family, FlipFilter filter) {
  FlipGraph g;
  g.filter = filter;
  g.nodes = family.members;
  g.offsets.assign(1, 0);
  g.offsets.reserve(g.nodes.size() + 1);
  for (int i = 0; i < family.size(); ++i) {
    const Order p = family.path(i);
    const std::size_t begin = g.neighbors.size();
    for (const Flip& f : enumerate_flips(t, p)) {
      if (!passes_filter(filter, p, f)) continue;
      const Order q = swap_edges(p, f.removed, f.added);
      if (!satisfies(family.constraint, q)) continue;
      if (auto j = family.find(path_key(q))) g.neighbors.push_back(*j);
    }
    std::sort(g.neighbors.begin() + static_cast<std::ptrdiff_t>(begin), g.neighbors.end());
    g.offsets.push_back(static_cast<int>(g.neighbors.size()));
  }
  return g;
}

std::vector<std::vector<int>> components(const FlipGraph& g) {
  const int n = g.size();
  std::vector<int> comp(static_cast<std::size_t>(n), -1);
  std::vector<std::vector<int>> out;
  std::vector<int> stack;
  for (int s = 0; s < n; ++s) {
    if (comp[static_cast<std::size_t>(s)] >= 0) continue;
    const int id = static_cast<int>(out.size());
    out.emplace_back();
    comp[static_cast<std::size_t>(s)] = id;
    stack.assign(1, s);
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      out.back().push_back(v);
      for (int w : g.adjacent(v))
        if (comp[static_cast<std::size_t>(w)] < 0) {
          comp[static_cast<std::size_t>(w)] = id;
          stack.push_back(w);
        }
    }
  }
  for (auto& c : out)
    std::sort(c.begin(), c.end(), [&](int a, int b) { return g.nodes[static_cast<std::size_t>(a)] < g.nodes[static_cast<std::size_t>(b)]; });
  std::sort(out.begin(), out.end(), [&](const auto& a, const auto& b) {
    return g.nodes[static_cast<std::size_t>(a.front())] < g.nodes[static_cast<std::size_t>(b.front())];
  });
  return out;
}

bool is_connected(const FlipGraph& g) { return components(g).size() <= 1; }

std::vector<int> bfs_distances(const FlipGraph& g, int source) {
  std::vector<int> dist(static_cast<std::size_t>(g.size()), -1);
  std::vector<int> queue;
  queue.reserve(static_cast<std::size_t>(g.size()));
  dist[static_cast<std::size_t>(source)] = 0;
  queue.push_back(source);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const int v = queue[head];
    for (int w : g.adjacent(v))
      if (dist[static_cast<std::size_t>(w)] < 0) {
        dist[static_cast<std::size_t>(w)] = dist[static_cast<std::size_t>(v)] + 1;
        queue.push_back(w);
      }
  }
  return dist;
}

std::optional<int> diameter(const FlipGraph& g) {
  int best = 0;
  for (int s = 0; s < g.size(); ++s) {
    const auto dist = bfs_distances(g, s);
    for (int d : dist) {
      if (d < 0) return std::nullopt;
      best = std::max(best, d);
    }
  }
  return best;
}

std::optional<std::pair<Edge, Edge>> edge_difference(const Order& a, const Order& b) {
  std::vector<Edge> ea = SpanningPath(a).edges(), eb = SpanningPath(b).edges();
  std::sort(ea.begin(), ea.end());
  std::sort(eb.begin(), eb.end());
  std::vector<Edge> only_a, only_b;
  std::set_difference(ea.begin(), ea.end(), eb.begin(), eb.end(), std::back_inserter(only_a));
  std::set_difference(eb.begin(), eb.end(), ea.begin(), ea.end(), std::back_inserter(only_b));
  if (only_a.size() != 1 || only_b.size() != 1) return std::nullopt;
  return std::pair{only_a[0], only_b[0]};
}

std::optional<FlipSequence> shortest_flip_sequence(const CrossTable& t, const PathFamily& family, const FlipGraph& g,
                                                   const Order& from, const Order& to) {
  const auto s = family.find(path_key(from));
  const auto d = family.find(path_key(to));
  if (!s || !d) throw std::invalid_argument("shortest_flip_sequence: path not in family");
  std::vector<int> parent(static_cast<std::size_t>(g.size()), -1);
  std::vector<int> queue{*s};
  parent[static_cast<std::size_t>(*s)] = *s;
  for (std::size_t head = 0; head < queue.size() && parent[static_cast<std::size_t>(*d)] < 0; ++head)
    for (int w : g.adjacent(queue[head]))
      if (parent[static_cast<std::size_t>(w)] < 0) {
        parent[static_cast<std::size_t>(w)] = queue[head];
        queue.push_back(w);
      }
  if (parent[static_cast<std::size_t>(*d)] < 0) return std::nullopt;
  std::vector<int> chain;
  for (int v = *d; v != *s; v = parent[static_cast<std::size_t>(v)]) chain.push_back(v);
  std::reverse(chain.begin(), chain.end());
  FlipSequence seq(from);
  for (int v : chain) {
    const Order next = decode_key(g.nodes[static_cast<std::size_t>(v)], family.n);
    auto diff = edge_difference(seq.end(), next);
    if (!diff) throw FlipError("flip graph edge does not correspond to a single swap");
    seq.push(t, diff->first, diff->second);
  }
  return seq;
}

}  // namespace flippath
