#include "flippath/paths.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

namespace flippath {

CrossTable::CrossTable(const PointSet& s) : n_(s.size()) {
  if (n_ > kMaxPoints) throw GeometryError("CrossTable supports at most " + std::to_string(kMaxPoints) + " points");
  ids_.assign(static_cast<std::size_t>(n_ * n_), -1);
  std::vector<Edge> edges;
  for (Index a = 0; a < n_; ++a)
    for (Index b = a + 1; b < n_; ++b) {
      ids_[static_cast<std::size_t>(a * n_ + b)] = ids_[static_cast<std::size_t>(b * n_ + a)] =
          static_cast<int>(edges.size());
      edges.emplace_back(a, b);
    }
  masks_.resize(edges.size());
  for (std::size_t i = 0; i < edges.size(); ++i)
    for (std::size_t j = i + 1; j < edges.size(); ++j)
      if (segments_cross(s[edges[i].u], s[edges[i].v], s[edges[j].u], s[edges[j].v])) {
        masks_[i].set(static_cast<int>(j));
        masks_[j].set(static_cast<int>(i));
      }
}

bool CrossTable::uncrossed(Edge e) const {
  const EdgeMask& m = masks_[static_cast<std::size_t>(edge_id(e))];
  for (int i = 0; i < edge_count(); ++i)
    if (m.test(i)) return false;
  return true;
}

SpanningPath SpanningPath::reversed() const { return SpanningPath(Order(order_.rbegin(), order_.rend())); }

SpanningPath SpanningPath::canonical() const {
  if (std::lexicographical_compare(order_.rbegin(), order_.rend(), order_.begin(), order_.end())) return reversed();
  return *this;
}

std::vector<Edge> SpanningPath::edges() const {
  std::vector<Edge> out;
  for (std::size_t i = 1; i < order_.size(); ++i) out.emplace_back(order_[i - 1], order_[i]);
  return out;
}

bool SpanningPath::has_edge(Edge e) const {
  for (std::size_t i = 1; i < order_.size(); ++i)
    if (Edge(order_[i - 1], order_[i]) == e) return true;
  return false;
}

PathKey oriented_key(const Order& order) {
  PathKey k = 0;
  for (Index v : order) k = (k << 4) | static_cast<PathKey>(v);
  return k;
}

PathKey path_key(const Order& order) {
  if (order.size() > 16) throw std::invalid_argument("path_key supports at most 16 vertices");
  if (std::lexicographical_compare(order.rbegin(), order.rend(), order.begin(), order.end()))
    return oriented_key(Order(order.rbegin(), order.rend()));
  return oriented_key(order);
}

PathKey path_key(const SpanningPath& p) { return path_key(p.order()); }

Order decode_key(PathKey key, int n) {
  Order out(static_cast<std::size_t>(n));
  for (int i = n - 1; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = static_cast<Index>(key & 15U);
    key >>= 4;
  }
  return out;
}

std::string format_path(const Order& order) {
  std::string out;
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(order[i]);
  }
  return out;
}

Order parse_path(std::string_view text) {
  Order out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && (text[i] == ' ' || text[i] == '\t' || text[i] == ',')) ++i;
    if (i >= text.size()) break;
    int v = 0;
    auto [ptr, ec] = std::from_chars(text.data() + i, text.data() + text.size(), v);
    if (ec != std::errc{} || v < 0) throw std::invalid_argument("bad path token in \"" + std::string(text) + "\"");
    i = static_cast<std::size_t>(ptr - text.data());
    out.push_back(v);
  }
  return out;
}

namespace {

bool is_permutation_of_range(const Order& order, int n) {
  if (static_cast<int>(order.size()) != n) return false;
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  for (Index v : order) {
    if (v < 0 || v >= n || seen[static_cast<std::size_t>(v)]) return false;
    seen[static_cast<std::size_t>(v)] = true;
  }
  return true;
}

EdgeMask path_mask(const CrossTable& t, const Order& p) {
  EdgeMask m;
  for (std::size_t i = 1; i < p.size(); ++i) m.set(t.edge_id(p[i - 1], p[i]));
  return m;
}

}  // namespace

bool is_plane_path(const CrossTable& t, const Order& order) {
  if (!is_permutation_of_range(order, t.n())) return false;
  EdgeMask m;
  for (std::size_t i = 1; i < order.size(); ++i) {
    const int id = t.edge_id(order[i - 1], order[i]);
    if (t.crossing(id).intersects(m)) return false;
    m.set(id);
  }
  return true;
}

bool is_plane_path(const PointSet& s, const Order& order) {
  if (!is_permutation_of_range(order, s.size())) return false;
  for (std::size_t i = 1; i < order.size(); ++i)
    for (std::size_t j = i + 2; j < order.size(); ++j)
      if (segments_cross(s[order[i - 1]], s[order[i]], s[order[j - 1]], s[order[j]])) return false;
  return true;
}

bool is_type1_move(const Order& path, const Flip& f) {
  if (f.type == 1) return true;
  const int n = static_cast<int>(path.size());
  const Edge first(path[0], path[1]);
  const Edge last(path[static_cast<std::size_t>(n - 2)], path[static_cast<std::size_t>(n - 1)]);
  return f.added == Edge(path.front(), path.back()) && (f.removed == first || f.removed == last);
}

Order swap_edges(const Order& p, Edge removed, Edge added) {
  const int n = static_cast<int>(p.size());
  int cut = -1;  // removed edge is p[cut-1] p[cut]
  for (int i = 1; i < n; ++i)
    if (Edge(p[static_cast<std::size_t>(i - 1)], p[static_cast<std::size_t>(i)]) == removed) {
      cut = i;
      break;
    }
  if (cut < 0) throw FlipError("removed edge is not on the path");
  const Index v1 = p.front(), vn = p.back();
  const Index left = p[static_cast<std::size_t>(cut - 1)], right = p[static_cast<std::size_t>(cut)];
  Order out;
  out.reserve(p.size());
  // Closing v1vn rotates the cycle so the result starts right after the cut;
  // end-edge removals can also be read as chunk reversals, and this keeps
  // their orientation predictable.
  if (added == Edge(v1, vn)) {
    out.assign(p.begin() + cut, p.end());
    out.insert(out.end(), p.begin(), p.begin() + cut);
  } else if (added == Edge(v1, right) && cut > 1) {
    out.assign(p.rend() - cut, p.rend());
    out.insert(out.end(), p.begin() + cut, p.end());
  } else if (added == Edge(left, vn) && cut < n - 1) {
    out.assign(p.begin(), p.begin() + cut);
    out.insert(out.end(), p.rbegin(), p.rend() - cut);
  } else {
    throw FlipError("added edge does not reconnect the two pieces into a path");
  }
  return out;
}

std::optional<Flip> validate_flip(const CrossTable& t, const Order& p, Edge removed, Edge added) {
  const int n = static_cast<int>(p.size());
  int cut = -1;
  for (int i = 1; i < n; ++i)
    if (Edge(p[static_cast<std::size_t>(i - 1)], p[static_cast<std::size_t>(i)]) == removed) {
      cut = i;
      break;
    }
  if (cut < 0) return std::nullopt;
  const Index v1 = p.front(), vn = p.back();
  const Index left = p[static_cast<std::size_t>(cut - 1)], right = p[static_cast<std::size_t>(cut)];
  const bool closes = added == Edge(v1, vn);
  if (!closes && !(added == Edge(v1, right) && cut > 1) && !(added == Edge(left, vn) && cut < n - 1))
    return std::nullopt;
  if (added == removed) return std::nullopt;
  EdgeMask rest = path_mask(t, p);
  const int rid = t.edge_id(removed);
  rest.reset(rid);
  const int aid = t.edge_id(added);
  if (t.crossing(aid).intersects(rest)) return std::nullopt;
  Flip f{removed, added, 1};
  if (closes) f.type = t.crossing(aid).test(rid) ? 3 : 2;
  return f;
}

std::vector<Flip> enumerate_flips(const CrossTable& t, const Order& p) {
  std::vector<Flip> out;
  const int n = static_cast<int>(p.size());
  if (n < 3) return out;
  const EdgeMask all = path_mask(t, p);
  const Index v1 = p.front(), vn = p.back();
  const int closing = t.edge_id(v1, vn);
  const EdgeMask& closing_cross = t.crossing(closing);
  const int closing_hits = closing_cross.count_common(all);
  for (int i = 1; i < n; ++i) {
    const Index left = p[static_cast<std::size_t>(i - 1)], right = p[static_cast<std::size_t>(i)];
    const Edge removed(left, right);
    const int rid = t.edge_id(removed);
    auto ok = [&](int aid) {
      EdgeMask rest = all;
      rest.reset(rid);
      return !t.crossing(aid).intersects(rest);
    };
    if (i > 1 && right != vn) {
      const int aid = t.edge_id(v1, right);
      if (ok(aid)) out.push_back({removed, Edge(v1, right), 1});
    }
    if (i < n - 1 && left != v1) {
      const int aid = t.edge_id(left, vn);
      if (ok(aid)) out.push_back({removed, Edge(left, vn), 1});
    }
    const bool crosses_removed = closing_cross.test(rid);
    if (closing_hits == (crosses_removed ? 1 : 0)) out.push_back({removed, Edge(v1, vn), crosses_removed ? 3 : 2});
  }
  return out;
}

std::vector<Flip> enumerate_flips(const PointSet& s, const SpanningPath& p) {
  return enumerate_flips(CrossTable(s), p.order());
}

Order apply_flip(const CrossTable& t, const Order& p, const Flip& f) {
  if (!validate_flip(t, p, f.removed, f.added)) throw FlipError("flip is not valid for this path");
  return swap_edges(p, f.removed, f.added);
}

SpanningPath apply_flip(const PointSet& s, const SpanningPath& p, const Flip& f) {
  return SpanningPath(apply_flip(CrossTable(s), p.order(), f));
}

const Flip& FlipSequence::push(const CrossTable& t, Edge removed, Edge added) {
  auto f = validate_flip(t, end_, removed, added);
  if (!f)
    throw FlipError("invalid flip (" + std::to_string(removed.u) + "-" + std::to_string(removed.v) + " -> " +
                    std::to_string(added.u) + "-" + std::to_string(added.v) + ") on path " + format_path(end_));
  end_ = swap_edges(end_, removed, added);
  steps_.push_back(*f);
  return steps_.back();
}

void FlipSequence::append(const CrossTable& t, const FlipSequence& tail) {
  if (SpanningPath(tail.start_) != SpanningPath(end_)) throw FlipError("appended sequence does not start at the end");
  for (const Flip& f : tail.steps_) push(t, f.removed, f.added);
}

std::vector<Order> FlipSequence::replay(const CrossTable& t) const {
  std::vector<Order> out{start_};
  for (const Flip& f : steps_) out.push_back(apply_flip(t, out.back(), f));
  return out;
}

FlipSequence FlipSequence::inverted(const CrossTable& t) const {
  FlipSequence out(end_);
  for (auto it = steps_.rbegin(); it != steps_.rend(); ++it) out.push(t, it->added, it->removed);
  return out;
}

FlipSequence simulate_type2_by_type1(const CrossTable& t, const Order& p, const Flip& f) {
  auto checked = validate_flip(t, p, f.removed, f.added);
  if (!checked || checked->type != 2) throw FlipError("simulate_type2_by_type1 needs a valid Type 2 flip");
  int cut = 1;
  while (Edge(p[static_cast<std::size_t>(cut - 1)], p[static_cast<std::size_t>(cut)]) != f.removed) ++cut;
  // Rotate the plane cycle p + v1vn one vertex at a time: each step drops the
  // current first edge and closes the current ends.
  FlipSequence seq(p);
  for (int k = 0; k < cut; ++k) {
    const Order& cur = seq.end();
    seq.push(t, Edge(cur[0], cur[1]), Edge(cur.front(), cur.back()));
  }
  return seq;
}

FlipSequence simulate_type2_by_type1(const PointSet& s, const SpanningPath& p, const Flip& f) {
  return simulate_type2_by_type1(CrossTable(s), p.order(), f);
}

}  // namespace flippath
