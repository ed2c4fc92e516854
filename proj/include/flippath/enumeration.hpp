#pragma once

// Exhaustive enumeration of plane spanning paths (optionally constrained at
// one end) and flip-graph analytics over the enumerated family.

#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "flippath/paths.hpp"

namespace flippath {

enum class FlipFilter { all_types, type1_only, types12 };

std::string to_string(FlipFilter f);
FlipFilter parse_filter(const std::string& text);

/// Which end of the path is pinned. `vertices` holds p (fixed_start), p q
/// (fixed_edge) or v1..vk (fixed_prefix).
struct Constraint {
  enum class Kind { all, fixed_start, fixed_edge, fixed_prefix };
  Kind kind = Kind::all;
  Order vertices;

  static Constraint all() { return {}; }
  static Constraint start(Index p) { return {Kind::fixed_start, {p}}; }
  static Constraint edge(Index p, Index q) { return {Kind::fixed_edge, {p, q}}; }
  static Constraint prefix(Order v) { return {Kind::fixed_prefix, std::move(v)}; }
};

std::string to_string(const Constraint& c);
/// "all", "start=P", "edge=P,Q", "prefix=A,B,C"
Constraint parse_constraint(const std::string& text);

/// True iff some orientation of `path` begins with the constraint vertices.
bool satisfies(const Constraint& c, const Order& path);
/// The orientation of `path` that begins with the constraint vertices (the
/// canonical orientation for Kind::all). Precondition: satisfies(c, path).
Order pinned(const Constraint& c, const Order& path);

struct PathFamily {
  Constraint constraint;
  int n = 0;
  /// Canonical keys in emission order.
  std::vector<PathKey> members;
  std::unordered_map<PathKey, int> index;

  [[nodiscard]] int size() const { return static_cast<int>(members.size()); }
  [[nodiscard]] bool contains(PathKey k) const { return index.contains(k); }
  [[nodiscard]] std::optional<int> find(PathKey k) const {
    auto it = index.find(k);
    if (it == index.end()) return std::nullopt;
    return it->second;
  }
  /// Member `i` in its pinned orientation.
  [[nodiscard]] Order path(int i) const { return pinned(constraint, decode_key(members[static_cast<std::size_t>(i)], n)); }
};

/// Backtracking enumeration with incremental crossing checks. For
/// Kind::all only paths with v1 < vn are emitted, so no reversal dedup is
/// needed.
PathFamily enumerate_paths(const CrossTable& t, const Constraint& c);
PathFamily enumerate_paths(const PointSet& s, const Constraint& c);

/// Number of plane spanning paths starting with `prefix`, without storing them.
long long count_paths_with_prefix(const CrossTable& t, const Order& prefix);

bool passes_filter(FlipFilter filter, const Order& path, const Flip& f);

struct FlipGraph {
  FlipFilter filter = FlipFilter::all_types;
  std::vector<PathKey> nodes;
  /// CSR adjacency.
  std::vector<int> offsets;
  std::vector<int> neighbors;

  [[nodiscard]] int size() const { return static_cast<int>(nodes.size()); }
  [[nodiscard]] int degree(int v) const { return offsets[static_cast<std::size_t>(v) + 1] - offsets[static_cast<std::size_t>(v)]; }
  [[nodiscard]] std::span<const int> adjacent(int v) const {
    return {neighbors.data() + offsets[static_cast<std::size_t>(v)], static_cast<std::size_t>(degree(v))};
  }
  [[nodiscard]] long long edge_count() const { return static_cast<long long>(neighbors.size()) / 2; }
};

/// Flip graph over `family`: an edge per valid flip passing `filter` whose
/// result is again a member of the family.
FlipGraph build_flip_graph(const CrossTable& t, const PathFamily& family, FlipFilter filter);

/// Connected components as node ids, each sorted ascending by key, ordered
/// by smallest member key.
std::vector<std::vector<int>> components(const FlipGraph& g);
bool is_connected(const FlipGraph& g);

/// BFS distances from `source` (-1 = unreachable).
std::vector<int> bfs_distances(const FlipGraph& g, int source);

/// Exact diameter by BFS from every node; nullopt when disconnected. Zero
/// for graphs with at most one node.
std::optional<int> diameter(const FlipGraph& g);

/// Shortest flip sequence between two members of `family` on `g`, starting
/// from `from` as given. nullopt if they lie in different components.
std::optional<FlipSequence> shortest_flip_sequence(const CrossTable& t, const PathFamily& family, const FlipGraph& g,
                                                   const Order& from, const Order& to);

/// The (removed, added) pair turning `a` into `b`, if they differ by one swap.
std::optional<std::pair<Edge, Edge>> edge_difference(const Order& a, const Order& b);

}  // namespace flippath
