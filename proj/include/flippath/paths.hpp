#pragma once

// Plane spanning paths and the three flip types.

#include <array>
#include <bit>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "flippath/geometry.hpp"

namespace flippath {

/// Undirected edge, stored with u < v.
struct Edge {
  Index u = 0;
  Index v = 0;

  Edge() = default;
  Edge(Index a, Index b) : u(a < b ? a : b), v(a < b ? b : a) {}

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

inline constexpr int kMaxPoints = 22;

/// Fixed-capacity bit set over the edges of a point set with at most
/// kMaxPoints points.
class EdgeMask {
 public:
  void set(int bit) { words_[static_cast<std::size_t>(bit >> 6)] |= std::uint64_t{1} << (bit & 63); }
  void reset(int bit) { words_[static_cast<std::size_t>(bit >> 6)] &= ~(std::uint64_t{1} << (bit & 63)); }
  [[nodiscard]] bool test(int bit) const {
    return (words_[static_cast<std::size_t>(bit >> 6)] >> (bit & 63)) & 1U;
  }
  [[nodiscard]] bool intersects(const EdgeMask& o) const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & o.words_[i]) return true;
    return false;
  }
  [[nodiscard]] int count_common(const EdgeMask& o) const {
    int c = 0;
    for (std::size_t i = 0; i < words_.size(); ++i) c += std::popcount(words_[i] & o.words_[i]);
    return c;
  }

 private:
  std::array<std::uint64_t, 4> words_{};
};

/// Precomputed crossing relation between all edges on a point set.
class CrossTable {
 public:
  CrossTable() = default;
  explicit CrossTable(const PointSet& s);

  [[nodiscard]] int n() const { return n_; }
  [[nodiscard]] int edge_id(Index a, Index b) const { return ids_[static_cast<std::size_t>(a * n_ + b)]; }
  [[nodiscard]] int edge_id(Edge e) const { return edge_id(e.u, e.v); }
  [[nodiscard]] int edge_count() const { return static_cast<int>(masks_.size()); }
  /// Edges crossing edge `id`.
  [[nodiscard]] const EdgeMask& crossing(int id) const { return masks_[static_cast<std::size_t>(id)]; }
  [[nodiscard]] bool cross(Edge a, Edge b) const { return masks_[static_cast<std::size_t>(edge_id(a))].test(edge_id(b)); }
  /// An edge crossed by no other edge on the point set.
  [[nodiscard]] bool uncrossed(Edge e) const;

 private:
  int n_ = 0;
  std::vector<int> ids_;
  std::vector<EdgeMask> masks_;
};

using Order = std::vector<Index>;

/// Plane spanning path. The stored orientation is the one given at
/// construction; identity (==, key) ignores orientation.
class SpanningPath {
 public:
  SpanningPath() = default;
  explicit SpanningPath(Order order) : order_(std::move(order)) {}

  [[nodiscard]] const Order& order() const { return order_; }
  [[nodiscard]] int size() const { return static_cast<int>(order_.size()); }
  [[nodiscard]] Index operator[](int i) const { return order_[static_cast<std::size_t>(i)]; }
  [[nodiscard]] Index front() const { return order_.front(); }
  [[nodiscard]] Index back() const { return order_.back(); }

  [[nodiscard]] SpanningPath reversed() const;
  /// Lexicographically smaller of the two orientations.
  [[nodiscard]] SpanningPath canonical() const;
  [[nodiscard]] std::vector<Edge> edges() const;
  [[nodiscard]] bool has_edge(Edge e) const;

  friend bool operator==(const SpanningPath& a, const SpanningPath& b) {
    return a.canonical().order_ == b.canonical().order_;
  }

 private:
  Order order_;
};

/// Canonical 64-bit key: 4 bits per vertex, first vertex in the high nibble,
/// taken over the lexicographically smaller orientation. Requires n <= 16.
using PathKey = std::uint64_t;
PathKey path_key(const Order& order);
PathKey path_key(const SpanningPath& p);
/// Key of the given orientation, without canonicalization.
PathKey oriented_key(const Order& order);
Order decode_key(PathKey key, int n);

/// "0 1 2 3"
std::string format_path(const Order& order);
/// Parses a space separated index list; throws std::invalid_argument.
Order parse_path(std::string_view text);

struct Flip {
  Edge removed;
  Edge added;
  int type = 1;

  /// Identity is the (removed, added) pair; the type label is derived.
  friend bool operator==(const Flip& a, const Flip& b) { return a.removed == b.removed && a.added == b.added; }
};

class FlipError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// True iff `order` is a permutation of 0..n-1 whose edges are pairwise
/// non-crossing.
bool is_plane_path(const PointSet& s, const Order& order);
bool is_plane_path(const CrossTable& t, const Order& order);

/// A flip adding v1vn is labelled Type 2 or 3; every other flip is Type 1.
/// Flips that remove an end edge and add v1vn also match the Type 1 formula
/// (they invert everything but one end vertex); this reports that reading.
bool is_type1_move(const Order& path, const Flip& f);

/// Every valid flip from `p`, removed edges in path order, candidates per
/// removed edge in the order v1v_i, v_{i-1}v_n, v1v_n.
std::vector<Flip> enumerate_flips(const CrossTable& t, const Order& p);
std::vector<Flip> enumerate_flips(const PointSet& s, const SpanningPath& p);

/// Checks a single swap without enumerating; returns the labelled flip.
std::optional<Flip> validate_flip(const CrossTable& t, const Order& p, Edge removed, Edge added);

/// Result of swapping `removed` for `added` on `p`, without validity checks.
/// Throws FlipError if the swap does not produce a path.
Order swap_edges(const Order& p, Edge removed, Edge added);

/// Applies a flip that must be one of enumerate_flips; throws FlipError.
SpanningPath apply_flip(const PointSet& s, const SpanningPath& p, const Flip& f);
Order apply_flip(const CrossTable& t, const Order& p, const Flip& f);

class FlipSequence {
 public:
  FlipSequence() = default;
  explicit FlipSequence(Order start) : start_(std::move(start)), end_(start_) {}

  [[nodiscard]] const Order& start() const { return start_; }
  [[nodiscard]] const Order& end() const { return end_; }
  [[nodiscard]] const std::vector<Flip>& steps() const { return steps_; }
  [[nodiscard]] int size() const { return static_cast<int>(steps_.size()); }
  [[nodiscard]] bool empty() const { return steps_.empty(); }

  /// Validates `removed -> added` against the current end and appends it.
  /// Throws FlipError if the swap is not a valid flip.
  const Flip& push(const CrossTable& t, Edge removed, Edge added);
  /// Appends every step of `tail`, whose start must equal end() as a path.
  void append(const CrossTable& t, const FlipSequence& tail);
  /// Every intermediate path, start and end included.
  [[nodiscard]] std::vector<Order> replay(const CrossTable& t) const;
  /// The same flips in reverse order, starting from end().
  [[nodiscard]] FlipSequence inverted(const CrossTable& t) const;

 private:
  Order start_;
  Order end_;
  std::vector<Flip> steps_;
};

/// The Type 1 (end-rotation) sequence equivalent to a Type 2 flip.
FlipSequence simulate_type2_by_type1(const PointSet& s, const SpanningPath& p, const Flip& f);
FlipSequence simulate_type2_by_type1(const CrossTable& t, const Order& p, const Flip& f);

}  // namespace flippath
