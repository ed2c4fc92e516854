#pragma once

// Point-set classes (convex, wheel, spinal, generalized double circle) with
// checkable certificates.

#include <optional>
#include <string>
#include <vector>

#include "flippath/paths.hpp"

namespace flippath {

/// Uncrossed spanning cycle, as a cyclic vertex order.
struct Spine {
  std::vector<Index> cycle;

  [[nodiscard]] int size() const { return static_cast<int>(cycle.size()); }
  [[nodiscard]] std::vector<Edge> edges() const;
};

/// Concave chain between the hull-consecutive extreme points p and q.
struct Chain {
  Index p = 0;
  Index q = 0;
  /// Chain order from p to q, both included.
  std::vector<Index> members;

  [[nodiscard]] bool contains(Index v) const;
};

struct ChainDecomposition {
  /// One chain per hull edge, in counter-clockwise hull order.
  std::vector<Chain> chains;

  /// Chains containing v (one for inner points, two for extreme points).
  [[nodiscard]] std::vector<int> chains_of(Index v) const;
  [[nodiscard]] bool share_chain(Index a, Index b) const;
  [[nodiscard]] bool share_chain(Index a, Index b, Index c) const;
};

struct ClassLabels {
  bool convex = false;
  bool wheel = false;
  bool gdc = false;
  bool spinal = false;
  std::optional<ChainDecomposition> decomposition;
  std::optional<Spine> spine;
};

ClassLabels classify(const PointSet& s);

/// Conditions (i)-(iv) of a concave chain for `members` (any order) on s.
bool is_concave_chain(const PointSet& s, const Hull& h, Index p, Index q, const std::vector<Index>& members);

/// Re-verifies every chain and the exact-cover requirement.
bool verify_decomposition(const PointSet& s, const ChainDecomposition& d);

/// First decomposition in deterministic backtracking order, or nullopt.
std::optional<ChainDecomposition> find_gdc_decomposition(const PointSet& s);

/// Chains concatenated counter-clockwise around the hull.
Spine spine_from_chains(const ChainDecomposition& d);

/// Spanning cycle of uncrossed edges: the chain union for GDC sets,
/// otherwise the first Hamiltonian cycle found among uncrossed edges.
/// Throws std::length_error above kMaxSpineSearch points for non-GDC input.
inline constexpr int kMaxSpineSearch = 16;
std::optional<Spine> find_spine(const PointSet& s);

/// Spanning cycle whose edges are crossed by no edge on s.
bool is_uncrossed_spanning_cycle(const CrossTable& t, const std::vector<Index>& cycle);

/// Every triangle formed by a cycle edge and a third point is empty.
bool empty_triangle_convexity_check(const PointSet& s, const std::vector<Index>& cycle);

/// "SPINE: i1 ... in" and "CHAIN p q: m1 m2 ..." lines.
std::string certificate_text(const ClassLabels& labels);

struct Certificate {
  std::optional<Spine> spine;
  std::optional<ChainDecomposition> decomposition;
};

/// Inverse of certificate_text; throws std::invalid_argument on bad input.
Certificate parse_certificate(const std::string& text);

}  // namespace flippath
