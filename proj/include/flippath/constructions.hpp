#pragma once

// Constructive existence results for paths and cycles with prescribed
// endpoints or starting edges, and the flip-sequence composers that reduce
// connectivity of the full flip graph to fixed-start and fixed-edge families.

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>

#include "flippath/enumeration.hpp"
#include "flippath/paths.hpp"

namespace flippath {

class ConstructionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An oracle found no flip sequence inside a constrained family.
class OracleFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Plane spanning cycle as a cyclic vertex order.
using CycleOrder = std::vector<Index>;

bool is_plane_cycle(const PointSet& s, const CycleOrder& cycle);
bool is_plane_cycle(const CrossTable& t, const CycleOrder& cycle);

/// Plane spanning path with end vertices p and q (starts at p).
SpanningPath path_with_endpoints(const PointSet& s, Index p, Index q);

/// uv starts some plane spanning path: u or v interior, or u, v consecutive
/// on the hull.
bool viable_start_edge(const PointSet& s, Index u, Index v);
bool viable_start_edge(const Hull& h, Index u, Index v);

/// Plane spanning path beginning u, v. Throws ConstructionError if uv is not
/// a viable starting edge.
SpanningPath path_from_start_edge(const PointSet& s, Index u, Index v);

struct ViableStartSet {
  Index anchor = 0;
  /// Counter-clockwise around the anchor; for an extreme anchor the list
  /// runs from its ccw hull successor to its hull predecessor.
  std::vector<Index> members;

  /// Circular successor of `p`.
  [[nodiscard]] Index after(Index p) const;
  [[nodiscard]] bool contains(Index p) const;
  [[nodiscard]] bool consecutive(Index q, Index r) const;
};

ViableStartSet viable_start_set(const PointSet& s, Index anchor);

/// Plane spanning cycle through the edges v1q and v1r, where q and r are
/// circularly consecutive members of the viable start set of v1. The cycle
/// starts v1, q and ends with r.
CycleOrder cycle_with_two_edges(const PointSet& s, Index v1, Index q, Index r);

/// Connects two paths sharing their first edge (both start at the same
/// vertex). Returns nullopt if no sequence exists.
using EdgeOracle = std::function<std::optional<FlipSequence>(const Order& from, const Order& to)>;
/// Connects two paths sharing the end vertex p, both given starting at p.
using StartOracle = std::function<std::optional<FlipSequence>(Index p, const Order& from, const Order& to)>;

/// BFS over fixed-edge / fixed-start flip graphs, cached per constraint.
class BfsOracles {
 public:
  BfsOracles(const PointSet& s, FlipFilter filter = FlipFilter::all_types);

  std::optional<FlipSequence> connect_same_edge(const Order& from, const Order& to);
  std::optional<FlipSequence> connect_same_start(Index p, const Order& from, const Order& to);

  EdgeOracle edge_oracle();
  StartOracle start_oracle();

  [[nodiscard]] const CrossTable& table() const { return table_; }

 private:
  struct Cached {
    PathFamily family;
    FlipGraph graph;
  };
  const Cached& get(const Constraint& c);

  PointSet points_;
  CrossTable table_;
  FlipFilter filter_;
  std::map<Order, std::unique_ptr<Cached>> cache_;
};

struct FixedStartReport {
  FlipSequence sequence;
  int rotations = 0;
};

/// Flip sequence from `from` to `to`, both with end vertex p, whose every
/// member has p as an end vertex: rotate the starting edge counter-clockwise
/// through the viable start set, moving between rotations with the edge
/// oracle. Throws OracleFailure if the oracle fails.
FixedStartReport connect_fixed_start(const PointSet& s, Index p, const Order& from, const Order& to,
                                     const EdgeOracle& oracle);

struct AnyReport {
  FlipSequence sequence;
  /// Middle path with one end vertex from each input, when one was needed.
  std::optional<Order> middle;
  int oracle_calls = 0;
};

/// Flip sequence between arbitrary plane spanning paths via at most two
/// calls of the start oracle. Throws OracleFailure if the oracle fails.
AnyReport connect_any(const PointSet& s, const Order& from, const Order& to, const StartOracle& oracle);

/// `path` oriented so that it starts at p; throws if p is not an end vertex.
Order oriented_from(const Order& path, Index p);

}  // namespace flippath
