#pragma once

// Flip algorithms that drive any plane spanning path to a canonical one on
// wheel sets and on generalized double circles, with per-iteration traces.

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "flippath/classifiers.hpp"
#include "flippath/paths.hpp"

namespace flippath {

/// A case of the proof did not apply or a claimed flip was invalid. The
/// message carries the point set and the path.
class TheoremViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class PreconditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Distances along a spine.
class SpineMetric {
 public:
  explicit SpineMetric(const Spine& spine);

  [[nodiscard]] int n() const { return static_cast<int>(spine_.cycle.size()); }
  [[nodiscard]] const Spine& spine() const { return spine_; }
  [[nodiscard]] int position(Index v) const { return pos_[static_cast<std::size_t>(v)]; }
  /// Spine edges passed walking from p to q along the cycle order (ccw for
  /// spines built from chains).
  [[nodiscard]] int distance_ccw(Index p, Index q) const;
  [[nodiscard]] int distance_cw(Index p, Index q) const { return distance_ccw(q, p); }
  [[nodiscard]] int distance(Index p, Index q) const;
  [[nodiscard]] bool neighbors(Index p, Index q) const { return distance(p, q) == 1; }
  [[nodiscard]] Index next(Index v) const;
  [[nodiscard]] Index prev(Index v) const;
  [[nodiscard]] int weight(Edge e) const { return distance(e.u, e.v); }
  [[nodiscard]] int weight(const Order& path) const;
  [[nodiscard]] int spine_count(const Order& path) const;

 private:
  Spine spine_;
  std::vector<int> pos_;
};

bool is_canonical_spinal(const SpineMetric& m, const Order& path);

enum class WheelEdge { radial, spine, inner };

/// Edge classes of a wheel set: incident to the center, along the hull, or
/// neither.
class WheelStructure {
 public:
  /// Throws PreconditionError unless s has exactly one interior point.
  explicit WheelStructure(const PointSet& s);

  [[nodiscard]] Index center() const { return center_; }
  [[nodiscard]] const Hull& hull() const { return hull_; }
  [[nodiscard]] WheelEdge kind(Edge e) const;
  [[nodiscard]] int spine_count(const Order& path) const;

 private:
  Hull hull_;
  Index center_ = -1;
};

/// Spine edges plus at most two radial edges.
bool is_canonical_wheel(const WheelStructure& w, const Order& path);

enum class FaceSide { interior, exterior };

/// Where v_{i+1}..v_n lie relative to the face bounded by v_1..v_i (i is
/// 1-based). Precondition: i >= 3 and no edge on s crosses v_1v_i. Throws
/// PreconditionError on a violated precondition and TheoremViolation if the
/// tail is split between the two sides.
FaceSide vertices_in_face(const PointSet& s, const CrossTable& t, const Order& path, int i);

struct TraceRecord {
  std::string label;
  /// Which sub-rule fired inside the case (free text, stable per rule).
  std::string rule;
  std::vector<Flip> flips;
  int weight_before = 0;
  int weight_after = 0;
  int spine_before = 0;
  int spine_after = 0;
};

struct CaseTrace {
  std::vector<TraceRecord> records;

  /// One JSON object per record.
  [[nodiscard]] std::string to_jsonl() const;
};

struct CanonResult {
  FlipSequence sequence;
  CaseTrace trace;
};

/// Weight can only go down while the spine count can only go up, and at
/// least one of them strictly.
bool monotone(const TraceRecord& r);

/// Wheel canonicalizer (spine count grows by one per iteration) with a
/// search for the bridge between canonical paths.
class WheelCanonicalizer {
 public:
  explicit WheelCanonicalizer(const PointSet& s);

  /// Deterministic run: the given orientation first, the first inner edge
  /// for the Type 2 insertion.
  [[nodiscard]] CanonResult canonicalize(const Order& path) const;
  /// Shortest run per reachable canonical path over every choice the
  /// procedure leaves open (which end is v1, which inner edge to drop).
  [[nodiscard]] std::map<PathKey, FlipSequence> canonical_options(const Order& path) const;
  /// Cheapest combination of canonical_options(P), a bridge and the inverse
  /// of a run for Q. Throws TheoremViolation if the total exceeds 2n - 4.
  FlipSequence connect(const Order& p, const Order& q);
  /// Shortest bridge between canonical paths through canonical paths only.
  /// Throws TheoremViolation if none exists.
  FlipSequence bridge(const Order& from, const Order& to);
  /// Length of bridge(from, to).
  int bridge_length(PathKey from, PathKey to);

  [[nodiscard]] const CrossTable& table() const { return table_; }
  [[nodiscard]] const WheelStructure& structure() const { return wheel_; }

 private:
  struct Move {
    std::string label;
    std::string rule;
    Edge removed;
    Edge added;
  };
  /// Every move the procedure allows on a non-canonical path, the preferred
  /// one first.
  [[nodiscard]] std::vector<Move> moves(const Order& path) const;
  /// Parent links of a breadth-first search through canonical paths.
  const std::unordered_map<PathKey, PathKey>& bridge_tree(PathKey from);
  const std::map<PathKey, FlipSequence>& cached_options(const Order& path);

  PointSet points_;
  CrossTable table_;
  WheelStructure wheel_;
  std::unordered_map<PathKey, std::unordered_map<PathKey, PathKey>> trees_;
  /// By oriented key of the start.
  std::unordered_map<PathKey, std::map<PathKey, FlipSequence>> options_;
};

CanonResult wheel_canonicalize(const PointSet& s, const Order& path);
FlipSequence wheel_connect(const PointSet& s, const Order& p, const Order& q);

enum class Obs3 { a, b, c };

/// The flips of the valid-flip observation for v_1 and its spine neighbor
/// v_a (a is 1-based, a != 2), indices referring to `path`. The (b) flip is
/// validated on the result of the (a) flip, as it is meant to follow it.
/// Throws PreconditionError naming the failed check.
Flip valid_flip_abc(const PointSet& s, const SpineMetric& m, const Order& path, int a, Obs3 which);

struct TriangleStructure {
  /// The extreme one of p, q (p when both are).
  Index extreme = 0;
  Index other = 0;
  bool both_extreme = false;
  /// The one of p, q sharing a chain with x, and that chain.
  Index shares_with = 0;
  int chain = -1;
};

/// Structure of a non-empty triangle pqx over spine neighbors p, q of a
/// generalized double circle. Throws PreconditionError for empty triangles or
/// non-neighbors, TheoremViolation if the structure claim fails.
TriangleStructure gdc_nonempty_triangle_structure(const PointSet& s, const ChainDecomposition& d, Index p, Index q,
                                                  Index x);

/// Iterations allowed by the bound for n points: (n-1)(n/2-2) + (n-1).
long long gdc_iteration_bound(int n);
/// Flip bound for a connection: 2 * gdc_iteration_bound(n) + 1.
long long gdc_connect_bound(int n);

class GdcCanonicalizer {
 public:
  GdcCanonicalizer(const PointSet& s, ChainDecomposition d);

  [[nodiscard]] CanonResult canonicalize(const Order& path) const;
  /// Canonical forms of both ends joined by one Type 2 flip.
  [[nodiscard]] FlipSequence connect(const Order& p, const Order& q) const;

  [[nodiscard]] const SpineMetric& metric() const { return metric_; }
  [[nodiscard]] const CrossTable& table() const { return table_; }
  [[nodiscard]] const ChainDecomposition& decomposition() const { return dec_; }
  /// True for non-spine edges outside the spine polygon.
  [[nodiscard]] bool is_outer(Edge e) const;

 private:
  friend class GdcDispatcher;

  PointSet points_;
  CrossTable table_;
  Hull hull_;
  ChainDecomposition dec_;
  SpineMetric metric_;
  std::vector<Point> spine_polygon_;
};

CanonResult gdc_canonicalize(const PointSet& s, const ChainDecomposition& d, const Order& path);
FlipSequence gdc_connect(const PointSet& s, const ChainDecomposition& d, const Order& p, const Order& q);

}  // namespace flippath
