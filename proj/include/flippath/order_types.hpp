#pragma once

// Order types of small point sets: canonical signatures and an incremental
// generator that realizes every order type of n points with integer
// coordinates by inserting a point into each cell of the line arrangement of
// every (n-1)-point realization.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "flippath/geometry.hpp"

namespace flippath {

/// Canonical signature of the order type of `s`, identifying relabelings
/// and mirror images: the lexicographically smallest orientation string
/// over all (extreme pivot, orientation) radial labelings.
std::string order_type_signature(const PointSet& s);

/// Labeling used for the signature: pivot first, then the remaining points
/// in radial order around it.
std::vector<Index> radial_labeling(const PointSet& s, Index pivot, bool mirrored);

struct OrderTypeCatalog {
  int n = 0;
  /// One realization per order type, coordinates >= 0, discovery order.
  std::vector<PointSet> sets;
};

struct GeneratorOptions {
  /// Extra realizations kept per order type as seeds for the next level.
  int seeds_per_type = 20;
  std::function<void(int n, std::size_t found)> progress;
};

/// Catalogs for sizes 3..max_n (index 0 holds n = 3).
std::vector<OrderTypeCatalog> generate_order_types(int max_n, const GeneratorOptions& opt = {});

/// Largest absolute coordinate of `s`.
Coord max_coordinate(const PointSet& s);

}  // namespace flippath
