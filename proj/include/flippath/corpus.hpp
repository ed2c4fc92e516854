#pragma once

// Point-set sources: order-type database files, text files, random and
// structured generators, plus random plane paths for sampling.

#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "flippath/paths.hpp"

namespace flippath {

class CorpusError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct OrderTypeRecord {
  int n = 0;
  /// 0-based position in the file.
  std::size_t index = 0;
  PointSet points;
};

/// Bytes per coordinate: 1 for n <= 8, 2 (little endian) for n = 9, 10.
int coordinate_bytes(int n);
std::size_t record_size(int n);

/// Throws CorpusError on a size mismatch or a record not in general
/// position (naming its index).
std::vector<OrderTypeRecord> decode_order_types(std::span<const std::uint8_t> bytes, int n);
std::vector<OrderTypeRecord> read_order_type_file(const std::string& path, int n);
/// Inverse of decode_order_types. Coordinates must fit the record format.
std::vector<std::uint8_t> encode_order_types(const std::vector<PointSet>& sets, int n);
void write_order_type_file(const std::string& path, const std::vector<PointSet>& sets, int n);

/// Order types for n = 3..max_n (max_n <= 8; entry 0 holds n = 3), read
/// from `dir`/ordertypes_<n>.bin when all files exist, otherwise generated
/// and written there.
std::vector<std::vector<PointSet>> load_or_generate_corpus(const std::string& dir, int max_n);

/// "x y" per line, '#' starts a comment. Errors name the line.
PointSet parse_points_text(std::string_view text);
PointSet read_points_text(const std::string& path);
std::string format_points_text(const PointSet& s);

/// Uniform points in [0, bound)^2, resampled until in general position.
PointSet generate_random(int n, std::uint64_t seed, Coord bound);

/// k hull points on a large circle, each hull edge with one point pushed
/// slightly inwards from its midpoint (2k points).
PointSet double_circle(int k);
/// Two facing concave chains of k points each (2k points, four extreme).
PointSet double_chain(int k);

/// The x-sorted order, which is always plane.
Order sorted_path(const PointSet& s);
/// A random walk of `steps` flips from `start`.
Order random_walk(const CrossTable& t, Order start, int steps, std::mt19937_64& rng);

}  // namespace flippath
