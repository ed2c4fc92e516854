#include "flippath/corpus.hpp"

#include "flippath/order_types.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <numbers>
#include <sstream>

namespace flippath {

int coordinate_bytes(int n) {
  if (n >= 3 && n <= 8) return 1;
  if (n == 9 || n == 10) return 2;
  throw CorpusError("order type files exist for 3 <= n <= 10, not n = " + std::to_string(n));
}

std::size_t record_size(int n) { return static_cast<std::size_t>(n) * 2 * static_cast<std::size_t>(coordinate_bytes(n)); }

std::vector<OrderTypeRecord> decode_order_types(std::span<const std::uint8_t> bytes, int n) {
  const std::size_t rec = record_size(n);
  if (bytes.size() % rec != 0)
    throw CorpusError("file size " + std::to_string(bytes.size()) + " is not a multiple of the record size " +
                      std::to_string(rec));
  const int b = coordinate_bytes(n);
  auto coord = [&](std::size_t at) -> Coord {
    return b == 1 ? bytes[at] : static_cast<Coord>(bytes[at] | (bytes[at + 1] << 8));
  };
  std::vector<OrderTypeRecord> out;
  out.reserve(bytes.size() / rec);
  for (std::size_t r = 0; r * rec < bytes.size(); ++r) {
    std::vector<Point> pts;
    for (int i = 0; i < n; ++i) {
      const std::size_t at = r * rec + static_cast<std::size_t>(i) * 2 * static_cast<std::size_t>(b);
      pts.push_back({coord(at), coord(at + static_cast<std::size_t>(b))});
    }
    if (!is_general_position(pts)) throw CorpusError("record " + std::to_string(r) + " is not in general position");
    out.push_back({n, r, PointSet(std::move(pts))});
  }
  return out;
}

std::vector<OrderTypeRecord> read_order_type_file(const std::string& path, int n) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CorpusError("cannot open " + path);
  const std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return decode_order_types(bytes, n);
}

std::vector<std::uint8_t> encode_order_types(const std::vector<PointSet>& sets, int n) {
  const int b = coordinate_bytes(n);
  const Coord limit = b == 1 ? 255 : 65535;
  std::vector<std::uint8_t> out;
  out.reserve(sets.size() * record_size(n));
  for (const PointSet& s : sets) {
    if (s.size() != n) throw CorpusError("point set of size " + std::to_string(s.size()) + " in an n = " + std::to_string(n) + " file");
    for (const Point& p : s.points())
      for (Coord c : {p.x, p.y}) {
        if (c < 0 || c > limit) throw CorpusError("coordinate " + std::to_string(c) + " does not fit the record format");
        out.push_back(static_cast<std::uint8_t>(c & 0xff));
        if (b == 2) out.push_back(static_cast<std::uint8_t>(c >> 8));
      }
  }
  return out;
}

void write_order_type_file(const std::string& path, const std::vector<PointSet>& sets, int n) {
  const auto bytes = encode_order_types(sets, n);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw CorpusError("cannot write " + path);
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
}

std::vector<std::vector<PointSet>> load_or_generate_corpus(const std::string& dir, int max_n) {
  if (max_n < 3 || max_n > 8) throw CorpusError("generated corpora cover 3 <= n <= 8");
  auto file = [&](int n) { return (std::filesystem::path(dir) / ("ordertypes_" + std::to_string(n) + ".bin")).string(); };
  bool cached = true;
  for (int n = 3; n <= max_n; ++n) cached = cached && std::filesystem::exists(file(n));
  std::vector<std::vector<PointSet>> out;
  if (cached) {
    for (int n = 3; n <= max_n; ++n) {
      out.emplace_back();
      for (auto& r : read_order_type_file(file(n), n)) out.back().push_back(std::move(r.points));
    }
    return out;
  }
  std::filesystem::create_directories(dir);
  for (auto& cat : generate_order_types(max_n)) {
    write_order_type_file(file(cat.n), cat.sets, cat.n);
    out.push_back(std::move(cat.sets));
  }
  return out;
}

PointSet parse_points_text(std::string_view text) {
  std::vector<Point> pts;
  std::istringstream in{std::string(text)};
  std::string line;
  for (int no = 1; std::getline(in, line); ++no) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::vector<std::string> tok{std::istream_iterator<std::string>(ls), std::istream_iterator<std::string>()};
    if (tok.empty()) continue;
    if (tok.size() != 2) throw CorpusError("line " + std::to_string(no) + ": expected \"x y\"");
    Point p;
    for (int k = 0; k < 2; ++k) {
      std::size_t used = 0;
      long long v = 0;
      try {
        v = std::stoll(tok[static_cast<std::size_t>(k)], &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != tok[static_cast<std::size_t>(k)].size())
        throw CorpusError("line " + std::to_string(no) + ": not an integer: " + tok[static_cast<std::size_t>(k)]);
      (k == 0 ? p.x : p.y) = v;
    }
    pts.push_back(p);
  }
  if (!is_general_position(pts)) throw CorpusError("points are not in general position");
  return PointSet(std::move(pts));
}

PointSet read_points_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CorpusError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_points_text(buf.str());
}

std::string format_points_text(const PointSet& s) {
  std::string out;
  for (const Point& p : s.points()) out += std::to_string(p.x) + " " + std::to_string(p.y) + "\n";
  return out;
}

PointSet generate_random(int n, std::uint64_t seed, Coord bound) {
  if (n < 3) throw CorpusError("need at least 3 points");
  // No three in line allows at most 2 points per grid column.
  if (bound < 2 || n > 2 * bound || bound * bound < 4LL * n)
    throw CorpusError("bound " + std::to_string(bound) + " is too small for " + std::to_string(n) + " points");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<Coord> coord(0, bound - 1);
  std::vector<Point> pts;
  const long long attempts = 10000LL * n;
  for (long long tries = 0; static_cast<int>(pts.size()) < n; ++tries) {
    if (tries > attempts) throw CorpusError("no general-position sample found; raise the bound");
    const Point c{coord(rng), coord(rng)};
    bool ok = true;
    for (std::size_t i = 0; i < pts.size() && ok; ++i) {
      ok = pts[i] != c;
      for (std::size_t j = i + 1; j < pts.size() && ok; ++j) ok = orient(pts[i], pts[j], c) != 0;
    }
    if (ok) pts.push_back(c);
  }
  return PointSet(std::move(pts));
}

namespace {

// Nudges points until no three are collinear; deterministic.
PointSet settle(std::vector<Point> pts) {
  for (int guard = 0; !is_general_position(pts); ++guard) {
    if (guard > 1000) throw CorpusError("could not settle a structured instance");
    pts[static_cast<std::size_t>(guard) % pts.size()].x += 1;
  }
  return PointSet(std::move(pts));
}

}  // namespace

PointSet double_circle(int k) {
  if (k < 3) throw CorpusError("a double circle needs at least 3 hull points");
  constexpr double r = 100000.0;
  std::vector<Point> hull;
  for (int i = 0; i < k; ++i) {
    const double t = 2 * std::numbers::pi * i / k;
    hull.push_back({static_cast<Coord>(std::lround(r + r * std::cos(t))), static_cast<Coord>(std::lround(r + r * std::sin(t)))});
  }
  std::vector<Point> pts = hull;
  for (int i = 0; i < k; ++i) {
    const Point a = hull[static_cast<std::size_t>(i)], b = hull[static_cast<std::size_t>((i + 1) % k)];
    const double mx = (a.x + b.x) / 2.0, my = (a.y + b.y) / 2.0;
    // Push towards the center by 2% of the edge length.
    const double len = std::hypot(static_cast<double>(b.x - a.x), static_cast<double>(b.y - a.y));
    const double dx = r - mx, dy = r - my, d = std::hypot(dx, dy);
    pts.push_back({static_cast<Coord>(std::lround(mx + dx / d * 0.02 * len)),
                   static_cast<Coord>(std::lround(my + dy / d * 0.02 * len))});
  }
  return settle(std::move(pts));
}

PointSet double_chain(int k) {
  if (k < 2) throw CorpusError("a double chain needs at least 2 points per chain");
  constexpr Coord height = 1000000;
  const Coord step = 1000;
  std::vector<Point> pts;
  for (int i = 0; i < k; ++i) pts.push_back({i * step, 10LL * i * (k - 1 - i) * step / 100});
  for (int i = 0; i < k; ++i) pts.push_back({i * step + 3 * i, height - 10LL * i * (k - 1 - i) * step / 100});
  return settle(std::move(pts));
}

Order sorted_path(const PointSet& s) {
  Order out(static_cast<std::size_t>(s.size()));
  for (Index i = 0; i < s.size(); ++i) out[static_cast<std::size_t>(i)] = i;
  std::sort(out.begin(), out.end(), [&](Index a, Index b) {
    return std::pair(s[a].x, s[a].y) < std::pair(s[b].x, s[b].y);
  });
  return out;
}

Order random_walk(const CrossTable& t, Order start, int steps, std::mt19937_64& rng) {
  for (int i = 0; i < steps; ++i) {
    const std::vector<Flip> flips = enumerate_flips(t, start);
    if (flips.empty()) break;
    std::uniform_int_distribution<std::size_t> pick(0, flips.size() - 1);
    const Flip& f = flips[pick(rng)];
    start = swap_edges(start, f.removed, f.added);
  }
  return start;
}

}  // namespace flippath
