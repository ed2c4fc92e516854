// Acceptance gate: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria.
//
// usage: acceptance [corpus-dir [criterion]]

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "flippath/canonicalize.hpp"
#include "flippath/constructions.hpp"
#include "flippath/corpus.hpp"
#include "flippath/enumeration.hpp"

using namespace flippath;

namespace {

// Pinned scope and tolerances.
constexpr int kCorpusMaxN = 8;
constexpr int kWheelMaxN = 8;
constexpr int kGdcMaxN = 8;
constexpr int kConstructedMaxN = 16;
constexpr int kConstructedPairs = 1000;
constexpr int kGdcCorpusSampledPairs = 1000;
constexpr int kOracleMaxN = 7;
constexpr int kRandomConstructions = 10000;
constexpr int kRandomMaxN = 10;
constexpr Coord kRandomBound = 64;
constexpr int kReductionMaxN = 7;
constexpr int kReductionPairs = 100;
constexpr int kSimulationMaxN = 7;
constexpr int kPrefixSweepN = 7;
constexpr int kPrefixLength = 3;
constexpr long long kAllowedFailures = 0;
constexpr std::uint64_t kSeed = 0x5eed2024;

struct Outcome {
  long long failures = 0;
  long long checked = 0;
  std::string note;
  std::string first;

  void fail(const std::string& what) {
    if (!failures++) first = what;
  }
};

std::vector<std::vector<PointSet>> corpus;

const std::vector<PointSet>& sets(int n) { return corpus[static_cast<std::size_t>(n - 3)]; }

std::vector<Order> members(const PathFamily& fam) {
  std::vector<Order> out;
  out.reserve(static_cast<std::size_t>(fam.size()));
  for (int i = 0; i < fam.size(); ++i) out.push_back(fam.path(i));
  return out;
}

// Replays `seq` and checks every step against the validator.
bool stepwise_valid(const CrossTable& t, const FlipSequence& seq, const std::function<bool(const Order&)>& extra = {}) {
  Order cur = seq.start();
  if (!is_plane_path(t, cur) || (extra && !extra(cur))) return false;
  for (const Flip& f : seq.steps()) {
    if (!validate_flip(t, cur, f.removed, f.added)) return false;
    cur = swap_edges(cur, f.removed, f.added);
    if (!is_plane_path(t, cur) || (extra && !extra(cur))) return false;
  }
  return path_key(cur) == path_key(seq.end());
}

Outcome corpus_connectivity() {
  Outcome o;
  for (int n = 3; n <= kCorpusMaxN; ++n)
    for (const PointSet& s : sets(n)) {
      const CrossTable t(s);
      const PathFamily fam = enumerate_paths(t, Constraint::all());
      for (FlipFilter f : {FlipFilter::type1_only, FlipFilter::all_types}) {
        ++o.checked;
        o.failures += !is_connected(build_flip_graph(t, fam, f));
      }
    }
  o.note = "flip graphs checked under type1 and all";
  return o;
}

Outcome convex_diameters() {
  Outcome o;
  for (int n = 4; n <= kCorpusMaxN; ++n)
    for (const PointSet& s : sets(n)) {
      if (Hull(s).interior_count() != 0) continue;
      const CrossTable t(s);
      const auto d = diameter(build_flip_graph(t, enumerate_paths(t, Constraint::all()), FlipFilter::all_types));
      const int want = n == 4 ? 3 : 2 * n - 6;
      ++o.checked;
      if (!d || *d != want) ++o.failures;
      o.note += "n=" + std::to_string(n) + ":" + (d ? std::to_string(*d) : "disconnected") + " ";
    }
  return o;
}

Outcome wheel_bound() {
  Outcome o;
  int worst = 0;
  for (int n = 4; n <= kWheelMaxN; ++n)
    for (const PointSet& s : sets(n)) {
      if (Hull(s).interior_count() != 1) continue;
      const CrossTable t(s);
      const PathFamily fam = enumerate_paths(t, Constraint::all());
      const auto d = diameter(build_flip_graph(t, fam, FlipFilter::all_types));
      ++o.checked;
      if (!d || *d > 2 * n - 4) ++o.failures;
      WheelCanonicalizer w(s);
      const auto paths = members(fam);
      for (std::size_t i = 0; i < paths.size(); ++i)
        for (std::size_t j = i + 1; j < paths.size(); ++j) {
          ++o.checked;
          try {
            const FlipSequence seq = w.connect(paths[i], paths[j]);
            worst = std::max(worst, seq.size());
            if (seq.size() > 2 * n - 4 || !stepwise_valid(t, seq) || path_key(seq.end()) != path_key(paths[j]))
              ++o.failures;
          } catch (const TheoremViolation&) {
            ++o.failures;
          }
        }
    }
  o.note = "longest wheel connection " + std::to_string(worst);
  return o;
}

struct GdcAudit {
  const GdcCanonicalizer g;
  Outcome& o;

  // Canonicalization with the per-iteration invariant; -1 on failure.
  int canon_length(const Order& p) {
    const std::string where = "n=" + std::to_string(g.table().n()) + " path " + format_path(p);
    try {
      const CanonResult r = g.canonicalize(p);
      bool ok = is_canonical_spinal(g.metric(), r.sequence.end()) && stepwise_valid(g.table(), r.sequence);
      for (const TraceRecord& rec : r.trace.records) ok = ok && monotone(rec) && rec.flips.size() <= 2;
      if (!ok) o.fail("canonicalization invariant, " + where);
      return ok ? r.sequence.size() : -1;
    } catch (const TheoremViolation& e) {
      o.fail(std::string(e.what()) + ", " + where);
      return -1;
    }
  }

  void connect(const Order& p, const Order& q, long long bound) {
    ++o.checked;
    try {
      const FlipSequence seq = g.connect(p, q);
      if (seq.size() > bound || !stepwise_valid(g.table(), seq) || path_key(seq.end()) != path_key(q))
        o.fail("connection of " + std::to_string(seq.size()) + " flips, " + format_path(p) + " to " + format_path(q));
    } catch (const TheoremViolation& e) {
      o.fail(std::string(e.what()) + ", " + format_path(p) + " to " + format_path(q));
    }
  }
};

Outcome gdc_bound() {
  Outcome o;
  std::mt19937_64 rng(kSeed);
  int sets_checked = 0;
  long long worst = 0;
  for (int n = 3; n <= kGdcMaxN; ++n)
    for (const PointSet& s : sets(n)) {
      const ClassLabels cl = classify(s);
      if (!cl.gdc) continue;
      ++sets_checked;
      GdcAudit audit{GdcCanonicalizer(s, *cl.decomposition), o};
      const auto paths = members(enumerate_paths(audit.g.table(), Constraint::all()));
      int longest = 0;
      for (const Order& p : paths) {
        ++o.checked;
        const int len = audit.canon_length(p);
        longest = std::max(longest, len);
      }
      // Every pair is covered by the two longest runs plus one bridge flip.
      ++o.checked;
      if (2LL * longest + 1 > gdc_connect_bound(n)) ++o.failures;
      worst = std::max(worst, 2LL * longest + 1);
      std::uniform_int_distribution<std::size_t> pick(0, paths.size() - 1);
      for (int k = 0; k < kGdcCorpusSampledPairs; ++k) audit.connect(paths[pick(rng)], paths[pick(rng)], gdc_connect_bound(n));
    }
  std::vector<PointSet> built;
  for (int k = 3; 2 * k <= kConstructedMaxN; ++k) built.push_back(double_circle(k));
  for (int k = 2; 2 * k <= kConstructedMaxN; ++k) built.push_back(double_chain(k));
  for (const PointSet& s : built) {
    const int n = s.size();
    const ClassLabels cl = classify(s);
    ++o.checked;
    if (!cl.gdc) {
      o.fail("constructed set of " + std::to_string(n) + " points is not classified GDC");
      continue;
    }
    GdcAudit audit{GdcCanonicalizer(s, *cl.decomposition), o};
    const Order start = sorted_path(s);
    for (int k = 0; k < kConstructedPairs; ++k) {
      const Order p = random_walk(audit.g.table(), start, 4 * n, rng);
      const Order q = random_walk(audit.g.table(), start, 4 * n, rng);
      ++o.checked;
      audit.canon_length(p);
      audit.canon_length(q);
      audit.connect(p, q, gdc_connect_bound(n));
    }
  }
  o.note = std::to_string(sets_checked) + " corpus sets, " + std::to_string(built.size()) +
           " constructed up to n=" + std::to_string(kConstructedMaxN) + "; worst corpus pair bound " +
           std::to_string(worst);
  return o;
}

Outcome viable_start_oracle() {
  Outcome o;
  for (int n = 3; n <= kOracleMaxN; ++n)
    for (const PointSet& s : sets(n)) {
      const CrossTable t(s);
      for (Index u = 0; u < n; ++u)
        for (Index v = 0; v < n; ++v) {
          if (u == v) continue;
          ++o.checked;
          if (viable_start_edge(s, u, v) != (count_paths_with_prefix(t, {u, v}) > 0)) ++o.failures;
        }
    }
  o.note = "ordered pairs compared";
  return o;
}

bool spanning(const std::vector<Index>& order, int n) {
  std::vector<Index> sorted = order;
  std::sort(sorted.begin(), sorted.end());
  for (int i = 0; i < n; ++i)
    if (static_cast<int>(sorted.size()) != n || sorted[static_cast<std::size_t>(i)] != i) return false;
  return true;
}

Outcome constructive_validity() {
  Outcome o;
  std::mt19937_64 rng(kSeed + 1);
  std::uniform_int_distribution<int> size(3, kRandomMaxN);
  for (int k = 0; k < kRandomConstructions; ++k) {
    const int n = size(rng);
    const PointSet s = generate_random(n, rng(), kRandomBound);
    const CrossTable t(s);
    std::uniform_int_distribution<Index> vertex(0, n - 1);
    const Index p = vertex(rng);
    Index q = vertex(rng);
    while (q == p) q = vertex(rng);
    o.checked += 3;
    try {
      const Order path = path_with_endpoints(s, p, q).order();
      if (!spanning(path, n) || !is_plane_path(t, path) || path.front() != p || path.back() != q) ++o.failures;
    } catch (const std::exception&) {
      ++o.failures;
    }
    try {
      if (viable_start_edge(s, p, q)) {
        const Order path = path_from_start_edge(s, p, q).order();
        if (!spanning(path, n) || !is_plane_path(t, path) || path[0] != p || path[1] != q) ++o.failures;
      } else {
        try {
          path_from_start_edge(s, p, q);
          ++o.failures;
        } catch (const ConstructionError&) {
        }
      }
    } catch (const std::exception&) {
      ++o.failures;
    }
    try {
      const ViableStartSet vs = viable_start_set(s, p);
      std::vector<std::pair<Index, Index>> pairs;
      for (Index a : vs.members)
        for (Index b : vs.members)
          if (a != b && vs.consecutive(a, b)) pairs.emplace_back(a, b);
      if (pairs.empty()) {
        --o.checked;
        continue;
      }
      const auto [a, b] = pairs[std::uniform_int_distribution<std::size_t>(0, pairs.size() - 1)(rng)];
      const CycleOrder c = cycle_with_two_edges(s, p, a, b);
      if (!spanning(c, n) || !is_plane_cycle(t, c) || c[0] != p || c[1] != a || c.back() != b) ++o.failures;
    } catch (const std::exception&) {
      ++o.failures;
    }
  }
  o.note = std::to_string(kRandomConstructions) + " random instances";
  return o;
}

Outcome reductions() {
  Outcome o;
  std::mt19937_64 rng(kSeed + 2);
  for (int n = 3; n <= kReductionMaxN; ++n)
    for (const PointSet& s : sets(n)) {
      const CrossTable t(s);
      BfsOracles oracles(s);
      const auto all = members(enumerate_paths(t, Constraint::all()));
      std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
      std::uniform_int_distribution<Index> vertex(0, n - 1);
      for (int k = 0; k < kReductionPairs; ++k) {
        const Order& a = all[pick(rng)];
        const Order& b = all[pick(rng)];
        ++o.checked;
        try {
          const AnyReport r = connect_any(s, a, b, oracles.start_oracle());
          if (path_key(r.sequence.start()) != path_key(a) || path_key(r.sequence.end()) != path_key(b) ||
              !stepwise_valid(t, r.sequence))
            ++o.failures;
        } catch (const std::exception&) {
          ++o.failures;
        }
        const Index p = vertex(rng);
        const auto fixed = members(enumerate_paths(t, Constraint::start(p)));
        if (fixed.empty()) continue;
        std::uniform_int_distribution<std::size_t> pf(0, fixed.size() - 1);
        const Order& c = fixed[pf(rng)];
        const Order& d = fixed[pf(rng)];
        ++o.checked;
        try {
          const FixedStartReport r = connect_fixed_start(s, p, c, d, oracles.edge_oracle());
          auto keeps_p = [p](const Order& x) { return x.front() == p || x.back() == p; };
          if (path_key(r.sequence.end()) != path_key(d) || !stepwise_valid(t, r.sequence, keeps_p)) ++o.failures;
        } catch (const std::exception&) {
          ++o.failures;
        }
      }
    }
  o.note = "sampled connections on every set up to n=" + std::to_string(kReductionMaxN);
  return o;
}

Outcome type2_simulation() {
  Outcome o;
  for (int n = 3; n <= kSimulationMaxN; ++n)
    for (const PointSet& s : sets(n)) {
      const CrossTable t(s);
      for (const Order& p : members(enumerate_paths(t, Constraint::all())))
        for (const Flip& f : enumerate_flips(t, p)) {
          if (f.type != 2) continue;
          ++o.checked;
          try {
            const FlipSequence seq = simulate_type2_by_type1(t, p, f);
            bool ok = path_key(seq.end()) == path_key(swap_edges(p, f.removed, f.added)) && stepwise_valid(t, seq);
            Order cur = seq.start();
            for (const Flip& step : seq.steps()) {
              ok = ok && is_type1_move(cur, step);
              cur = swap_edges(cur, step.removed, step.added);
            }
            if (!ok) ++o.failures;
          } catch (const std::exception&) {
            ++o.failures;
          }
        }
    }
  o.note = "type 2 flips simulated";
  return o;
}

// Existence criterion: failures = 1 until a witness is found.
Outcome frozen_prefix_witness() {
  Outcome o;
  o.failures = 1;
  const auto& pool = sets(kPrefixSweepN);
  for (std::size_t id = 0; id < pool.size() && o.failures; ++id) {
    const PointSet& s = pool[id];
    const CrossTable t(s);
    const int n = s.size();
    for (Index a = 0; a < n && o.failures; ++a)
      for (Index b = 0; b < n && o.failures; ++b)
        for (Index c = 0; c < n && o.failures; ++c) {
          if (a == b || b == c || a == c) continue;
          const Order prefix{a, b, c};
          static_assert(kPrefixLength == 3);
          if (count_paths_with_prefix(t, prefix) < 2) continue;
          ++o.checked;
          const PathFamily fam = enumerate_paths(t, Constraint::prefix(prefix));
          const FlipGraph g = build_flip_graph(t, fam, FlipFilter::all_types);
          if (is_connected(g)) continue;
          for (int v = 0; v < g.size(); ++v)
            if (g.degree(v) == 0) {
              o.failures = 0;
              o.note = "set " + std::to_string(id) + " prefix " + format_path(prefix) + ": " +
                       std::to_string(components(g).size()) + " components, frozen path " +
                       format_path(fam.path(v));
              break;
            }
        }
  }
  if (o.failures) o.note = "no witness";
  return o;
}

// Plane Hamiltonian cycle through edges whose triangles with every other
// point are empty.
std::optional<CycleOrder> empty_triangle_cycle(const PointSet& s, const CrossTable& t) {
  const int n = s.size();
  std::vector<std::vector<Index>> adj(static_cast<std::size_t>(n));
  for (Index u = 0; u < n; ++u)
    for (Index v = u + 1; v < n; ++v) {
      bool good = true;
      for (Index w = 0; w < n && good; ++w)
        if (w != u && w != v) good = triangle_empty(s, u, v, w);
      if (good) {
        adj[static_cast<std::size_t>(u)].push_back(v);
        adj[static_cast<std::size_t>(v)].push_back(u);
      }
    }
  CycleOrder cyc{0};
  std::vector<bool> used(static_cast<std::size_t>(n), false);
  used[0] = true;
  std::function<bool()> dfs = [&]() -> bool {
    const Index last = cyc.back();
    for (Index w : adj[static_cast<std::size_t>(last)]) {
      if (used[static_cast<std::size_t>(w)]) continue;
      bool plane = true;
      for (std::size_t i = 1; i < cyc.size() && plane; ++i) plane = !t.cross(Edge(cyc[i - 1], cyc[i]), Edge(last, w));
      if (!plane) continue;
      cyc.push_back(w);
      used[static_cast<std::size_t>(w)] = true;
      if (static_cast<int>(cyc.size()) == n) {
        if (is_plane_cycle(t, cyc) && std::find(adj[0].begin(), adj[0].end(), w) != adj[0].end()) return true;
      } else if (dfs()) {
        return true;
      }
      cyc.pop_back();
      used[static_cast<std::size_t>(w)] = false;
    }
    return false;
  };
  if (dfs()) return cyc;
  return std::nullopt;
}

Outcome empty_triangle_convexity() {
  Outcome o;
  int found = 0;
  for (int n = 3; n <= kCorpusMaxN; ++n)
    for (const PointSet& s : sets(n)) {
      const CrossTable t(s);
      const auto cyc = empty_triangle_cycle(s, t);
      const bool convex = Hull(s).interior_count() == 0;
      ++o.checked;
      if (cyc) {
        ++found;
        if (!empty_triangle_convexity_check(s, *cyc) || !convex) ++o.failures;
      } else if (convex) {
        ++o.failures;  // the hull itself qualifies
      }
    }
  o.note = std::to_string(found) + " sets admit such a cycle";
  return o;
}

Outcome chain_union_uncrossed() {
  Outcome o;
  for (int n = 3; n <= kCorpusMaxN; ++n)
    for (const PointSet& s : sets(n)) {
      const ClassLabels cl = classify(s);
      if (!cl.gdc) continue;
      ++o.checked;
      const CrossTable t(s);
      if (!verify_decomposition(s, *cl.decomposition) ||
          !is_uncrossed_spanning_cycle(t, spine_from_chains(*cl.decomposition).cycle))
        ++o.failures;
    }
  o.note = "decompositions validated";
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  const std::string dir = argc > 1 ? argv[1] : "corpus";
  const std::size_t only = argc > 2 ? std::stoul(argv[2]) : 0;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    corpus = load_or_generate_corpus(dir, kCorpusMaxN);
  } catch (const std::exception& e) {
    std::printf("cannot load corpus: %s\n", e.what());
    return 11;
  }
  std::printf("corpus:");
  for (const auto& c : corpus) std::printf(" %zu", c.size());
  std::printf(" order types for n = 3..%d\n", kCorpusMaxN);

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"corpus connectivity, n <= 8, type1 and all", corpus_connectivity},
      {"convex diameters 3 at n = 4, 2n-6 for n = 5..8", convex_diameters},
      {"wheel diameter and connection length <= 2n-4", wheel_bound},
      {"GDC connection length <= 2((n-1)(n/2-2)+(n-1))+1, monotone traces", gdc_bound},
      {"viable start edge matches fixed-edge enumeration, n <= 7", viable_start_oracle},
      {"random constructions pass their contracts", constructive_validity},
      {"reductions give stepwise-valid sequences, n <= 7", reductions},
      {"type 2 flips simulated by type 1 flips, n <= 7", type2_simulation},
      {"prefix-3 sweep at n = 7 finds a frozen path", frozen_prefix_witness},
      {"empty-triangle spanning cycle implies convex position, n <= 8", empty_triangle_convexity},
      {"chain unions are uncrossed spanning cycles, n <= 8", chain_union_uncrossed},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    if (only && only != i + 1) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.failures = 1;
      o.note = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool pass = o.failures <= kAllowedFailures;
    failed += !pass;
    std::printf("%s  C%zu  %s  [checked %lld, failures %lld, %.1fs] %s\n", pass ? "PASS" : "FAIL", i + 1,
                criteria[i].first.c_str(), o.checked, o.failures, secs, o.note.c_str());
    if (!o.first.empty()) std::printf("      first failure: %s\n", o.first.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed in %.0fs\n", failed, criteria.size(),
              std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  return failed;
}
