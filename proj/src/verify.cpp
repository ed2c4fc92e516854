#include "flippath/verify.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <condition_variable>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <numeric>
#include <random>
#include <thread>

#include <nlohmann/json.hpp>

#include "flippath/canonicalize.hpp"
#include "flippath/corpus.hpp"

namespace flippath {

std::string VerificationResult::to_json(bool timing) const {
  nlohmann::ordered_json connected_json = nlohmann::ordered_json::object();
  for (const auto& [f, ok] : connected) connected_json[f == FlipFilter::all_types ? "all" : to_string(f)] = ok;
  nlohmann::ordered_json j{
      {"id", id},
      {"n", n},
      {"labels", {{"convex", labels.convex}, {"wheel", labels.wheel}, {"gdc", labels.gdc}, {"spinal", labels.spinal}}},
      {"counts", {{"paths", paths}}},
      {"connected", connected_json},
      {"diameter", diameter ? nlohmann::ordered_json(*diameter) : nlohmann::ordered_json()},
      {"canon", {{"max_len", canon_max_len}, {"max_iter", canon_max_iter}}},
      {"status", status},
      {"ms", timing ? ms : 0.0},
  };
  if (!message.empty()) j["message"] = message;
  return j.dump();
}

namespace {

std::vector<int> audit_indices(int size, const VerifyOptions& opt, std::size_t id) {
  std::vector<int> idx(static_cast<std::size_t>(size));
  std::iota(idx.begin(), idx.end(), 0);
  if (opt.canon_sample > 0 && size > opt.canon_sample) {
    std::mt19937_64 rng(opt.seed ^ (0x9e3779b97f4a7c15ULL * (id + 1)));
    std::shuffle(idx.begin(), idx.end(), rng);
    idx.resize(static_cast<std::size_t>(opt.canon_sample));
    std::sort(idx.begin(), idx.end());
  }
  return idx;
}

}  // namespace

VerificationResult verify_record(const Job& job, const VerifyOptions& opt) {
  const auto t0 = std::chrono::steady_clock::now();
  VerificationResult r;
  r.id = job.id;
  r.n = job.points.size();
  try {
    r.labels = classify(job.points);
    const CrossTable t(job.points);
    const PathFamily fam = enumerate_paths(t, Constraint::all());
    r.paths = fam.size();
    for (FlipFilter f : opt.filters) {
      const FlipGraph g = build_flip_graph(t, fam, f);
      const bool ok = is_connected(g);
      r.connected.emplace_back(f, ok);
      if (!ok) {
        r.status = "disconnected";
        r.message = "flip graph under " + to_string(f) + " is disconnected";
      }
      if (f == FlipFilter::all_types && ok && (r.n <= 8 || opt.force_diameter)) r.diameter = diameter(g);
    }
    const auto idx = audit_indices(fam.size(), opt, job.id);
    if (r.labels.wheel) {
      const WheelCanonicalizer w(job.points);
      for (int i : idx) {
        const CanonResult c = w.canonicalize(fam.path(i));
        r.canon_max_len = std::max(r.canon_max_len, c.sequence.size());
        r.canon_max_iter = std::max(r.canon_max_iter, static_cast<int>(c.trace.records.size()));
      }
    }
    if (r.labels.gdc) {
      const GdcCanonicalizer g(job.points, *r.labels.decomposition);
      for (int i : idx) {
        const CanonResult c = g.canonicalize(fam.path(i));
        r.canon_max_len = std::max(r.canon_max_len, c.sequence.size());
        r.canon_max_iter = std::max(r.canon_max_iter, static_cast<int>(c.trace.records.size()));
        if (static_cast<long long>(c.trace.records.size()) > gdc_iteration_bound(r.n))
          throw TheoremViolation("iteration count " + std::to_string(c.trace.records.size()) + " above the bound");
      }
    }
  } catch (const TheoremViolation& e) {
    r.status = "violation";
    r.message = e.what();
  }
  r.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

std::set<std::size_t> completed_ids(const std::string& path) {
  std::set<std::size_t> ids;
  std::ifstream in(path);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    // A torn last line from an interrupted run is ignored and redone.
    const auto j = nlohmann::json::parse(line, nullptr, false);
    if (!j.is_discarded() && j.contains("id")) ids.insert(j["id"].get<std::size_t>());
  }
  return ids;
}

RunSummary run_verification(const std::vector<Job>& jobs, const VerifyOptions& opt, const std::string& out,
                            const std::function<void(const VerificationResult&)>& on_result) {
  RunSummary summary;
  bool warned = false;
  for (const Job& j : jobs) {
    if (j.points.size() >= 9 && !opt.big)
      throw CorpusError("record " + std::to_string(j.id) + " has n = " + std::to_string(j.points.size()) +
                        "; runs with n >= 9 need --big");
    if (j.points.size() >= 10 && !warned) {
      std::cerr << "warning: n = 10 enumerations are far beyond a desktop compute budget\n";
      warned = true;
    }
  }
  const std::set<std::size_t> done = opt.resume ? completed_ids(out) : std::set<std::size_t>{};
  std::vector<const Job*> todo;
  for (const Job& j : jobs) {
    if (done.contains(j.id))
      ++summary.skipped;
    else
      todo.push_back(&j);
  }

  if (opt.resume && std::filesystem::exists(out)) {
    // Cut a torn last line so appended records start on a fresh line.
    const std::string text = [&] {
      std::ifstream in(out, std::ios::binary);
      return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    }();
    const auto end = text.rfind('\n');
    std::filesystem::resize_file(out, end == std::string::npos ? 0 : end + 1);
  }
  std::ofstream file;
  if (!out.empty()) {
    file.open(out, opt.resume ? std::ios::app : std::ios::trunc);
    if (!file) throw CorpusError("cannot write " + out);
  }

  std::vector<std::optional<VerificationResult>> results(todo.size());
  std::mutex mu;
  std::condition_variable ready;
  std::atomic<std::size_t> next{0};
  std::atomic<bool> stop{false};
  auto worker = [&] {
    for (std::size_t i; !stop && (i = next++) < todo.size();) {
      VerificationResult r = verify_record(*todo[i], opt);
      {
        const std::lock_guard lock(mu);
        results[i] = std::move(r);
      }
      ready.notify_one();
    }
  };
  std::vector<std::jthread> pool;
  for (int k = 0; k < std::max(1, opt.jobs); ++k) pool.emplace_back(worker);

  // Single writer, in job order.
  for (std::size_t i = 0; i < todo.size(); ++i) {
    VerificationResult r;
    {
      std::unique_lock lock(mu);
      ready.wait(lock, [&] { return results[i].has_value(); });
      r = std::move(*results[i]);
      results[i].reset();
    }
    if (file.is_open()) file << r.to_json(opt.timing) << '\n' << std::flush;
    if (on_result) on_result(r);
    ++summary.processed;
    if (r.status != "ok") {
      ++summary.violations;
      if (opt.strict) {
        summary.halted = i + 1 < todo.size();
        stop = true;
        break;
      }
    }
  }
  stop = true;
  return summary;
}

}  // namespace flippath
