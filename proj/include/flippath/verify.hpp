#pragma once

// Batch verification over a corpus: classification, path families, flip
// graph connectivity and canonicalizer audits, written as JSON lines.

#include <functional>
#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "flippath/classifiers.hpp"
#include "flippath/enumeration.hpp"

namespace flippath {

struct VerifyOptions {
  std::vector<FlipFilter> filters{FlipFilter::all_types, FlipFilter::type1_only};
  /// Diameters are computed for n <= 8, or always when forced.
  bool force_diameter = false;
  /// Paths audited per canonicalizer; 0 audits all of them.
  int canon_sample = 0;
  std::uint64_t seed = 1;
  int jobs = 1;
  bool strict = false;
  bool resume = false;
  /// Required for records with n >= 9.
  bool big = false;
  /// Write the elapsed time; off gives byte-identical reruns.
  bool timing = true;
};

struct VerificationResult {
  std::size_t id = 0;
  int n = 0;
  ClassLabels labels;
  long long paths = 0;
  /// Per filter, in VerifyOptions::filters order.
  std::vector<std::pair<FlipFilter, bool>> connected;
  std::optional<int> diameter;
  int canon_max_len = 0;
  int canon_max_iter = 0;
  /// "ok", "violation" (a theorem check failed) or "disconnected".
  std::string status = "ok";
  std::string message;
  double ms = 0;

  [[nodiscard]] std::string to_json(bool timing = true) const;
};

struct Job {
  std::size_t id = 0;
  PointSet points;
};

VerificationResult verify_record(const Job& job, const VerifyOptions& opt);

struct RunSummary {
  std::size_t processed = 0;
  std::size_t skipped = 0;
  std::size_t violations = 0;
  /// Set when --strict stopped the run early.
  bool halted = false;
};

/// Ids already present in a results file (empty if it does not exist).
std::set<std::size_t> completed_ids(const std::string& path);

/// Runs every job not yet in `out` (with resume) on opt.jobs workers. Lines
/// are appended in job order, so the file does not depend on the worker
/// count. Throws CorpusError for n >= 9 without opt.big.
RunSummary run_verification(const std::vector<Job>& jobs, const VerifyOptions& opt, const std::string& out,
                            const std::function<void(const VerificationResult&)>& on_result = {});

}  // namespace flippath
