// Command-line front end. Exit codes: 0 verified, 2 violations found,
// 1 operational error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <random>

#include "flippath/canonicalize.hpp"
#include "flippath/classifiers.hpp"
#include "flippath/constructions.hpp"
#include "flippath/corpus.hpp"
#include "flippath/enumeration.hpp"
#include "flippath/order_types.hpp"
#include "flippath/verify.hpp"

using namespace flippath;

namespace {

constexpr int kOk = 0;
constexpr int kOperational = 1;
constexpr int kViolations = 2;

// A point set given as a text file, or as record `record` of a binary
// order-type file when `n` is set.
struct Source {
  std::string file;
  int n = 0;
  std::size_t record = 0;

  void add_to(CLI::App* cmd) {
    cmd->add_option("points", file, "points text file, or order-type file with --n")->required();
    cmd->add_option("--n", n, "read FILE as an order-type database of n-point records");
    cmd->add_option("--record", record, "record index in the order-type file");
  }

  [[nodiscard]] PointSet load() const {
    if (n == 0) return read_points_text(file);
    auto recs = read_order_type_file(file, n);
    if (record >= recs.size())
      throw CorpusError("record " + std::to_string(record) + " out of range (" + std::to_string(recs.size()) + ")");
    return recs[record].points;
  }
};

std::ostream& output(const std::string& path, std::ofstream& file) {
  if (path.empty() || path == "-") return std::cout;
  file.open(path);
  if (!file) throw CorpusError("cannot write " + path);
  return file;
}

Order checked_path(const PointSet& s, const std::string& text) {
  const Order p = parse_path(text);
  if (!is_plane_path(s, p)) throw std::invalid_argument("not a plane spanning path: " + text);
  return p;
}

void print_sequence(std::ostream& os, const FlipSequence& seq) {
  os << "start " << format_path(seq.start()) << '\n';
  Order cur = seq.start();
  for (const Flip& f : seq.steps()) {
    cur = swap_edges(cur, f.removed, f.added);
    os << "flip -" << f.removed.u << "," << f.removed.v << " +" << f.added.u << "," << f.added.v << " type " << f.type
       << "  -> " << format_path(cur) << '\n';
  }
  os << "flips " << seq.size() << '\n';
}

std::string label_line(const ClassLabels& cl) {
  std::string s;
  for (const auto& [name, on] : {std::pair{"convex", cl.convex}, {"wheel", cl.wheel}, {"gdc", cl.gdc}, {"spinal", cl.spinal}})
    if (on) s += (s.empty() ? "" : " ") + std::string(name);
  return s.empty() ? "none" : s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Flip graphs of plane spanning paths"};
  app.require_subcommand(1);

  Source src;
  std::string out;
  std::string filter_text = "all";
  std::string constraint_text = "all";
  bool want_diameter = false;

  auto* classify_cmd = app.add_subcommand("classify", "class labels and certificates");
  src.add_to(classify_cmd);

  auto* enumerate_cmd = app.add_subcommand("enumerate", "list plane spanning paths");
  src.add_to(enumerate_cmd);
  enumerate_cmd->add_option("--constraint", constraint_text, "all | start=P | edge=P,Q | prefix=A,B,...");
  bool count_only = false;
  enumerate_cmd->add_flag("--count", count_only, "print only the number of paths");
  enumerate_cmd->add_option("--out", out, "output file");

  auto* flipgraph_cmd = app.add_subcommand("flipgraph", "flip graph statistics");
  src.add_to(flipgraph_cmd);
  flipgraph_cmd->add_option("--filter", filter_text, "all | type1 | type12");
  flipgraph_cmd->add_option("--constraint", constraint_text, "all | start=P | edge=P,Q | prefix=A,B,...");
  flipgraph_cmd->add_flag("--diameter", want_diameter, "compute the exact diameter");

  std::string from_text, to_text, method = "auto";
  auto* connect_cmd = app.add_subcommand("connect", "flip sequence between two paths");
  src.add_to(connect_cmd);
  connect_cmd->add_option("--from", from_text, "first path, e.g. \"0 1 2 3\"")->required();
  connect_cmd->add_option("--to", to_text, "second path")->required();
  connect_cmd->add_option("--method", method, "auto | gdc | wheel | any | shortest")
      ->check(CLI::IsMember({"auto", "gdc", "wheel", "any", "shortest"}));
  connect_cmd->add_option("--out", out, "output file");

  std::string path_text;
  auto* canon_cmd = app.add_subcommand("canonicalize", "canonicalization trace as JSON lines");
  src.add_to(canon_cmd);
  canon_cmd->add_option("--path", path_text, "start path")->required();
  canon_cmd->add_option("--method", method, "auto | gdc | wheel")->check(CLI::IsMember({"auto", "gdc", "wheel"}));
  canon_cmd->add_option("--out", out, "output file");

  VerifyOptions vopt;
  std::vector<std::string> filter_list;
  std::vector<std::string> points_files;
  std::string ordertypes;
  int ot_n = 0;
  int random_n = 0, random_count = 0;
  Coord bound = 1000;
  bool no_timing = false, quiet = false;
  auto* verify_cmd = app.add_subcommand("verify", "batch verification, one JSON line per record");
  auto* inputs = verify_cmd->add_option_group("input");
  inputs->add_option("--ordertypes", ordertypes, "order-type database file (needs --n)");
  inputs->add_option("--points", points_files, "points text files, one record each");
  inputs->add_option("--random", random_count, "number of random sets (needs --size)");
  inputs->require_option(1);
  verify_cmd->add_option("--n", ot_n, "points per order-type record");
  verify_cmd->add_option("--size", random_n, "points per random set");
  verify_cmd->add_option("--bound", bound, "coordinate bound for random sets");
  verify_cmd->add_option("--filter", filter_list, "filters to check (default all and type1)");
  verify_cmd->add_flag("--diameter", vopt.force_diameter, "compute diameters above n = 8 too");
  verify_cmd->add_option("--sample", vopt.canon_sample, "canonicalizer audits per record (0 = all paths)");
  verify_cmd->add_option("--seed", vopt.seed, "seed for sampling and random sets");
  verify_cmd->add_option("--jobs", vopt.jobs, "worker threads")->check(CLI::PositiveNumber);
  verify_cmd->add_flag("--strict", vopt.strict, "stop at the first non-ok record");
  verify_cmd->add_flag("--resume", vopt.resume, "skip ids already in --out");
  verify_cmd->add_flag("--big", vopt.big, "allow records with n >= 9");
  verify_cmd->add_flag("--no-timing", no_timing, "write ms = 0 for byte-identical reruns");
  verify_cmd->add_flag("--quiet", quiet, "no per-record progress on stderr");
  verify_cmd->add_option("--out", out, "JSON lines results file");

  std::string kind = "random";
  int size = 8, k = 4;
  std::uint64_t seed = 1;
  auto* gen_cmd = app.add_subcommand("gen", "write a point set as text");
  gen_cmd->add_option("kind", kind, "random | double-circle | double-chain")
      ->check(CLI::IsMember({"random", "double-circle", "double-chain"}));
  gen_cmd->add_option("--size", size, "points (random)");
  gen_cmd->add_option("--k", k, "points per chain or hull points (structured)");
  gen_cmd->add_option("--seed", seed, "random seed");
  gen_cmd->add_option("--bound", bound, "coordinate bound (random)");
  gen_cmd->add_option("--out", out, "output file");

  int max_n = 6;
  std::string dir = ".";
  auto* got_cmd = app.add_subcommand("gen-ordertypes", "generate order-type files ordertypes_<n>.bin");
  got_cmd->add_option("--max-n", max_n, "largest n (at most 8)")->check(CLI::Range(3, 8));
  got_cmd->add_option("--dir", dir, "output directory");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*classify_cmd) {
      const PointSet s = src.load();
      const ClassLabels cl = classify(s);
      std::cout << "n " << s.size() << "\nhull " << Hull(s).size() << "\nlabels " << label_line(cl) << '\n'
                << certificate_text(cl);
      return kOk;
    }
    if (*enumerate_cmd) {
      const PointSet s = src.load();
      const PathFamily fam = enumerate_paths(s, parse_constraint(constraint_text));
      std::ofstream f;
      std::ostream& os = output(out, f);
      if (count_only) {
        os << fam.size() << '\n';
      } else {
        for (int i = 0; i < fam.size(); ++i) os << format_path(fam.path(i)) << '\n';
      }
      return kOk;
    }
    if (*flipgraph_cmd) {
      const PointSet s = src.load();
      const CrossTable t(s);
      const PathFamily fam = enumerate_paths(t, parse_constraint(constraint_text));
      const FlipGraph g = build_flip_graph(t, fam, parse_filter(filter_text));
      const auto comps = components(g);
      int isolated = 0;
      for (int v = 0; v < g.size(); ++v) isolated += g.degree(v) == 0;
      std::cout << "constraint " << to_string(fam.constraint) << "\nfilter " << to_string(g.filter) << "\npaths "
                << g.size() << "\nedges " << g.edge_count() << "\ncomponents " << comps.size() << "\nisolated "
                << isolated << '\n';
      if (want_diameter) {
        const auto d = diameter(g);
        std::cout << "diameter " << (d ? std::to_string(*d) : "disconnected") << '\n';
      }
      return comps.size() <= 1 ? kOk : kViolations;
    }
    if (*connect_cmd) {
      const PointSet s = src.load();
      const CrossTable t(s);
      const Order p = checked_path(s, from_text), q = checked_path(s, to_text);
      const ClassLabels cl = classify(s);
      if (method == "auto") method = cl.gdc ? "gdc" : cl.wheel ? "wheel" : "any";
      FlipSequence seq;
      if (method == "gdc") {
        if (!cl.gdc) throw std::invalid_argument("not a generalized double circle");
        seq = gdc_connect(s, *cl.decomposition, p, q);
      } else if (method == "wheel") {
        if (!cl.wheel) throw std::invalid_argument("not a wheel set");
        seq = wheel_connect(s, p, q);
      } else if (method == "any") {
        BfsOracles oracles(s);
        seq = connect_any(s, p, q, oracles.start_oracle()).sequence;
      } else {
        const PathFamily fam = enumerate_paths(t, Constraint::all());
        const auto found = shortest_flip_sequence(t, fam, build_flip_graph(t, fam, FlipFilter::all_types), p, q);
        if (!found) {
          std::cout << "disconnected\n";
          return kViolations;
        }
        seq = *found;
      }
      std::ofstream f;
      std::ostream& os = output(out, f);
      os << "method " << method << '\n';
      print_sequence(os, seq);
      return kOk;
    }
    if (*canon_cmd) {
      const PointSet s = src.load();
      const Order p = checked_path(s, path_text);
      const ClassLabels cl = classify(s);
      if (method == "auto") method = cl.gdc ? "gdc" : "wheel";
      CanonResult r;
      if (method == "gdc") {
        if (!cl.gdc) throw std::invalid_argument("not a generalized double circle");
        r = gdc_canonicalize(s, *cl.decomposition, p);
      } else {
        if (!cl.wheel) throw std::invalid_argument("not a wheel set");
        r = wheel_canonicalize(s, p);
      }
      std::ofstream f;
      std::ostream& os = output(out, f);
      os << r.trace.to_jsonl();
      std::cerr << "canonical " << format_path(r.sequence.end()) << " after " << r.sequence.size() << " flips\n";
      return kOk;
    }
    if (*verify_cmd) {
      std::vector<Job> jobs;
      if (!ordertypes.empty()) {
        if (ot_n == 0) throw std::invalid_argument("--ordertypes needs --n");
        for (auto& r : read_order_type_file(ordertypes, ot_n)) jobs.push_back({r.index, std::move(r.points)});
      } else if (!points_files.empty()) {
        for (std::size_t i = 0; i < points_files.size(); ++i) jobs.push_back({i, read_points_text(points_files[i])});
      } else {
        if (random_n < 3) throw std::invalid_argument("--random needs --size >= 3");
        std::mt19937_64 rng(vopt.seed);
        for (int i = 0; i < random_count; ++i)
          jobs.push_back({static_cast<std::size_t>(i), generate_random(random_n, rng(), bound)});
      }
      if (!filter_list.empty()) {
        vopt.filters.clear();
        for (const auto& f : filter_list) vopt.filters.push_back(parse_filter(f));
      }
      vopt.timing = !no_timing;
      const bool to_stdout = out.empty() || out == "-";
      const RunSummary sum = run_verification(jobs, vopt, to_stdout ? "" : out, [&](const VerificationResult& r) {
        if (to_stdout) std::cout << r.to_json(vopt.timing) << '\n';
        if (!quiet && !to_stdout)
          std::cerr << "record " << r.id << " " << r.status << (r.message.empty() ? "" : ": " + r.message) << '\n';
      });
      std::cerr << "processed " << sum.processed << ", skipped " << sum.skipped << ", not ok " << sum.violations
                << (sum.halted ? " (halted)" : "") << '\n';
      return sum.violations ? kViolations : kOk;
    }
    if (*gen_cmd) {
      PointSet s;
      if (kind == "random")
        s = generate_random(size, seed, bound);
      else if (kind == "double-circle")
        s = double_circle(k);
      else
        s = double_chain(k);
      std::ofstream f;
      output(out, f) << format_points_text(s);
      return kOk;
    }
    if (*got_cmd) {
      const auto corpus = load_or_generate_corpus(dir, max_n);
      for (std::size_t i = 0; i < corpus.size(); ++i)
        std::cout << "n " << i + 3 << ": " << corpus[i].size() << " order types\n";
      return kOk;
    }
  } catch (const TheoremViolation& e) {
    std::cerr << "violation: " << e.what() << '\n';
    return kViolations;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kOperational;
  }
  return kOk;
}
