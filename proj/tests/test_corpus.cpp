#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "fixtures.hpp"
#include "flippath/corpus.hpp"
#include "flippath/order_types.hpp"
#include "flippath/verify.hpp"

using namespace flippath;

namespace {

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("flippath_test_" + name)).string();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("record sizes") {
  CHECK(record_size(6) == 12);
  CHECK(record_size(8) == 16);
  CHECK(record_size(9) == 36);
  CHECK(record_size(10) == 40);
  CHECK_THROWS_AS(record_size(11), CorpusError);
}

TEST_CASE("binary round trip") {
  const auto cats = generate_order_types(6);
  const std::vector<PointSet>& sets = cats[3].sets;
  const auto bytes = encode_order_types(sets, 6);
  CHECK(bytes.size() == 12 * sets.size());
  const auto recs = decode_order_types(bytes, 6);
  REQUIRE(recs.size() == 16);
  for (std::size_t i = 0; i < recs.size(); ++i) {
    CHECK(recs[i].index == i);
    CHECK(order_type_signature(recs[i].points) == order_type_signature(sets[i]));
  }
  std::vector<PointSet> decoded;
  for (const auto& r : recs) decoded.push_back(r.points);
  CHECK(encode_order_types(decoded, 6) == bytes);

  const std::string path = temp_path("ot6.bin");
  write_order_type_file(path, sets, 6);
  CHECK(read_order_type_file(path, 6).size() == 16);
  std::filesystem::remove(path);

  const std::vector<std::uint8_t> truncated(bytes.begin(), bytes.end() - 1);
  CHECK_THROWS_AS(decode_order_types(truncated, 6), CorpusError);
}

TEST_CASE("sixteen-bit records are little endian") {
  std::vector<Point> pts;
  for (int i = 0; i < 9; ++i) pts.push_back({300 + i, 300 + static_cast<Coord>(i) * i});
  const PointSet s(pts);
  const auto bytes = encode_order_types({s}, 9);
  REQUIRE(bytes.size() == 36);
  CHECK(bytes[0] == (300 & 0xff));
  CHECK(bytes[1] == (300 >> 8));
  const auto recs = decode_order_types(bytes, 9);
  CHECK(recs[0].points[8] == Point{308, 364});
}

TEST_CASE("degenerate records are named") {
  // Second record has three points on the x axis.
  const std::vector<std::uint8_t> bytes{0, 0, 4, 0, 0, 4, 0, 0, 1, 0, 2, 0};
  try {
    decode_order_types(bytes, 3);
    FAIL("expected an error");
  } catch (const CorpusError& e) {
    CHECK(std::string(e.what()).find("record 1") != std::string::npos);
  }
}

TEST_CASE("points text") {
  const PointSet w = parse_points_text("# a wheel\n0 0\n4 0\n4 4  # corner\n\n0 4\n2 1\n");
  CHECK(w.points().size() == 5);
  CHECK(w[4] == Point{2, 1});
  CHECK(parse_points_text(format_points_text(w))[2] == Point{4, 4});
  try {
    parse_points_text("0 0\n1 2 3\n");
    FAIL("expected an error");
  } catch (const CorpusError& e) {
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_points_text("0 0\n1 x\n"), CorpusError);
  CHECK_THROWS_AS(parse_points_text("0 0\n1 1\n2 2\n"), CorpusError);
  CHECK_THROWS_AS(read_points_text(temp_path("missing.txt")), CorpusError);
}

TEST_CASE("random sets") {
  const PointSet a = generate_random(5, 1, 100);
  const PointSet b = generate_random(5, 1, 100);
  CHECK(std::vector<Point>(a.points().begin(), a.points().end()) ==
        std::vector<Point>(b.points().begin(), b.points().end()));
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const PointSet s = generate_random(10, seed, 64);
    CHECK(is_general_position(s.points()));
    for (const Point& p : s.points()) CHECK((p.x >= 0 && p.x < 64 && p.y >= 0 && p.y < 64));
  }
  CHECK(orient(generate_random(3, 7, 10)[0], generate_random(3, 7, 10)[1], generate_random(3, 7, 10)[2]) != 0);
  CHECK_THROWS_AS(generate_random(10, 1, 3), CorpusError);
  CHECK_THROWS_AS(generate_random(2, 1, 100), CorpusError);
}

TEST_CASE("structured instances are generalized double circles") {
  for (int k = 3; k <= 8; ++k) {
    const PointSet s = double_circle(k);
    const ClassLabels cl = classify(s);
    CHECK(cl.gdc);
    CHECK(Hull(s).size() == k);
  }
  for (int k = 2; k <= 8; ++k) {
    const PointSet s = double_chain(k);
    const ClassLabels cl = classify(s);
    CHECK(cl.gdc);
    CHECK(Hull(s).size() == 4);
  }
}

TEST_CASE("sampled paths") {
  const PointSet s = double_circle(6);
  const CrossTable t(s);
  const Order start = sorted_path(s);
  CHECK(is_plane_path(t, start));
  std::mt19937_64 rng(3);
  for (int i = 0; i < 20; ++i) CHECK(is_plane_path(t, random_walk(t, start, 30, rng)));
}

TEST_CASE("verify one record") {
  const VerificationResult r = verify_record({7, fixtures::w5()}, {});
  CHECK(r.status == "ok");
  CHECK(r.paths == 32);
  REQUIRE(r.connected.size() == 2);
  CHECK(r.connected[0].second);
  CHECK(r.connected[1].second);
  REQUIRE(r.diameter);
  CHECK(*r.diameter <= 6);
  CHECK(r.canon_max_len <= 4);
  const std::string j = r.to_json(false);
  CHECK(j.find("\"id\":7") != std::string::npos);
  CHECK(j.find("\"connected\":{\"all\":true,\"type1\":true}") != std::string::npos);
  CHECK(j.find("\"ms\":0.0") != std::string::npos);
}

TEST_CASE("runner: ordering, resume and worker count") {
  std::vector<Job> jobs;
  const auto cats = generate_order_types(6);
  for (std::size_t i = 0; i < cats[3].sets.size(); ++i) jobs.push_back({i, cats[3].sets[i]});
  VerifyOptions opt;
  opt.timing = false;
  const std::string one = temp_path("one.jsonl"), many = temp_path("many.jsonl");
  const RunSummary a = run_verification(jobs, opt, one);
  CHECK(a.processed == 16);
  CHECK(a.violations == 0);
  opt.jobs = 3;
  run_verification(jobs, opt, many);
  CHECK(slurp(one) == slurp(many));
  CHECK(completed_ids(one).size() == 16);

  // Drop the last five lines, leave half a line, then resume.
  std::istringstream lines(slurp(one));
  std::string line, kept;
  for (int i = 0; i < 11 && std::getline(lines, line); ++i) kept += line + "\n";
  {
    std::ofstream out(many, std::ios::trunc);
    out << kept << "{\"id\":11,\"n\"";
  }
  CHECK(completed_ids(many).size() == 11);
  opt.resume = true;
  const RunSummary b = run_verification(jobs, opt, many);
  CHECK(b.skipped == 11);
  CHECK(b.processed == 5);
  CHECK(completed_ids(many).size() == 16);
  std::filesystem::remove(one);
  std::filesystem::remove(many);

  const std::vector<Job> big{{0, generate_random(9, 1, 100)}};
  CHECK_THROWS_AS(run_verification(big, {}, ""), CorpusError);
}
