#include "yv/cli.hpp"

#include <doctest.h>
#include <nlohmann/json.hpp>

#include <atomic>
#include <cstdlib>
#include <fstream>
#include <sstream>

using namespace yv;
using namespace yv::cli;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name) {
  fs::path p = fs::temp_directory_path() / ("yv_cli_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

nlohmann::json without_timing(nlohmann::json doc) {
  for (auto& r : doc["reports"]) r.erase("elapsed_ms");
  return doc;
}

RunConfig small_config(const fs::path& out, long n_max) {
  RunConfig c;
  c.n_max = n_max;
  c.output_dir = out;
  c.jobs = 2;
  return c;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("config validation") {
  RunConfig c;
  CHECK_NOTHROW(validate(c));
  CHECK(c.n_max == 12);
  CHECK(c.precision_bits == 256);
  CHECK(c.tolerance_exponent == 30);
  CHECK(c.mode == ModeSel::both);
  c.n_max = -1;
  CHECK_THROWS_AS(validate(c), std::invalid_argument);
  c = RunConfig{};
  c.precision_bits = 52;
  CHECK_THROWS_AS(validate(c), std::invalid_argument);
  c = RunConfig{};
  c.tolerance_exponent = 5;
  CHECK_THROWS_AS(validate(c), std::invalid_argument);
}

TEST_CASE("output directory fallback") {
  ::setenv("YV_OUT_DIR", "/tmp/from_env", 1);
  CHECK(resolve_output_dir(std::nullopt) == fs::path("/tmp/from_env"));
  CHECK(resolve_output_dir(std::string("flag")) == fs::path("flag"));
  ::unsetenv("YV_OUT_DIR");
  CHECK(resolve_output_dir(std::nullopt) == fs::path("."));
}

TEST_CASE("suite parsing") {
  CHECK(parse_suites("all") == all_suites());
  CHECK(parse_suites("") == all_suites());
  CHECK(parse_suites("sums, structure") == std::vector<std::string>{"structure", "sums"});
  CHECK_THROWS_AS(parse_suites("structure,bogus"), std::invalid_argument);
}

TEST_CASE("bounded pool visits each index once") {
  for (unsigned jobs : {0u, 1u, 3u, 8u}) {
    std::vector<std::atomic<int>> hits(50);
    parallel_for(hits.size(), jobs, [&](std::size_t i) { hits[i]++; });
    for (auto& h : hits) CHECK(h.load() == 1);
  }
  parallel_for(0, 4, [](std::size_t) { FAIL("no tasks expected"); });
}

TEST_CASE("verify, all suites, small n") {
  auto out = scratch_dir("verify");
  std::ostringstream log;
  CHECK(cmd_verify(small_config(out, 5), all_suites(), log) == 0);
  auto doc = nlohmann::json::parse(slurp(out / "verify_report.json"));
  CHECK(doc["overall"] == "pass");
  CHECK(doc["config"]["n_max"] == 5);
  bool saw_remark = false;
  for (const auto& r : doc["reports"]) {
    CHECK(r["status"] != "fail");
    saw_remark = saw_remark || r["suite"] == "remark";
  }
  CHECK(saw_remark);
  CHECK(log.str().find("overall: pass") != std::string::npos);
}

TEST_CASE("report payloads are reproducible") {
  auto a = scratch_dir("repro_a"), b = scratch_dir("repro_b");
  std::ostringstream log;
  auto ca = small_config(a, 6), cb = small_config(b, 6);
  cb.jobs = 1;
  std::vector<std::string> suites{"relations", "roots", "series"};
  CHECK(cmd_verify(ca, suites, log) == 0);
  CHECK(cmd_verify(cb, suites, log) == 0);
  auto ja = without_timing(nlohmann::json::parse(slurp(a / "verify_report.json")));
  auto jb = without_timing(nlohmann::json::parse(slurp(b / "verify_report.json")));
  CHECK(ja.dump() == jb.dump());
}

TEST_CASE("skips and modes") {
  auto out = scratch_dir("skip");
  auto res = run_verify(small_config(out, 0), {"wronskian"});
  REQUIRE(res.reports.size() == 1);
  CHECK(res.reports[0].status == Status::skipped);
  CHECK(res.overall == Status::skipped);

  auto c = small_config(out, 4);
  c.mode = ModeSel::exact;
  auto exact_only = run_verify(c, {"kudryashov"});
  CHECK(exact_only.reports.size() == 4);
  c.mode = ModeSel::both;
  auto both = run_verify(c, {"relations"});
  CHECK(both.reports.size() == 12);  // exact, numeric and agreement per n
  CHECK(both.overall == Status::pass);
}

TEST_CASE("csv report") {
  auto out = scratch_dir("csv");
  auto c = small_config(out, 3);
  c.report_format = Format::csv;
  std::ostringstream log;
  CHECK(cmd_verify(c, {"divisibility"}, log) == 0);
  auto text = slurp(out / "verify_report.csv");
  CHECK(text.rfind("suite,n,status,note,witness,elapsed_ms\n", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 5);
}

TEST_CASE("gen writes one file per n") {
  auto out = scratch_dir("gen");
  std::ostringstream log;
  CHECK(cmd_gen(small_config(out, 8), log) == 0);
  for (long n = 0; n <= 8; ++n) CHECK(fs::exists(out / ("yv_" + std::to_string(n) + ".json")));
  auto j = nlohmann::json::parse(slurp(out / "yv_8.json"));
  CHECK(j.dump().find("\"-991048439693312000000\"") != std::string::npos);
  CHECK(log.str().find("-991048439693312000000") != std::string::npos);

  auto single = scratch_dir("gen0");
  CHECK(cmd_gen(small_config(single, 0), log) == 0);
  CHECK(std::distance(fs::directory_iterator(single), fs::directory_iterator{}) == 1);
}

TEST_CASE("gen at n_max = 30 reports p_30") {
  auto out = scratch_dir("gen30");
  std::ostringstream log;
  CHECK(cmd_gen(small_config(out, 30), log) == 0);
  std::istringstream lines(log.str());
  std::string line, last;
  while (std::getline(lines, line)) last = line;
  std::istringstream fields(last);
  long n = 0, deg = 0, p = 0;
  fields >> n >> deg >> p;
  CHECK(n == 30);
  CHECK(deg == 465);
  CHECK(p == 310);
}

TEST_CASE("roots writes CSV and SVG") {
  auto out = scratch_dir("roots");
  std::ostringstream log;
  CHECK(cmd_roots(small_config(out, 7), log) == 0);
  auto csv1 = slurp(out / "roots_1.csv");
  CHECK(std::count(csv1.begin(), csv1.end(), '\n') == 2);
  auto csv7 = slurp(out / "roots_7.csv");
  CHECK(std::count(csv7.begin(), csv7.end(), '\n') == 29);
  CHECK(fs::exists(out / "roots_4.svg"));
  CHECK(log.str().find("n = 4: 10 roots") != std::string::npos);
}

TEST_CASE("sums table") {
  auto out = scratch_dir("sums");
  std::ostringstream log;
  CHECK(cmd_sums(small_config(out, 5), {3, 4, 9}, log) == 0);
  auto rows = nlohmann::json::parse(slurp(out / "sums.json"));
  CHECK(rows.size() == 18);
  for (const auto& r : rows) {
    if (r["n"] == 2 && r["m"] == 3) CHECK(r["sum"] == "-3/4");
    if (r["n"] == 5 && r["m"] == 4) CHECK(r["sum"] == "0/1");
    if (r["n"] == 1 && r["m"] == 9) CHECK(r["sum"] == "0/1");
    if (r["m"] == 3) CHECK(r["matches"] == true);
  }
  CHECK_THROWS(cmd_sums(small_config(out, 2), {}, log));
}

TEST_CASE("command line entry point") {
  auto out = scratch_dir("argv");
  std::string o = out.string();
  std::vector<std::string> args{"yv", "verify", "--n-max", "3", "--suites", "structure,sums", "--out", o};
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  CHECK(run(static_cast<int>(argv.size()), argv.data()) == 0);
  CHECK(fs::exists(out / "verify_report.json"));

  std::vector<std::string> bad{"yv", "verify", "--suites", "nope", "--out", o};
  std::vector<char*> bargv;
  for (auto& a : bad) bargv.push_back(a.data());
  CHECK(run(static_cast<int>(bargv.size()), bargv.data()) == 2);
}

}
