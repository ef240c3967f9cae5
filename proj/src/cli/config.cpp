#include "yv/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <iostream>
#include <sstream>
#include <thread>

namespace yv::cli {

std::string to_string(ModeSel m) {
  switch (m) {
    case ModeSel::exact: return "exact";
    case ModeSel::numeric: return "numeric";
    case ModeSel::both: return "both";
  }
  return "both";
}

std::string to_string(Format f) { return f == Format::json ? "json" : "csv"; }

void validate(const RunConfig& c) {
  if (c.n_max < 0) throw std::invalid_argument("n_max must be >= 0");
  if (c.precision_bits < 53) throw std::invalid_argument("precision_bits must be >= 53");
  if (c.tolerance_exponent < 6) throw std::invalid_argument("tolerance exponent must be >= 6");
}

std::filesystem::path resolve_output_dir(const std::optional<std::string>& flag) {
  if (flag && !flag->empty()) return *flag;
  if (const char* env = std::getenv("YV_OUT_DIR"); env != nullptr && *env != '\0') return env;
  return ".";
}

const std::vector<std::string>& all_suites() {
  static const std::vector<std::string> names = {
      "structure", "divisibility", "valuation", "wronskian", "pii",    "backlund", "relations",
      "corollary", "kudryashov",   "poleseries", "sums",     "series", "remark",   "roots"};
  return names;
}

std::vector<std::string> parse_suites(const std::string& list) {
  if (list.empty() || list == "all") return all_suites();
  std::vector<std::string> wanted;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(std::remove_if(item.begin(), item.end(), ::isspace), item.end());
    if (item.empty()) continue;
    if (item == "all") return all_suites();
    if (std::find(all_suites().begin(), all_suites().end(), item) == all_suites().end()) {
      throw std::invalid_argument("unknown suite: " + item);
    }
    wanted.push_back(item);
  }
  std::vector<std::string> out;
  for (const auto& s : all_suites()) {
    if (std::find(wanted.begin(), wanted.end(), s) != wanted.end()) out.push_back(s);
  }
  return out;
}

void parallel_for(std::size_t count, unsigned jobs, const std::function<void(std::size_t)>& task) {
  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
  jobs = static_cast<unsigned>(std::min<std::size_t>(jobs, count));
  if (jobs <= 1) {
    for (std::size_t i = 0; i < count; ++i) task(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < jobs; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) task(i);
    });
  }
  for (auto& th : pool) th.join();
}

int run(int argc, char** argv) {
  CLI::App app{"Yablonskii-Vorob'ev polynomials: generation, root extraction and identity verification"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::optional<std::string> out_flag;
  std::string mode = "both";
  std::string format = "json";
  std::string suites = "all";
  std::vector<long> m_list = {3, 6, 9};

  auto common = [&](CLI::App* sub) {
    sub->add_option("--n-max", cfg.n_max, "largest n")->check(CLI::NonNegativeNumber);
    sub->add_option("--precision-bits", cfg.precision_bits, "working precision for numeric roots")
        ->check(CLI::Range(53L, 1L << 20));
    sub->add_option("--tolerance", cfg.tolerance_exponent, "numeric pass threshold 10^-t")
        ->check(CLI::Range(6L, 100000L));
    sub->add_option("--mode", mode, "exact, numeric or both")
        ->check(CLI::IsMember({"exact", "numeric", "both"}));
    sub->add_option("--out", out_flag, "output directory (default $YV_OUT_DIR, else .)");
    sub->add_option("--format", format, "report format")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--seed", cfg.seed, "seed for randomized choices");
    sub->add_option("--jobs", cfg.jobs, "worker threads (0 = hardware concurrency)");
  };

  auto* gen = app.add_subcommand("gen", "write yv_<n>.json for n <= n_max");
  common(gen);
  auto* verify = app.add_subcommand("verify", "run verification suites and write a report");
  common(verify);
  verify->add_option("--suites", suites, "comma-separated suites or 'all'");
  auto* roots = app.add_subcommand("roots", "certified roots as CSV and SVG per n");
  common(roots);
  auto* sums = app.add_subcommand("sums", "exact inverse power sums over nonzero roots");
  common(sums);
  sums->add_option("--m", m_list, "powers m (default 3 6 9)")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  cfg.mode = mode == "exact" ? ModeSel::exact : mode == "numeric" ? ModeSel::numeric : ModeSel::both;
  cfg.report_format = format == "csv" ? Format::csv : Format::json;
  cfg.output_dir = resolve_output_dir(out_flag);

  try {
    validate(cfg);
    std::filesystem::create_directories(cfg.output_dir);
    if (*gen) return cmd_gen(cfg, std::cout);
    if (*verify) return cmd_verify(cfg, parse_suites(suites), std::cout);
    if (*roots) return cmd_roots(cfg, std::cout);
    if (*sums) return cmd_sums(cfg, m_list, std::cout);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

}  // namespace yv::cli
