#pragma once

#include "yv/report.hpp"

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace yv::cli {

enum class ModeSel { exact, numeric, both };
enum class Format { json, csv };

std::string to_string(ModeSel m);
std::string to_string(Format f);

struct RunConfig {
  long n_max = 12;
  long precision_bits = 256;
  long tolerance_exponent = 30;  // numeric pass threshold 10^-t
  ModeSel mode = ModeSel::both;
  std::filesystem::path output_dir = ".";
  Format report_format = Format::json;
  std::uint64_t seed = 1;
  unsigned jobs = 0;  // 0: hardware concurrency
};

/// Throws std::invalid_argument on n_max < 0, precision_bits < 53 or
/// tolerance_exponent < 6.
void validate(const RunConfig& c);

/// --out if given, else $YV_OUT_DIR, else the current directory.
std::filesystem::path resolve_output_dir(const std::optional<std::string>& flag);

const std::vector<std::string>& all_suites();
/// Accepts "all" or a comma-separated list; throws std::invalid_argument on
/// unknown names. Order follows all_suites().
std::vector<std::string> parse_suites(const std::string& list);

/// Sample range used by the remark suite: fits need n well past the
/// default n_max.
inline constexpr long kRemarkSamples = 51;

struct VerifyResult {
  std::vector<VerificationReport> reports;
  Status overall = Status::pass;
};

VerifyResult run_verify(const RunConfig& c, const std::vector<std::string>& suites);

/// Runs `count` tasks on a bounded pool; task(i) writes only slot i.
void parallel_for(std::size_t count, unsigned jobs, const std::function<void(std::size_t)>& task);

// Subcommands. Each returns the process exit status.
int cmd_gen(const RunConfig& c, std::ostream& out);
int cmd_verify(const RunConfig& c, const std::vector<std::string>& suites, std::ostream& out);
int cmd_roots(const RunConfig& c, std::ostream& out);
int cmd_sums(const RunConfig& c, const std::vector<long>& m_list, std::ostream& out);

/// Full command line entry point.
int run(int argc, char** argv);

}  // namespace yv::cli
