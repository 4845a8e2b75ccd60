#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "nmmo/engine.hpp"

namespace nmmo::tools {

inline constexpr const char* kVersion = "0.1.0";

struct CampaignSpec {
  RunConfig config;
  std::vector<std::uint64_t> seeds;
  std::filesystem::path out_dir = "results";
  int jobs = 1;
  /// When false the wall_seconds column is written as 0 so reruns are
  /// byte-identical.
  bool record_time = true;
};

/// Malformed command line; what() holds the message for the user.
class UsageError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// --help was given; what() holds the help text.
class HelpRequested : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

CampaignSpec parse_args(int argc, const char* const* argv);

enum ExitCode : int { kSuccess = 0, kUsage = 1, kAllRunsFailed = 2 };

/// Runs every seed (up to spec.jobs at once) and writes, under out_dir:
///   <stem>_seed<S>.csv   trace per successful seed
///   <stem>_summary.csv   per-iteration median / quartiles / mean time
///   <stem>_meta.txt      resolved configuration and timestamps
///   <stem>_errors.txt    failed seeds, only when there are any
/// Returns kAllRunsFailed when no seed succeeds.
int run_campaign(const CampaignSpec& spec, std::ostream& log);

std::string file_stem(const CampaignSpec& spec);

/// seed,iteration,hypervolume,wall_seconds,x1..xd (native),y1..yK (native,
/// minimized).
std::string format_trace(const RunRecord& record, std::uint64_t seed, const Problem& problem, bool record_time);

struct SummaryRow {
  int iteration = 0;
  std::size_t runs = 0;
  double hv_median = 0.0;
  double hv_q25 = 0.0;
  double hv_q75 = 0.0;
  double wall_seconds_mean = 0.0;
};

/// Linear-interpolation quantile of an unsorted sample, q in [0, 1].
double quantile(std::vector<double> values, double q);

/// hv[i][t] and wall[i][t] for run i, iteration t+1; all runs same length.
std::vector<SummaryRow> summarize(const std::vector<std::vector<double>>& hv,
                                  const std::vector<std::vector<double>>& wall);

std::string format_summary(const std::vector<SummaryRow>& rows);

/// Shortest decimal text that parses back to exactly v.
std::string format_double(double v);

}  // namespace nmmo::tools
