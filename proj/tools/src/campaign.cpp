#include "nmmo_tools/campaign.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

namespace nmmo::tools {
namespace {

std::string utc_now() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << text;
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

std::string meta_text(const CampaignSpec& spec, const std::string& started, const std::string& finished,
                      std::size_t succeeded) {
  const RunConfig& c = spec.config;
  std::ostringstream os;
  os << "toolkit_version=" << kVersion << '\n'
     << "problem=" << c.problem << '\n'
     << "method=" << to_string(c.method) << '\n'
     << "horizon=" << c.horizon_cap << '\n'
     << "iterations=" << c.iterations << '\n'
     << "init_points=" << c.init_points << '\n'
     << "seeds=";
  for (std::size_t i = 0; i < spec.seeds.size(); ++i) os << (i ? " " : "") << spec.seeds[i];
  os << '\n'
     << "mc_samples=" << c.mc_samples << '\n'
     << "grid_size=" << c.grid_size << '\n'
     << "inner_restarts=" << c.inner_restarts << '\n'
     << "gp_restarts=" << c.gp_restarts << '\n'
     << "opt_restarts=" << c.pointwise.n_restarts << '\n'
     << "raw_candidates=" << c.pointwise.n_raw_candidates << '\n'
     << "batch_raw_candidates=" << c.batch.n_raw_candidates << '\n'
     << "max_evals_per_restart=" << c.pointwise.max_evals_per_restart << '\n'
     << "jobs=" << spec.jobs << '\n'
     << "timing=" << (spec.record_time ? "wall" : "off") << '\n'
     << "runs_succeeded=" << succeeded << '\n'
     << "started_at=" << started << '\n'
     << "finished_at=" << finished << '\n';
  return os.str();
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

CampaignSpec parse_args(int argc, const char* const* argv) {
  CLI::App app{"Multi-objective Bayesian optimization campaigns (EHVI, NMMO-Nested, NMMO-Joint, BINOM)", "nmmo"};
  app.set_config("--config", "", "key=value configuration file; command-line flags take precedence");

  CampaignSpec spec;
  RunConfig& c = spec.config;
  std::string method = "ehvi";
  std::string timing = "wall";
  int n_seeds = 15;
  std::uint64_t first_seed = 0;
  std::size_t opt_restarts = c.pointwise.n_restarts;
  std::size_t raw = c.pointwise.n_raw_candidates;
  std::size_t batch_raw = c.batch.n_raw_candidates;
  std::size_t evals = c.pointwise.max_evals_per_restart;
  std::string out = spec.out_dir.string();

  app.add_option("--problem", c.problem, "Problem name")->capture_default_str();
  app.add_option("--method", method, "ehvi | nmmo_nested | nmmo_joint | binom")->capture_default_str();
  app.add_option("--horizon", c.horizon_cap, "Horizon cap H")->check(CLI::PositiveNumber)->capture_default_str();
  app.add_option("--iterations", c.iterations, "BO iterations T after the initial design")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--init-points", c.init_points, "Initial Sobol design size N0")
      ->check(CLI::Range(2, 1 << 20))
      ->capture_default_str();
  app.add_option("--seeds", n_seeds, "Number of seeds, run as first-seed .. first-seed+N-1")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--first-seed", first_seed, "First seed")->capture_default_str();
  app.add_option("--mc-samples", c.mc_samples, "Monte-Carlo samples per acquisition")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--grid-size", c.grid_size, "Lookahead grid size M (nested)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--inner-restarts", c.inner_restarts, "Greedy inner passes (nested)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--gp-restarts", c.gp_restarts, "Hyperparameter fit starts per model")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--opt-restarts", opt_restarts, "Local searches per acquisition optimization")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--raw-candidates", raw, "Sobol candidates scored before local search")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--batch-raw-candidates", batch_raw, "Same, for joint and binom searches")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--max-evals", evals, "Evaluations per local search (times H for joint and binom)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--out", out, "Output directory")->capture_default_str();
  app.add_option("--jobs", spec.jobs, "Seeds run concurrently")->check(CLI::PositiveNumber)->capture_default_str();
  app.add_option("--timing", timing, "wall: record per-iteration seconds; off: write 0")
      ->check(CLI::IsMember({"wall", "off"}))
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    throw HelpRequested(app.help());
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  try {
    c.method = parse_method(method);
    (void)make_problem(c.problem);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  c.pointwise.n_restarts = c.batch.n_restarts = opt_restarts;
  c.pointwise.max_evals_per_restart = c.batch.max_evals_per_restart = evals;
  c.pointwise.n_raw_candidates = raw;
  c.batch.n_raw_candidates = batch_raw;
  try {
    c.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }

  spec.seeds.resize(static_cast<std::size_t>(n_seeds));
  for (std::size_t i = 0; i < spec.seeds.size(); ++i) spec.seeds[i] = first_seed + i;
  spec.out_dir = out;
  spec.record_time = timing == "wall";
  return spec;
}

std::string file_stem(const CampaignSpec& spec) {
  return spec.config.problem + "_" + to_string(spec.config.method) + "_h" + std::to_string(spec.config.horizon_cap);
}

std::string format_trace(const RunRecord& record, std::uint64_t seed, const Problem& problem, bool record_time) {
  std::string out = "seed,iteration,hypervolume,wall_seconds";
  for (int i = 1; i <= problem.d; ++i) out += ",x" + std::to_string(i);
  for (int k = 1; k <= problem.k; ++k) out += ",y" + std::to_string(k);
  out += '\n';
  const std::string seed_text = std::to_string(seed);
  for (const TraceRow& row : record.rows) {
    out += seed_text;
    out += ',' + std::to_string(row.iteration);
    out += ',' + format_double(row.hypervolume);
    out += ',' + format_double(record_time ? row.wall_seconds : 0.0);
    const Eigen::VectorXd x = to_native(problem, row.x_unit);
    for (Eigen::Index i = 0; i < x.size(); ++i) out += ',' + format_double(x[i]);
    for (Eigen::Index k = 0; k < row.y.size(); ++k) out += ',' + format_double(-row.y[k] + 0.0);
    out += '\n';
  }
  return out;
}

double quantile(std::vector<double> values, double q) {
  if (values.empty()) throw std::invalid_argument("quantile of an empty sample");
  std::sort(values.begin(), values.end());
  const double pos = q * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, values.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return values[lo] + frac * (values[hi] - values[lo]);
}

std::vector<SummaryRow> summarize(const std::vector<std::vector<double>>& hv,
                                  const std::vector<std::vector<double>>& wall) {
  std::vector<SummaryRow> rows;
  if (hv.empty()) return rows;
  const std::size_t length = hv.front().size();
  for (std::size_t t = 0; t < length; ++t) {
    std::vector<double> column;
    double wall_sum = 0.0;
    for (std::size_t r = 0; r < hv.size(); ++r) {
      column.push_back(hv[r].at(t));
      wall_sum += wall[r].at(t);
    }
    rows.push_back({static_cast<int>(t + 1), column.size(), quantile(column, 0.5), quantile(column, 0.25),
                    quantile(column, 0.75), wall_sum / static_cast<double>(column.size())});
  }
  return rows;
}

std::string format_summary(const std::vector<SummaryRow>& rows) {
  std::string out = "iteration,runs,hv_median,hv_q25,hv_q75,wall_seconds_mean\n";
  for (const auto& r : rows) {
    out += std::to_string(r.iteration) + ',' + std::to_string(r.runs) + ',' + format_double(r.hv_median) + ',' +
           format_double(r.hv_q25) + ',' + format_double(r.hv_q75) + ',' + format_double(r.wall_seconds_mean) + '\n';
  }
  return out;
}

int run_campaign(const CampaignSpec& spec, std::ostream& log) {
  std::error_code ec;
  std::filesystem::create_directories(spec.out_dir, ec);
  if (ec) {
    log << "error: cannot create " << spec.out_dir << ": " << ec.message() << '\n';
    return kUsage;
  }
  const Problem problem = make_problem(spec.config.problem);
  const std::string stem = file_stem(spec);
  const std::string started = utc_now();

  const std::size_t n = spec.seeds.size();
  std::vector<std::optional<RunRecord>> records(n);
  std::vector<std::string> errors(n);
  std::atomic<std::size_t> next{0};
  std::mutex log_mutex;

  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      const std::uint64_t seed = spec.seeds[i];
      RunConfig cfg = spec.config;
      cfg.seed = seed;
      try {
        RunRecord rec = run_bo(cfg);
        write_file(spec.out_dir / (stem + "_seed" + std::to_string(seed) + ".csv"),
                   format_trace(rec, seed, problem, spec.record_time));
        records[i] = std::move(rec);
        const std::lock_guard lock(log_mutex);
        log << "seed " << seed << ": final hypervolume " << format_double(records[i]->rows.back().hypervolume)
            << '\n';
      } catch (const std::exception& e) {
        errors[i] = e.what();
        const std::lock_guard lock(log_mutex);
        log << "seed " << seed << ": failed: " << e.what() << '\n';
      }
    }
  };
  const auto threads = static_cast<std::size_t>(std::max(1, spec.jobs));
  std::vector<std::thread> pool;
  for (std::size_t j = 1; j < std::min(threads, n); ++j) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  std::vector<std::vector<double>> hv, wall;
  std::string error_text;
  for (std::size_t i = 0; i < n; ++i) {
    if (records[i]) {
      std::vector<double> h, w;
      for (const auto& row : records[i]->rows) {
        h.push_back(row.hypervolume);
        w.push_back(spec.record_time ? row.wall_seconds : 0.0);
      }
      hv.push_back(std::move(h));
      wall.push_back(std::move(w));
    } else {
      error_text += "seed " + std::to_string(spec.seeds[i]) + ": " + errors[i] + '\n';
    }
  }

  const auto errors_path = spec.out_dir / (stem + "_errors.txt");
  try {
    if (!error_text.empty()) {
      write_file(errors_path, error_text);
    } else {
      std::filesystem::remove(errors_path, ec);
    }
    if (!hv.empty()) write_file(spec.out_dir / (stem + "_summary.csv"), format_summary(summarize(hv, wall)));
    write_file(spec.out_dir / (stem + "_meta.txt"), meta_text(spec, started, utc_now(), hv.size()));
  } catch (const std::exception& e) {
    log << "error: " << e.what() << '\n';
    return kAllRunsFailed;
  }
  return hv.empty() ? kAllRunsFailed : kSuccess;
}

}  // namespace nmmo::tools
