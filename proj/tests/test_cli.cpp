#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "nmmo_tools/campaign.hpp"

namespace nmmo::tools {
namespace {

CampaignSpec parse(std::vector<std::string> args) {
  args.insert(args.begin(), "nmmo");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  return parse_args(static_cast<int>(argv.size()), argv.data());
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::filesystem::path scratch(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("nmmo_cli_test_" + name);
  std::filesystem::remove_all(p);
  return p;
}

std::vector<std::string> tiny_flags(const std::filesystem::path& out) {
  return {"--problem", "four_bar_truss", "--method", "binom", "--horizon", "2", "--iterations", "3",
          "--seeds", "2", "--mc-samples", "16", "--gp-restarts", "2", "--opt-restarts", "2",
          "--raw-candidates", "16", "--batch-raw-candidates", "16", "--max-evals", "10", "--out", out.string()};
}

TEST(ParseArgs, PaperDefaults) {
  const CampaignSpec s = parse({"--problem", "zdt3", "--method", "binom", "--horizon", "4"});
  EXPECT_EQ(s.config.problem, "zdt3");
  EXPECT_EQ(s.config.method, Method::binom);
  EXPECT_EQ(s.config.horizon_cap, 4);
  EXPECT_EQ(s.config.iterations, 65);
  EXPECT_EQ(s.config.init_points, 5);
  EXPECT_EQ(s.seeds.size(), 15u);
  EXPECT_EQ(s.seeds.front(), 0u);
  EXPECT_EQ(s.seeds.back(), 14u);

  const CampaignSpec n = parse({"--method", "nmmo_nested", "--horizon", "2"});
  EXPECT_EQ(n.config.method, Method::nmmo_nested);
  EXPECT_EQ(n.config.horizon_cap, 2);
}

TEST(ParseArgs, UsageErrors) {
  EXPECT_THROW(parse({"--problem", "mof"}), UsageError);
  EXPECT_THROW(parse({"--method", "qparego"}), UsageError);
  EXPECT_THROW(parse({"--horizon", "zero"}), UsageError);
  EXPECT_THROW(parse({"--horizon", "0"}), UsageError);
  EXPECT_THROW(parse({"--init-points", "1"}), UsageError);
  EXPECT_THROW(parse({"--timing", "cpu"}), UsageError);
  EXPECT_THROW(parse({"--bogus"}), UsageError);
  EXPECT_THROW(parse({"--help"}), HelpRequested);
}

TEST(ParseArgs, ConfigFileWithFlagOverride) {
  const auto dir = scratch("config");
  std::filesystem::create_directories(dir);
  const auto cfg = dir / "run.ini";
  std::ofstream(cfg) << "problem=disc_brake\nmethod=nmmo_joint\nhorizon=4\niterations=20\nseeds=3\n";
  const CampaignSpec s = parse({"--config", cfg.string(), "--horizon", "2"});
  EXPECT_EQ(s.config.problem, "disc_brake");
  EXPECT_EQ(s.config.method, Method::nmmo_joint);
  EXPECT_EQ(s.config.horizon_cap, 2);
  EXPECT_EQ(s.config.iterations, 20);
  EXPECT_EQ(s.seeds.size(), 3u);
}

TEST(Quantile, LinearInterpolation) {
  EXPECT_DOUBLE_EQ(quantile({3.0, 1.0, 2.0, 4.0}, 0.5), 2.5);
  EXPECT_DOUBLE_EQ(quantile({3.0, 1.0, 2.0, 4.0}, 0.25), 1.75);
  EXPECT_DOUBLE_EQ(quantile({7.0}, 0.75), 7.0);
  EXPECT_THROW(quantile({}, 0.5), std::invalid_argument);
}

TEST(FormatDouble, RoundTrips) {
  for (double v : {0.1, 1.0 / 3.0, 2967.0243, -1e-300, 6.02e23}) EXPECT_EQ(std::stod(format_double(v)), v);
}

TEST(RunCampaign, WritesTracesSummaryMeta) {
  const auto out = scratch("campaign");
  CampaignSpec spec = parse(tiny_flags(out));
  std::ostringstream log;
  ASSERT_EQ(run_campaign(spec, log), kSuccess) << log.str();
  const std::string stem = file_stem(spec);
  for (int seed : {0, 1}) {
    const std::string trace = slurp(out / (stem + "_seed" + std::to_string(seed) + ".csv"));
    std::istringstream lines(trace);
    std::string header;
    std::getline(lines, header);
    EXPECT_EQ(header, "seed,iteration,hypervolume,wall_seconds,x1,x2,x3,x4,y1,y2");
    int n = 0;
    for (std::string line; std::getline(lines, line);) ++n;
    EXPECT_EQ(n, 3);
  }
  const std::string summary = slurp(out / (stem + "_summary.csv"));
  EXPECT_EQ(summary.rfind("iteration,runs,hv_median,hv_q25,hv_q75,wall_seconds_mean\n", 0), 0u);
  EXPECT_EQ(std::count(summary.begin(), summary.end(), '\n'), 4);
  const std::string meta = slurp(out / (stem + "_meta.txt"));
  EXPECT_NE(meta.find("problem=four_bar_truss"), std::string::npos);
  EXPECT_NE(meta.find("toolkit_version="), std::string::npos);
  EXPECT_FALSE(std::filesystem::exists(out / (stem + "_errors.txt")));
}

TEST(RunCampaign, JobsDoNotChangeTraces) {
  const auto a = scratch("jobs1");
  const auto b = scratch("jobs2");
  auto fa = tiny_flags(a);
  auto fb = tiny_flags(b);
  for (auto* f : {&fa, &fb}) f->insert(f->end(), {"--timing", "off"});
  fb.insert(fb.end(), {"--jobs", "2"});
  std::ostringstream log;
  const CampaignSpec sa = parse(fa), sb = parse(fb);
  ASSERT_EQ(run_campaign(sa, log), kSuccess);
  ASSERT_EQ(run_campaign(sb, log), kSuccess);
  for (int seed : {0, 1}) {
    const std::string name = file_stem(sa) + "_seed" + std::to_string(seed) + ".csv";
    EXPECT_EQ(slurp(a / name), slurp(b / name));
  }
  EXPECT_EQ(slurp(a / (file_stem(sa) + "_summary.csv")), slurp(b / (file_stem(sb) + "_summary.csv")));
}

}  // namespace
}  // namespace nmmo::tools
