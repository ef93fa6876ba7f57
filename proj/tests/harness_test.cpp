#include "pmrd/experiment.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "pmrd/config.hpp"
#include "pmrd/io.hpp"

using namespace pmrd;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

nlohmann::json minimal_config() {
  return nlohmann::json::parse(R"({
    "manifold": {"kind": "euclidean", "dimension": 3},
    "problem": {"m": 2.0, "p": 3.0, "radius": 6.0,
                "datum": {"profile": "gaussian", "amplitude": 0.3, "width": 1.5}},
    "solver": {"cells": 150, "dt0": 2e-3, "t_end": 0.3, "sample_times": [0.1, 0.2, 0.3]},
    "diagnostics": {"q_list": [1.5, 2.0], "checks": ["lq_monotone"]}
  })");
}

fs::path fresh_dir(const std::string& tag) {
  const auto dir = fs::temp_directory_path() / ("pmrd_test_" + tag);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST(Config, MinimalConfigFillsDefaults) {
  nlohmann::json j{{"manifold", {{"kind", "euclidean"}}},
                   {"problem", {{"m", 2.0}, {"p", 3.0}}}};
  const auto cfg = parse_config(j);
  EXPECT_EQ(cfg.manifold.dimension, 3);
  EXPECT_GT(cfg.manifold.sobolev_constant, 0.0);
  EXPECT_EQ(cfg.solver.cells, 1000);
  EXPECT_TRUE(std::isinf(cfg.problem.cap));
  EXPECT_EQ(cfg.formats, std::vector<std::string>{"csv"});
}

TEST(Config, RejectsPEqualM) {
  auto j = minimal_config();
  j["problem"]["p"] = 2.0;
  try {
    parse_config(j);
    FAIL() << "expected rejection";
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("p > m"), std::string::npos);
  }
}

TEST(Config, RejectsSupBoundWithoutPoincare) {
  auto j = minimal_config();
  j["diagnostics"]["checks"] = {"sup_bound"};
  try {
    parse_config(j);
    FAIL() << "expected rejection";
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("Poincare"), std::string::npos);
  }
}

TEST(Config, RejectsUnknownKeysAndCollectsAllViolations) {
  auto j = minimal_config();
  j["problem"]["typo_key"] = 1;
  j["problem"]["p"] = 1.5;  // also below m
  try {
    parse_config(j);
    FAIL() << "expected rejection";
  } catch (const ConfigError& e) {
    EXPECT_GE(e.violations.size(), 2u);
    EXPECT_NE(std::string(e.what()).find("typo_key"), std::string::npos);
  }
}

TEST(Config, RejectsPoincareOnEuclidean) {
  auto j = minimal_config();
  j["manifold"]["poincare_constant"] = 1.0;
  EXPECT_THROW(parse_config(j), ConfigError);
}

TEST(Config, TypeErrorsSurfaceAsConfigErrors) {
  auto j = minimal_config();
  j["solver"]["cells"] = "lots";
  EXPECT_THROW(parse_config(j), ConfigError);
}

TEST(Config, HyperbolicDefaultsAndSampleGrids) {
  nlohmann::json j{
      {"manifold", {{"kind", "hyperbolic"}, {"dimension", 3}, {"curvature", 1.0}}},
      {"problem", {{"m", 2.0}, {"p", 2.5}}},
      {"solver",
       {{"t_end", 2.0},
        {"sample_times", {{"kind", "log"}, {"from", 0.1}, {"to", 2.0}, {"count", 5}}}}}};
  const auto cfg = parse_config(j);
  EXPECT_DOUBLE_EQ(cfg.manifold.poincare_constant, 1.0);
  ASSERT_EQ(cfg.solver.sample_times.size(), 5u);
  EXPECT_NEAR(cfg.solver.sample_times.front(), 0.1, 1e-12);
  EXPECT_NEAR(cfg.solver.sample_times.back(), 2.0, 1e-12);
}

TEST(Config, CapStringInfinity) {
  auto j = minimal_config();
  j["problem"]["cap"] = "inf";
  EXPECT_TRUE(std::isinf(parse_config(j).problem.cap));
  j["problem"]["cap"] = 4.0;
  EXPECT_DOUBLE_EQ(parse_config(j).problem.cap, 4.0);
}

TEST(Normalize, HitsRequestedNorm) {
  auto j = minimal_config();
  j["problem"]["datum"]["normalize"] = {{"q", "p0"}, {"target", 0.25}};
  auto cfg = parse_config(j);
  const auto resolved = resolve_datum(cfg);
  const auto grid = build_grid(cfg.manifold, cfg.problem.radius, cfg.solver.cells);
  const auto u0 = datum_values(cfg.problem.datum, grid, cfg.problem.m, 3);
  EXPECT_NEAR(lq_norm(grid, u0, 1.5), 0.25, 1e-12);
  EXPECT_DOUBLE_EQ(resolved.q, 1.5);
}

TEST(Normalize, FractionOfThreshold) {
  auto j = minimal_config();
  j["problem"]["datum"]["normalize"] = {{"q", "p0"}, {"fraction", 0.5}, {"of", "eps0"}};
  auto cfg = parse_config(j);
  const auto resolved = resolve_datum(cfg);
  ASSERT_TRUE(resolved.threshold.has_value());
  const auto grid = build_grid(cfg.manifold, cfg.problem.radius, cfg.solver.cells);
  const auto u0 = datum_values(cfg.problem.datum, grid, cfg.problem.m, 3);
  EXPECT_NEAR(lq_norm(grid, u0, 1.5), 0.5 * *resolved.threshold, 1e-12);
}

TEST(Experiment, WritesRecordReportsAndManifest) {
  auto cfg = parse_config(minimal_config());
  const auto dir = fresh_dir("artifacts");
  cfg.out_dir = dir.string();
  cfg.formats = {"csv", "json"};
  const auto art = run_experiment(cfg, 42);
  EXPECT_EQ(art.record.status, RunStatus::completed);
  ASSERT_EQ(art.reports.size(), 1u);
  EXPECT_TRUE(art.reports.front().pass);

  const auto csv = slurp(dir / "run_record.csv");
  EXPECT_EQ(csv.rfind("t,dt,sup_norm,lq_1.5,lq_2,status\n", 0), 0u);
  EXPECT_NE(csv.find("completed"), std::string::npos);

  const auto manifest = nlohmann::json::parse(slurp(dir / "run_manifest.json"));
  EXPECT_EQ(manifest.at("tool"), "pmrd");
  EXPECT_EQ(manifest.at("seed"), 42);
  EXPECT_TRUE(manifest.contains("config_hash"));
  EXPECT_TRUE(manifest.at("config").contains("solver"));

  // Floats round-trip: every CSV number reparses to the recorded value.
  const auto& s = art.record.samples.back();
  EXPECT_NE(csv.find(format_double(s.sup)), std::string::npos);
  EXPECT_EQ(std::stod(format_double(s.sup)), s.sup);
}

TEST(Experiment, DeterministicOutputs) {
  auto cfg = parse_config(minimal_config());
  const auto dir1 = fresh_dir("det1");
  const auto dir2 = fresh_dir("det2");
  cfg.out_dir = dir1.string();
  run_experiment(cfg, 7);
  cfg.out_dir = dir2.string();
  run_experiment(cfg, 7);
  EXPECT_EQ(slurp(dir1 / "run_record.csv"), slurp(dir2 / "run_record.csv"));
  EXPECT_EQ(slurp(dir1 / "run_manifest.json").size(),
            slurp(dir2 / "run_manifest.json").size());
}

TEST(Experiment, BlowUpRunTruncatesRecord) {
  nlohmann::json j{
      {"manifold", {{"kind", "euclidean"}, {"dimension", 3}}},
      {"problem",
       {{"m", 2.0},
        {"p", 2.2},
        {"radius", 8.0},
        {"datum", {{"profile", "bump"}, {"amplitude", 5.0}, {"width", 2.0}}}}},
      {"solver",
       {{"cells", 200}, {"dt0", 1e-3}, {"t_end", 50.0}, {"u_max", 50.0},
        {"sample_times", {0.02, 0.05, 10.0, 50.0}}}}};
  auto cfg = parse_config(j);
  const auto dir = fresh_dir("blowup");
  cfg.out_dir = dir.string();
  const auto art = run_experiment(cfg);
  EXPECT_EQ(art.record.status, RunStatus::blow_up);
  const auto csv = slurp(dir / "run_record.csv");
  EXPECT_NE(csv.find("blow_up"), std::string::npos);
  EXPECT_LT(art.record.t_stop, 10.0);
}

TEST(Config, RejectsAronsonBenilanWithoutTimes) {
  auto j = minimal_config();
  j["diagnostics"]["checks"] = {"aronson_benilan"};
  EXPECT_THROW(parse_config(j), ConfigError);
  j["diagnostics"]["ab_times"] = {0.1, 0.2};
  EXPECT_NO_THROW(parse_config(j));
}

TEST(Experiment, RecordReproducibleFromManifestAlone) {
  auto cfg = parse_config(minimal_config());
  cfg.normalize = DatumNormalization{};
  cfg.normalize->q_spec = "p0";
  cfg.normalize->target = 0.3;
  const auto dir = fresh_dir("manifest_rt");
  cfg.out_dir = dir.string();
  run_experiment(cfg, 3);

  // Re-run the configuration embedded in the manifest (amplitude already
  // resolved, no normalize block) and compare records byte for byte.
  const auto manifest = nlohmann::json::parse(slurp(dir / "run_manifest.json"));
  auto replay = parse_config(manifest.at("config"));
  const auto dir2 = fresh_dir("manifest_rt2");
  replay.out_dir = dir2.string();
  replay.formats = {"csv"};
  run_experiment(replay, 3);
  EXPECT_EQ(slurp(dir / "run_record.csv"), slurp(dir2 / "run_record.csv"));
}

TEST(Sweep, FailedRunNamesTheValue) {
  auto cfg = parse_config(minimal_config());
  try {
    run_sweep(cfg, SweepMode::cells, {1.0, 150.0});  // one cell is not a grid
    FAIL() << "expected failure";
  } catch (const std::runtime_error& e) {
    EXPECT_NE(std::string(e.what()).find("cells = 1"), std::string::npos);
  }
}

TEST(Sweep, SingleValueDegeneratePass) {
  auto cfg = parse_config(minimal_config());
  const auto rep = run_sweep(cfg, SweepMode::cap, {2.0});
  EXPECT_TRUE(rep.pass);
  EXPECT_TRUE(rep.orderings.empty());
}

TEST(Sweep, CapSweepOrderedAndCauchy) {
  nlohmann::json j{
      {"manifold", {{"kind", "euclidean"}, {"dimension", 3}}},
      {"problem",
       {{"m", 2.0},
        {"p", 3.0},
        {"radius", 8.0},
        {"datum", {{"profile", "bump"}, {"amplitude", 1.5}, {"width", 2.0}}}}},
      {"solver",
       {{"cells", 200}, {"dt0", 5e-4}, {"t_end", 0.1}, {"sample_times", {0.05, 0.1}}}}};
  auto cfg = parse_config(j);
  const auto rep = run_sweep(
      cfg, SweepMode::cap, {1.0, 2.0, 4.0, std::numeric_limits<double>::infinity()});
  EXPECT_TRUE(rep.ordered_pass);
  EXPECT_TRUE(rep.cauchy_pass);
  ASSERT_EQ(rep.differences.size(), 3u);
  EXPECT_GT(rep.differences.front(), 0.0);
}

TEST(Sweep, RejectsNonIncreasingValues) {
  auto cfg = parse_config(minimal_config());
  EXPECT_THROW(run_sweep(cfg, SweepMode::cap, {2.0, 2.0}), std::invalid_argument);
}
