#pragma once

// Experiment orchestration: single runs with their diagnostic reports and
// artifact files, and monotone-refinement sweeps over the truncation cap,
// the ball radius, the datum amplitude, or the grid resolution. Sweep runs
// are independent and execute in parallel; each run itself is sequential,
// so outputs are deterministic.

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <future>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "pmrd/config.hpp"
#include "pmrd/constants.hpp"
#include "pmrd/diagnostics.hpp"
#include "pmrd/io.hpp"
#include "pmrd/solver.hpp"

namespace pmrd {

struct ResolvedDatum {
  double scale = 1.0;            // factor applied to the amplitude
  double q = 0.0;                // norm exponent used
  double achieved_norm = 0.0;    // weighted L^q norm after scaling
  std::optional<double> threshold;  // threshold the target was taken from
};

// Applies the configured datum normalization: measure the weighted L^q norm
// of the unscaled datum on the run grid and rescale the amplitude so the
// norm hits the target (norms are homogeneous in the amplitude).
inline ResolvedDatum resolve_datum(ExperimentConfig& cfg) {
  ResolvedDatum out;
  if (!cfg.normalize) return out;
  const auto& nz = *cfg.normalize;
  const double m = cfg.problem.m, p = cfg.problem.p;
  const int dim = cfg.manifold.dimension;

  double q = nz.q_value;
  if (nz.q_spec == "p0") q = smallness_exponent(m, p, dim);
  else if (nz.q_spec == "pN2") q = 0.5 * p * dim;
  if (!(q > 0.0)) throw std::invalid_argument("datum normalization: invalid exponent");
  out.q = q;

  double target = 0.0;
  if (nz.target) {
    target = *nz.target;
  } else {
    const double cs = cfg.manifold.sobolev_constant;
    const double cp = cfg.manifold.poincare_constant;
    double thr = 0.0;
    if (nz.threshold == "eps1") {
      thr = threshold_poincare_overall(m, p, dim, cfg.r, cp, cs);
    } else if (nz.threshold == "eps0") {
      const double p0 = smallness_exponent(m, p, dim);
      thr = threshold_small_data(p, m, dim, cs, p * cfg.r, p0);
    } else {
      // Minimum over the norms the run is asked to control.
      const std::vector<double> qs =
          cfg.q_list.empty() ? std::vector<double>{q} : cfg.q_list;
      const double p0 = smallness_exponent(m, p, dim);
      const double eps0 = threshold_small_data(p, m, dim, cs, p * cfg.r, p0);
      thr = std::numeric_limits<double>::infinity();
      for (double qq : qs) {
        if (nz.threshold == "eps0_hat")
          thr = std::min(thr, threshold_small_data(p, m, dim, cs, qq, p0));
        else
          thr = std::min(thr, std::min(threshold_norm_decrease(p, m, dim, cs, qq), eps0));
      }
    }
    out.threshold = thr;
    target = *nz.fraction * thr;
  }

  const RadialGrid grid = build_grid(cfg.manifold, cfg.problem.radius, cfg.solver.cells);
  const auto u0 = datum_values(cfg.problem.datum, grid, m, dim);
  const double norm = lq_norm(grid, u0, q);
  if (!(norm > 0.0))
    throw std::invalid_argument("datum normalization: unscaled datum has zero norm");
  out.scale = target / norm;
  cfg.problem.datum.amplitude *= out.scale;
  out.achieved_norm = target;
  return out;
}

struct RunArtifacts {
  RunRecord record;
  std::vector<BoundReport> reports;
  ResolvedDatum datum;
  std::vector<std::string> files;
};

inline RunRecord execute_run(const ExperimentConfig& cfg) {
  ExperimentConfig local = cfg;
  const bool wants_ab =
      std::find(local.checks.begin(), local.checks.end(), DiagnosticCheck::aronson_benilan) !=
      local.checks.end();
  if (wants_ab && !local.ab_times.empty()) {
    local.solver.store_states = true;
    for (double t : local.ab_times) local.solver.sample_times.push_back(t);
    std::sort(local.solver.sample_times.begin(), local.solver.sample_times.end());
    local.solver.sample_times.erase(
        std::unique(local.solver.sample_times.begin(), local.solver.sample_times.end()),
        local.solver.sample_times.end());
  }
  return evolve(local.manifold, local.problem, local.solver, local.q_list);
}

inline std::vector<BoundReport> run_diagnostics(const ExperimentConfig& cfg,
                                                const RunRecord& rec) {
  std::vector<BoundReport> reports;
  const RadialGrid grid = build_grid(cfg.manifold, cfg.problem.radius, cfg.solver.cells);
  const double m = cfg.problem.m, p = cfg.problem.p;
  const int dim = cfg.manifold.dimension;

  for (DiagnosticCheck check : cfg.checks) {
    switch (check) {
      case DiagnosticCheck::lq_monotone:
        reports.push_back(check_lq_monotone(rec, cfg.q_list));
        break;
      case DiagnosticCheck::sup_bound: {
        const auto u0 = datum_values(cfg.problem.datum, grid, m, dim);
        DatumNorms norms;
        norms.lm = lq_norm(grid, u0, m);
        norms.lr = lq_norm(grid, u0, cfg.r);
        norms.lpr = lq_norm(grid, u0, p * cfg.r);
        reports.push_back(verify_sup_bound(rec, norms, m, dim, cfg.r,
                                           cfg.manifold.sobolev_constant));
        break;
      }
      case DiagnosticCheck::smoothing_statistic: {
        const auto e = sup_bound_exponents(m, p, dim, cfg.r);
        const double s = linf_gain_exponent(dim, cfg.r);
        const double t_end = cfg.solver.t_end;
        const auto stat = smoothing_statistic(rec, e.rate, m, s, 0.0, t_end);
        const double expected = e.rate / (m * s);
        const double fitted = fit_decay_exponent(sample_times_of(rec), sup_series_of(rec),
                                                 t_end / 10.0, t_end);
        BoundReport rep;
        rep.claim = "smoothing-statistic";
        rep.tolerance = 0.05;
        SampleCheck fit_row;
        fit_row.t = t_end;
        fit_row.lhs = expected;
        fit_row.rhs = fitted;
        fit_row.margin = fitted - expected;
        fit_row.note = "fitted decay exponent vs rate/(m s)";
        SampleCheck max_row;
        max_row.t = t_end;
        max_row.lhs = stat.max_value;
        max_row.rhs = stat.max_value;
        max_row.margin = std::isfinite(stat.max_value) ? 0.0 : -1.0;
        max_row.note = "max of t^{rate/(ms)} sup(t)";
        rep.details = {fit_row, max_row};
        rep.samples_checked = 2;
        rep.worst_margin = std::min(fit_row.margin, max_row.margin);
        rep.pass = rep.worst_margin >= -rep.tolerance;
        reports.push_back(rep);
        break;
      }
      case DiagnosticCheck::aronson_benilan: {
        const auto phis = aronson_benilan_test_functions(grid);
        for (double t : cfg.ab_times) {
          const Sample* found = nullptr;
          for (const auto& s : rec.samples)
            if (std::abs(s.t - t) <= 1e-9 * std::max(1.0, t)) found = &s;
          if (!found || found->state.empty()) {
            std::ostringstream os;
            os << "no stored state at t = " << t << " for the Aronson-Benilan check";
            throw std::invalid_argument(os.str());
          }
          reports.push_back(check_aronson_benilan(grid, found->state, t, m, p, phis));
        }
        break;
      }
    }
  }
  return reports;
}

inline nlohmann::json config_to_json(const ExperimentConfig& cfg) {
  nlohmann::json m{{"kind", to_string(cfg.manifold.kind)},
                   {"dimension", cfg.manifold.dimension},
                   {"sobolev_constant", cfg.manifold.sobolev_constant},
                   {"poincare_constant", cfg.manifold.poincare_constant}};
  if (cfg.manifold.kind == ManifoldKind::hyperbolic) m["curvature"] = cfg.manifold.curvature;
  if (cfg.manifold.kind == ManifoldKind::weighted_euclidean)
    m["weight_decay"] = cfg.manifold.weight_decay;
  nlohmann::json datum{{"profile", to_string(cfg.problem.datum.profile)},
                       {"amplitude", cfg.problem.datum.amplitude},
                       {"width", cfg.problem.datum.width}};
  if (!cfg.problem.datum.table.empty()) {
    nlohmann::json table = nlohmann::json::array();
    for (const auto& [r, u] : cfg.problem.datum.table) table.push_back({r, u});
    datum["table"] = table;
  }
  nlohmann::json problem{{"m", cfg.problem.m},
                         {"p", cfg.problem.p},
                         {"radius", cfg.problem.radius},
                         {"reaction", cfg.problem.reaction},
                         {"datum", datum}};
  if (std::isfinite(cfg.problem.cap)) problem["cap"] = cfg.problem.cap;
  else problem["cap"] = "inf";
  nlohmann::json solver{{"cells", cfg.solver.cells},       {"dt0", cfg.solver.dt0},
                        {"dt_min", cfg.solver.dt_min},     {"t_end", cfg.solver.t_end},
                        {"u_max", cfg.solver.sup_cap},     {"newton_tol", cfg.solver.newton_tol},
                        {"sample_times", cfg.solver.sample_times},
                        {"store_states", cfg.solver.store_states},
                        {"outer_boundary",
                         cfg.solver.outer == OuterBoundary::no_flux ? "no_flux" : "dirichlet"}};
  nlohmann::json checks = nlohmann::json::array();
  for (auto c : cfg.checks) checks.push_back(to_string(c));
  nlohmann::json diag{{"q_list", cfg.q_list}, {"r", cfg.r}, {"checks", checks}};
  if (!cfg.ab_times.empty()) diag["ab_times"] = cfg.ab_times;
  return nlohmann::json{{"name", cfg.name},
                        {"manifold", m},
                        {"problem", problem},
                        {"solver", solver},
                        {"diagnostics", diag}};
}

// Runs one experiment and writes record + reports + manifest under out_dir.
inline RunArtifacts run_experiment(const ExperimentConfig& config, std::uint64_t seed = 0) {
  namespace fs = std::filesystem;
  ExperimentConfig cfg = config;
  RunArtifacts art;
  art.datum = resolve_datum(cfg);
  art.record = execute_run(cfg);
  art.reports = run_diagnostics(cfg, art.record);

  fs::create_directories(cfg.out_dir);
  const fs::path dir(cfg.out_dir);
  const bool csv = std::find(cfg.formats.begin(), cfg.formats.end(), "csv") != cfg.formats.end();
  const bool json = std::find(cfg.formats.begin(), cfg.formats.end(), "json") != cfg.formats.end();
  if (csv) {
    const fs::path f = dir / (cfg.name + "_record.csv");
    write_text_file(f, record_csv(art.record));
    art.files.push_back(f.string());
  }
  if (json) {
    const fs::path f = dir / (cfg.name + "_record.json");
    write_text_file(f, to_json(art.record).dump(2) + "\n");
    art.files.push_back(f.string());
  }
  for (std::size_t i = 0; i < art.reports.size(); ++i) {
    const fs::path f =
        dir / (cfg.name + "_report_" + std::to_string(i) + "_" + art.reports[i].claim + ".json");
    write_text_file(f, to_json(art.reports[i]).dump(2) + "\n");
    art.files.push_back(f.string());
  }

  const std::string config_dump = config_to_json(cfg).dump();
  char hash[32];
  std::snprintf(hash, sizeof(hash), "fnv1a64:%016llx",
                static_cast<unsigned long long>(fnv1a64(config_dump)));
  nlohmann::json manifest{{"schema_version", kSchemaVersion},
                          {"tool", "pmrd"},
                          {"version", kVersion},
                          {"seed", seed},
                          {"config", config_to_json(cfg)},
                          {"config_hash", hash},
                          {"datum_scale", art.datum.scale},
                          {"artifacts", art.files}};
  const fs::path mf = dir / (cfg.name + "_manifest.json");
  write_text_file(mf, manifest.dump(2) + "\n");
  art.files.push_back(mf.string());
  return art;
}

// ---------------------------------------------------------------------------
// Sweeps
// ---------------------------------------------------------------------------

struct SweepReport {
  SweepMode mode = SweepMode::cap;
  std::vector<double> values;
  std::vector<BoundReport> orderings;   // adjacent pairs, lo vs hi
  std::vector<double> differences;      // sup-norm of adjacent run gaps
  bool ordered_pass = true;
  bool cauchy_pass = true;
  bool pass = true;
};

inline SweepMode sweep_mode_from_string(const std::string& s) {
  if (s == "k" || s == "cap") return SweepMode::cap;
  if (s == "R" || s == "radius") return SweepMode::radius;
  if (s == "amplitude") return SweepMode::amplitude;
  if (s == "cells") return SweepMode::cells;
  throw std::invalid_argument("sweep parameter must be k|R|amplitude|cells");
}

// Executes all runs of the sweep (in parallel), then checks the pointwise
// ordering of adjacent runs and that their gaps shrink (the Cauchy behaviour
// of the monotone approximation). Resolution sweeps only report gaps.
inline SweepReport run_sweep(const ExperimentConfig& base, SweepMode mode,
                             const std::vector<double>& values) {
  if (values.size() < 1) throw std::invalid_argument("sweep needs at least one value");
  for (std::size_t i = 1; i < values.size(); ++i)
    if (!(values[i] > values[i - 1]))
      throw std::invalid_argument("sweep values must be strictly increasing");
  if (base.normalize && mode == SweepMode::amplitude)
    throw std::invalid_argument("amplitude sweeps cannot be combined with datum normalization");

  // Resolve any datum normalization once on the base configuration so every
  // run of the sweep uses the same initial datum.
  ExperimentConfig resolved = base;
  if (resolved.normalize) {
    resolve_datum(resolved);
    resolved.normalize.reset();
  }

  std::vector<ExperimentConfig> cfgs;
  for (double v : values) {
    ExperimentConfig c = resolved;
    c.solver.store_states = true;
    switch (mode) {
      case SweepMode::cap:
        c.problem.cap = v;
        break;
      case SweepMode::radius: {
        // Keep the cell width fixed so grids nest exactly.
        const double dr = resolved.problem.radius / resolved.solver.cells;
        c.problem.radius = v;
        c.solver.cells = static_cast<int>(std::lround(v / dr));
        break;
      }
      case SweepMode::amplitude:
        c.problem.datum.amplitude = v;
        break;
      case SweepMode::cells:
        c.solver.cells = static_cast<int>(std::lround(v));
        break;
    }
    cfgs.push_back(std::move(c));
  }

  std::vector<std::future<RunRecord>> futures;
  futures.reserve(cfgs.size());
  for (const auto& c : cfgs)
    futures.push_back(std::async(std::launch::async, [&c] { return execute_run(c); }));
  std::vector<RunRecord> runs;
  runs.reserve(cfgs.size());
  for (std::size_t i = 0; i < futures.size(); ++i) {
    try {
      runs.push_back(futures[i].get());
    } catch (const std::exception& e) {
      std::ostringstream os;
      os << "sweep run failed at " << to_string(mode) << " = " << values[i] << ": "
         << e.what();
      for (std::size_t j = i + 1; j < futures.size(); ++j) {
        try { futures[j].get(); } catch (...) {}
      }
      throw std::runtime_error(os.str());
    }
  }

  SweepReport rep;
  rep.mode = mode;
  rep.values = values;
  for (std::size_t i = 0; i + 1 < runs.size(); ++i) {
    if (mode != SweepMode::cells) {
      rep.orderings.push_back(compare_runs_monotone(runs[i], runs[i + 1], mode));
      rep.ordered_pass = rep.ordered_pass && rep.orderings.back().pass;
      rep.differences.push_back(max_state_difference(runs[i], runs[i + 1]));
    } else {
      double gap = 0.0;
      const std::size_t ns = std::min(runs[i].samples.size(), runs[i + 1].samples.size());
      for (std::size_t jx = 0; jx < ns; ++jx)
        gap = std::max(gap, std::abs(runs[i].samples[jx].sup - runs[i + 1].samples[jx].sup));
      rep.differences.push_back(gap);
    }
  }
  for (std::size_t i = 1; i < rep.differences.size(); ++i)
    if (rep.differences[i] > rep.differences[i - 1] * (1.0 + 1e-9) + 1e-14)
      rep.cauchy_pass = false;
  rep.pass = rep.ordered_pass && rep.cauchy_pass;
  return rep;
}

inline nlohmann::json to_json(const SweepReport& rep) {
  nlohmann::json orderings = nlohmann::json::array();
  for (const auto& o : rep.orderings) orderings.push_back(to_json(o));
  return nlohmann::json{{"schema_version", kSchemaVersion},
                        {"parameter", to_string(rep.mode)},
                        {"values", rep.values},
                        {"orderings", orderings},
                        {"differences", rep.differences},
                        {"ordered_pass", rep.ordered_pass},
                        {"cauchy_pass", rep.cauchy_pass},
                        {"pass", rep.pass}};
}

}  // namespace pmrd
