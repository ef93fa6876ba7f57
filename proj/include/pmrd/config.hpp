#pragma once

// Experiment configuration: JSON surface, defaults, and cross-field
// validation. Parsing reports every violation at once, names the failed
// mathematical hypothesis where one exists, and rejects unknown keys rather
// than ignoring them.

#include <cmath>
#include <limits>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "pmrd/constants.hpp"
#include "pmrd/geometry.hpp"
#include "pmrd/solver.hpp"

namespace pmrd {

struct ConfigError : std::runtime_error {
  std::vector<std::string> violations;
  explicit ConfigError(std::vector<std::string> v)
      : std::runtime_error(join(v)), violations(std::move(v)) {}
  static std::string join(const std::vector<std::string>& v) {
    std::ostringstream os;
    os << "invalid configuration (" << v.size() << " problem(s)):";
    for (const auto& s : v) os << "\n  - " << s;
    return os.str();
  }
};

// Optional rescaling of the datum so that a chosen L^q norm hits a target,
// either given directly or as a fraction of a smallness threshold.
struct DatumNormalization {
  std::string q_spec = "p0";  // "p0", "pN2", or a number rendered as text
  double q_value = 0.0;       // resolved exponent (0 until resolved)
  std::optional<double> target;
  std::optional<double> fraction;    // fraction of the threshold below
  std::string threshold = "eps0";    // eps0 | eps0_hat | eps | eps1
};

enum class DiagnosticCheck { lq_monotone, sup_bound, smoothing_statistic, aronson_benilan };

inline const char* to_string(DiagnosticCheck c) {
  switch (c) {
    case DiagnosticCheck::lq_monotone: return "lq_monotone";
    case DiagnosticCheck::sup_bound: return "sup_bound";
    case DiagnosticCheck::smoothing_statistic: return "smoothing_statistic";
    case DiagnosticCheck::aronson_benilan: return "aronson_benilan";
  }
  return "?";
}

struct ExperimentConfig {
  ModelManifold manifold;
  ProblemParams problem;
  SolverSettings solver;
  std::optional<DatumNormalization> normalize;
  std::vector<double> q_list{2.0};
  double r = 2.0;  // integrability exponent for the sup-bound checks
  std::vector<DiagnosticCheck> checks;
  std::vector<double> ab_times;  // Aronson-Benilan evaluation times
  std::string out_dir = ".";
  std::vector<std::string> formats{"csv"};
  std::string name = "run";
};

namespace detail {

inline void expect_keys(const nlohmann::json& obj, const std::string& where,
                        const std::set<std::string>& allowed,
                        std::vector<std::string>& errs) {
  for (auto it = obj.begin(); it != obj.end(); ++it)
    if (!allowed.count(it.key()))
      errs.push_back("unknown key '" + where + "." + it.key() + "'");
}

template <class T>
T get_or(const nlohmann::json& obj, const std::string& key, T fallback) {
  if (obj.contains(key)) return obj.at(key).get<T>();
  return fallback;
}

inline double get_extended(const nlohmann::json& obj, const std::string& key,
                           double fallback) {
  if (!obj.contains(key)) return fallback;
  const auto& v = obj.at(key);
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    if (s == "inf" || s == "infinity") return std::numeric_limits<double>::infinity();
    throw std::runtime_error("expected a number or \"inf\" for '" + key + "'");
  }
  return v.get<double>();
}

}  // namespace detail

inline ExperimentConfig parse_config_impl(const nlohmann::json& j) {
  using nlohmann::json;
  std::vector<std::string> errs;
  ExperimentConfig cfg;

  detail::expect_keys(j, "", {"name", "manifold", "problem", "solver", "diagnostics", "output"},
                      errs);
  if (j.contains("name")) cfg.name = j.at("name").get<std::string>();

  // --- manifold -----------------------------------------------------------
  if (!j.contains("manifold")) {
    errs.push_back("missing 'manifold' block");
  } else {
    const auto& m = j.at("manifold");
    detail::expect_keys(m, "manifold",
                        {"kind", "dimension", "curvature", "weight_decay",
                         "sobolev_constant", "poincare_constant"},
                        errs);
    const std::string kind = detail::get_or<std::string>(m, "kind", "euclidean");
    const int dim = detail::get_or<int>(m, "dimension", 3);
    if (dim < 3) errs.push_back("manifold.dimension < 3 violates the standing assumption N >= 3");
    try {
      if (kind == "euclidean") {
        cfg.manifold = euclidean_space(std::max(dim, 3),
                                       detail::get_or<double>(m, "sobolev_constant", 0.0));
        if (detail::get_or<double>(m, "poincare_constant", 0.0) != 0.0)
          errs.push_back(
              "manifold.poincare_constant > 0 on euclidean space: the Poincare "
              "inequality fails there, set 0 or use another manifold");
        if (m.contains("curvature") || m.contains("weight_decay"))
          errs.push_back("manifold: curvature/weight_decay are not euclidean parameters");
      } else if (kind == "hyperbolic") {
        if (!m.contains("curvature"))
          errs.push_back("manifold.curvature required for the hyperbolic kind");
        cfg.manifold = hyperbolic_space(std::max(dim, 3),
                                        detail::get_or<double>(m, "curvature", 1.0),
                                        detail::get_or<double>(m, "sobolev_constant", 0.0),
                                        detail::get_or<double>(m, "poincare_constant", -1.0));
        if (m.contains("weight_decay"))
          errs.push_back("manifold: weight_decay is not a hyperbolic parameter");
      } else if (kind == "weighted_euclidean") {
        if (!m.contains("weight_decay"))
          errs.push_back("manifold.weight_decay required for the weighted kind");
        cfg.manifold = weighted_euclidean_space(
            std::max(dim, 3), detail::get_or<double>(m, "weight_decay", 0.0),
            detail::get_or<double>(m, "sobolev_constant", 0.0),
            detail::get_or<double>(m, "poincare_constant", 0.0));
        if (m.contains("curvature"))
          errs.push_back("manifold: curvature is not a weighted-euclidean parameter");
      } else {
        errs.push_back("manifold.kind '" + kind + "' is not one of euclidean|hyperbolic|weighted_euclidean");
      }
    } catch (const std::exception& e) {
      errs.push_back(std::string("manifold: ") + e.what());
    }
  }

  // --- problem -------------------------------------------------------------
  if (!j.contains("problem")) {
    errs.push_back("missing 'problem' block");
  } else {
    const auto& p = j.at("problem");
    detail::expect_keys(p, "problem", {"m", "p", "cap", "radius", "reaction", "datum"}, errs);
    cfg.problem.m = detail::get_or<double>(p, "m", 2.0);
    cfg.problem.p = detail::get_or<double>(p, "p", 3.0);
    try {
      cfg.problem.cap = detail::get_extended(p, "cap", std::numeric_limits<double>::infinity());
    } catch (const std::exception& e) {
      errs.push_back(std::string("problem: ") + e.what());
    }
    cfg.problem.radius = detail::get_or<double>(p, "radius", 10.0);
    cfg.problem.reaction = detail::get_or<bool>(p, "reaction", true);
    if (!(cfg.problem.m > 1.0))
      errs.push_back("problem.m <= 1 violates the standing assumption m > 1");
    if (!(cfg.problem.p > cfg.problem.m))
      errs.push_back("problem.p <= m violates the standing assumption p > m");
    if (!(cfg.problem.radius > 0.0)) errs.push_back("problem.radius must be positive");
    if (!(cfg.problem.cap > 0.0)) errs.push_back("problem.cap must be positive");

    if (p.contains("datum")) {
      const auto& d = p.at("datum");
      detail::expect_keys(d, "problem.datum",
                          {"profile", "amplitude", "width", "table", "normalize"}, errs);
      const std::string prof = detail::get_or<std::string>(d, "profile", "gaussian");
      if (prof == "gaussian") cfg.problem.datum.profile = DatumProfile::gaussian;
      else if (prof == "bump") cfg.problem.datum.profile = DatumProfile::bump;
      else if (prof == "barenblatt") cfg.problem.datum.profile = DatumProfile::barenblatt;
      else if (prof == "custom_table") cfg.problem.datum.profile = DatumProfile::custom_table;
      else errs.push_back("problem.datum.profile '" + prof + "' unknown");
      cfg.problem.datum.amplitude = detail::get_or<double>(d, "amplitude", 1.0);
      cfg.problem.datum.width = detail::get_or<double>(d, "width", 1.0);
      if (!(cfg.problem.datum.amplitude >= 0.0))
        errs.push_back("problem.datum.amplitude must be nonnegative");
      if (d.contains("table")) {
        for (const auto& row : d.at("table")) {
          if (!row.is_array() || row.size() != 2) {
            errs.push_back("problem.datum.table rows must be [r, u] pairs");
            break;
          }
          cfg.problem.datum.table.emplace_back(row[0].get<double>(), row[1].get<double>());
        }
        for (const auto& [rr, uu] : cfg.problem.datum.table)
          if (uu < 0.0) errs.push_back("problem.datum.table values must be nonnegative");
      }
      if (cfg.problem.datum.profile == DatumProfile::custom_table &&
          cfg.problem.datum.table.empty())
        errs.push_back("problem.datum.profile=custom_table needs a nonempty table");
      if (d.contains("normalize")) {
        const auto& nz = d.at("normalize");
        detail::expect_keys(nz, "problem.datum.normalize", {"q", "target", "fraction", "of"},
                            errs);
        DatumNormalization dn;
        if (nz.contains("q")) {
          if (nz.at("q").is_string()) dn.q_spec = nz.at("q").get<std::string>();
          else {
            dn.q_value = nz.at("q").get<double>();
            dn.q_spec = "number";
          }
        }
        if (nz.contains("target")) dn.target = nz.at("target").get<double>();
        if (nz.contains("fraction")) dn.fraction = nz.at("fraction").get<double>();
        dn.threshold = detail::get_or<std::string>(nz, "of", "eps0");
        if (dn.target.has_value() == dn.fraction.has_value())
          errs.push_back("problem.datum.normalize needs exactly one of 'target'/'fraction'");
        if (dn.q_spec != "p0" && dn.q_spec != "pN2" && dn.q_spec != "number")
          errs.push_back("problem.datum.normalize.q must be \"p0\", \"pN2\", or a number");
        if (dn.threshold != "eps0" && dn.threshold != "eps0_hat" && dn.threshold != "eps" &&
            dn.threshold != "eps1")
          errs.push_back("problem.datum.normalize.of must be eps0|eps0_hat|eps|eps1");
        cfg.normalize = dn;
      }
    }
  }

  // --- solver ---------------------------------------------------------------
  if (j.contains("solver")) {
    const auto& s = j.at("solver");
    detail::expect_keys(s, "solver",
                        {"cells", "dt0", "dt_min", "t_end", "u_max", "newton_tol",
                         "sample_times", "store_states", "outer_boundary"},
                        errs);
    cfg.solver.cells = detail::get_or<int>(s, "cells", 1000);
    cfg.solver.dt0 = detail::get_or<double>(s, "dt0", 1e-3);
    cfg.solver.dt_min = detail::get_or<double>(s, "dt_min", 1e-12);
    cfg.solver.t_end = detail::get_or<double>(s, "t_end", 1.0);
    cfg.solver.sup_cap = detail::get_or<double>(s, "u_max", 1e6);
    cfg.solver.newton_tol = detail::get_or<double>(s, "newton_tol", 1e-12);
    cfg.solver.store_states = detail::get_or<bool>(s, "store_states", false);
    const std::string outer = detail::get_or<std::string>(s, "outer_boundary", "dirichlet");
    if (outer == "dirichlet") cfg.solver.outer = OuterBoundary::dirichlet_zero;
    else if (outer == "no_flux") cfg.solver.outer = OuterBoundary::no_flux;
    else errs.push_back("solver.outer_boundary must be dirichlet|no_flux");
    if (s.contains("sample_times")) {
      const auto& t = s.at("sample_times");
      if (t.is_array()) {
        for (const auto& x : t) cfg.solver.sample_times.push_back(x.get<double>());
      } else {
        detail::expect_keys(t, "solver.sample_times", {"kind", "from", "to", "count"}, errs);
        const std::string kind = detail::get_or<std::string>(t, "kind", "log");
        const double from = detail::get_or<double>(t, "from", 0.0);
        const double to = detail::get_or<double>(t, "to", cfg.solver.t_end);
        const int count = detail::get_or<int>(t, "count", 20);
        if (count < 2 || !(to > from) || (kind == "log" && !(from > 0.0))) {
          errs.push_back("solver.sample_times grid needs count >= 2, to > from (> 0 for log)");
        } else if (kind == "log") {
          for (int i = 0; i < count; ++i)
            cfg.solver.sample_times.push_back(
                from * std::pow(to / from, static_cast<double>(i) / (count - 1)));
        } else if (kind == "linear") {
          for (int i = 0; i < count; ++i)
            cfg.solver.sample_times.push_back(from + (to - from) * i / (count - 1.0));
        } else {
          errs.push_back("solver.sample_times.kind must be log|linear");
        }
      }
    }
    if (cfg.solver.cells < 2) errs.push_back("solver.cells must be >= 2");
    if (!(cfg.solver.dt0 > 0.0)) errs.push_back("solver.dt0 must be positive");
    if (!(cfg.solver.dt_min < cfg.solver.dt0)) errs.push_back("solver.dt_min must be < dt0");
    if (!(cfg.solver.t_end > 0.0)) errs.push_back("solver.t_end must be positive");
    if (!(cfg.solver.sup_cap > 0.0)) errs.push_back("solver.u_max must be positive");
  }

  // --- diagnostics ------------------------------------------------------------
  if (j.contains("diagnostics")) {
    const auto& d = j.at("diagnostics");
    detail::expect_keys(d, "diagnostics", {"q_list", "r", "checks", "ab_times"}, errs);
    if (d.contains("q_list")) {
      cfg.q_list.clear();
      for (const auto& q : d.at("q_list")) cfg.q_list.push_back(q.get<double>());
    }
    cfg.r = detail::get_or<double>(d, "r", 2.0);
    if (d.contains("checks")) {
      for (const auto& c : d.at("checks")) {
        const std::string name = c.get<std::string>();
        if (name == "lq_monotone") cfg.checks.push_back(DiagnosticCheck::lq_monotone);
        else if (name == "sup_bound") cfg.checks.push_back(DiagnosticCheck::sup_bound);
        else if (name == "smoothing_statistic")
          cfg.checks.push_back(DiagnosticCheck::smoothing_statistic);
        else if (name == "aronson_benilan")
          cfg.checks.push_back(DiagnosticCheck::aronson_benilan);
        else errs.push_back("diagnostics.checks entry '" + name + "' unknown");
      }
    }
    if (d.contains("ab_times"))
      for (const auto& t : d.at("ab_times")) cfg.ab_times.push_back(t.get<double>());
    for (double q : cfg.q_list)
      if (!(q > 0.0)) errs.push_back("diagnostics.q_list entries must be positive");
  }

  // --- output -------------------------------------------------------------------
  if (j.contains("output")) {
    const auto& o = j.at("output");
    detail::expect_keys(o, "output", {"directory", "formats"}, errs);
    cfg.out_dir = detail::get_or<std::string>(o, "directory", ".");
    if (o.contains("formats")) {
      cfg.formats.clear();
      for (const auto& f : o.at("formats")) {
        const std::string name = f.get<std::string>();
        if (name != "csv" && name != "json")
          errs.push_back("output.formats entry '" + name + "' must be csv|json");
        else
          cfg.formats.push_back(name);
      }
    }
  }

  // --- cross-field hypotheses ----------------------------------------------------
  const double m = cfg.problem.m, p = cfg.problem.p;
  const int dim = cfg.manifold.dimension;
  const bool has_sup_bound =
      std::find(cfg.checks.begin(), cfg.checks.end(), DiagnosticCheck::sup_bound) !=
      cfg.checks.end();
  const bool has_smoothing =
      std::find(cfg.checks.begin(), cfg.checks.end(), DiagnosticCheck::smoothing_statistic) !=
      cfg.checks.end();
  if (has_sup_bound) {
    if (!(cfg.manifold.poincare_constant > 0.0))
      errs.push_back(
          "diagnostics.checks includes sup_bound but the manifold carries no "
          "Poincare constant (the explicit sup bound needs the Poincare inequality)");
    if (!(2.0 * cfg.r > dim)) {
      std::ostringstream os;
      os << "diagnostics.r = " << cfg.r << " violates the sup-bound hypothesis r > N/2 = "
         << 0.5 * dim;
      errs.push_back(os.str());
    }
  }
  if (has_smoothing && m > 1.0 && p > m) {
    if (!(p > m + 2.0 / dim)) {
      std::ostringstream os;
      os << "diagnostics.checks includes smoothing_statistic but p = " << p
         << " violates the hypothesis p > m + 2/N = " << m + 2.0 / dim;
      errs.push_back(os.str());
    }
    const double p0 = (p - m) * dim / 2.0;
    if (!(cfg.r > std::max(p0, dim / 2.0))) {
      std::ostringstream os;
      os << "diagnostics.r = " << cfg.r
         << " violates the smoothing hypothesis r > max{(p-m)N/2, N/2} = "
         << std::max(p0, dim / 2.0);
      errs.push_back(os.str());
    }
  }
  const bool has_ab =
      std::find(cfg.checks.begin(), cfg.checks.end(), DiagnosticCheck::aronson_benilan) !=
      cfg.checks.end();
  if (has_ab && cfg.ab_times.empty())
    errs.push_back(
        "diagnostics.checks includes aronson_benilan but diagnostics.ab_times is empty");
  if (cfg.normalize) {
    const bool needs_eps1 = cfg.normalize->threshold == "eps1";
    if (needs_eps1 && !(cfg.manifold.poincare_constant > 0.0))
      errs.push_back("datum normalization against eps1 needs a Poincare constant");
    if (!needs_eps1 && cfg.normalize->fraction && m > 1.0 && p > m && !(p > m + 2.0 / dim))
      errs.push_back(
          "datum normalization against the small-data thresholds needs p > m + 2/N");
  }

  if (!errs.empty()) throw ConfigError(std::move(errs));
  return cfg;
}

inline ExperimentConfig parse_config(const nlohmann::json& j) {
  try {
    return parse_config_impl(j);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError({std::string("config value has the wrong type: ") + e.what()});
  }
}

inline ExperimentConfig parse_config_text(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const std::exception& e) {
    throw ConfigError({std::string("JSON parse error: ") + e.what()});
  }
  return parse_config(j);
}

}  // namespace pmrd
