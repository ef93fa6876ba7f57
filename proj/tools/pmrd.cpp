// Command line driver: exponent tables, single runs, monotone-refinement
// sweeps, and the acceptance suite.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pmrd/config.hpp"
#include "pmrd/constants.hpp"
#include "pmrd/experiment.hpp"
#include "pmrd/io.hpp"
#include "pmrd/verify.hpp"

namespace {

using namespace pmrd;

nlohmann::json table_json(const ExponentTable& t) {
  nlohmann::json j{{"m", t.m},         {"p", t.p},           {"N", t.dimension},
                   {"r", t.r},         {"q", t.q},           {"C_s", t.sobolev},
                   {"C_p", t.poincare}, {"p0", t.p0}};
  auto put = [&](const char* key, const std::optional<double>& v) {
    if (v) j[key] = *v;
    else j[key] = nullptr;
  };
  put("s", t.s);
  if (t.sup_bound) {
    j["gamma"] = t.sup_bound->rate;
    j["delta1"] = t.sup_bound->datum_power_reaction;
    j["delta2"] = t.sup_bound->datum_power_time;
  } else {
    j["gamma"] = nullptr;
    j["delta1"] = nullptr;
    j["delta2"] = nullptr;
  }
  if (t.smoothing_q) {
    j["gamma_q"] = t.smoothing_q->rate;
    j["delta_q"] = t.smoothing_q->datum_power;
  } else {
    j["gamma_q"] = nullptr;
    j["delta_q"] = nullptr;
  }
  put("eps0_tilde", t.eps0_tilde);
  if (t.family) {
    j["eps0"] = t.family->eps0;
    j["eps0_hat"] = t.family->eps0_hat;
    j["eps_bar"] = t.family->eps_bar;
    j["eps"] = t.family->eps;
  } else {
    j["eps0"] = nullptr;
    j["eps0_hat"] = nullptr;
    j["eps_bar"] = nullptr;
    j["eps"] = nullptr;
  }
  put("eps1_tilde", t.eps1_tilde);
  put("eps1", t.eps1);
  if (t.moser) {
    j["moser"] = {{"ladder", t.moser->ladder}, {"nbar", t.moser->nbar},
                  {"A", t.moser->a},           {"B", t.moser->b},
                  {"alpha", t.moser->alpha},   {"beta", t.moser->beta},
                  {"delta", t.moser->delta},   {"theta", t.moser->theta}};
  }
  return j;
}

void print_table_text(const ExponentTable& t, std::ostream& os) {
  auto row = [&](const char* k, const std::optional<double>& v) {
    os << "  " << k;
    for (std::size_t i = std::string(k).size(); i < 12; ++i) os << ' ';
    if (v) os << format_double(*v) << "\n";
    else os << "n/a\n";
  };
  os << "exponent table (m=" << t.m << ", p=" << t.p << ", N=" << t.dimension
     << ", r=" << t.r << ", q=" << t.q << ", C_s=" << t.sobolev << ", C_p=" << t.poincare
     << ")\n";
  row("p0", t.p0);
  row("s", t.s);
  row("gamma", t.sup_bound ? std::optional(t.sup_bound->rate) : std::nullopt);
  row("delta1",
      t.sup_bound ? std::optional(t.sup_bound->datum_power_reaction) : std::nullopt);
  row("delta2", t.sup_bound ? std::optional(t.sup_bound->datum_power_time) : std::nullopt);
  row("gamma_q", t.smoothing_q ? std::optional(t.smoothing_q->rate) : std::nullopt);
  row("delta_q", t.smoothing_q ? std::optional(t.smoothing_q->datum_power) : std::nullopt);
  row("eps0_tilde", t.eps0_tilde);
  row("eps0", t.family ? std::optional(t.family->eps0) : std::nullopt);
  row("eps0_hat", t.family ? std::optional(t.family->eps0_hat) : std::nullopt);
  row("eps_bar", t.family ? std::optional(t.family->eps_bar) : std::nullopt);
  row("eps", t.family ? std::optional(t.family->eps) : std::nullopt);
  row("eps1_tilde", t.eps1_tilde);
  row("eps1", t.eps1);
  if (t.moser) {
    os << "  ladder      [";
    for (std::size_t i = 0; i < t.moser->ladder.size(); ++i)
      os << (i ? ", " : "") << format_double(t.moser->ladder[i]);
    os << "]  (nbar=" << t.moser->nbar << ")\n";
  }
}

std::string default_out_dir(const std::string& flag_value) {
  if (!flag_value.empty()) return flag_value;
  if (const char* env = std::getenv("PMRD_OUT_DIR")) return env;
  return ".";
}

nlohmann::json load_config_json(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot read config file: " + path);
  std::stringstream buf;
  buf << is.rdbuf();
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(buf.str());
  } catch (const std::exception& e) {
    throw std::runtime_error(std::string("config JSON parse error: ") + e.what());
  }
  return j;
}

std::vector<double> parse_values(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item == "inf" || item == "infinity")
      out.push_back(std::numeric_limits<double>::infinity());
    else
      out.push_back(std::stod(item));
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"radial porous-medium reaction-diffusion solver and verifier"};
  app.require_subcommand(1);

  // constants ----------------------------------------------------------------
  double c_m = 2.0, c_p = 3.0, c_r = 2.0, c_q = 2.0, c_cs = 0.0, c_cp = 0.0;
  int c_n = 3;
  std::string c_format = "text";
  auto* sc_const = app.add_subcommand("constants", "print the exponent/threshold table");
  sc_const->add_option("--m", c_m, "porous-medium exponent m > 1");
  sc_const->add_option("--p", c_p, "reaction power p > m");
  sc_const->add_option("--N", c_n, "dimension N >= 3");
  sc_const->add_option("--r", c_r, "integrability exponent r");
  sc_const->add_option("--q", c_q, "Lebesgue exponent q");
  sc_const->add_option("--Cs", c_cs, "Sobolev constant (default: sharp Euclidean)");
  sc_const->add_option("--Cp", c_cp, "Poincare constant (0 = unavailable)");
  sc_const->add_option("--format", c_format, "text|json")
      ->check(CLI::IsMember({"text", "json"}));

  // run ------------------------------------------------------------------------
  std::string r_config, r_out, r_format;
  bool r_dry = false;
  std::uint64_t r_seed = 0;
  auto* sc_run = app.add_subcommand("run", "run one configured experiment");
  sc_run->add_option("--config", r_config, "config JSON path")->required();
  sc_run->add_flag("--dry-run", r_dry, "validate and print the exponent table only");
  sc_run->add_option("--out-dir", r_out, "output directory (default $PMRD_OUT_DIR or .)");
  sc_run->add_option("--format", r_format, "override output formats: csv|json|csv,json");
  sc_run->add_option("--seed", r_seed, "seed recorded in the manifest");

  // sweep ---------------------------------------------------------------------
  std::string s_config, s_param, s_values, s_out;
  std::uint64_t s_seed = 0;
  auto* sc_sweep = app.add_subcommand("sweep", "monotone refinement sweep");
  sc_sweep->add_option("--config", s_config, "config JSON path")->required();
  sc_sweep->add_option("--param", s_param, "k|R|amplitude|cells")->required();
  sc_sweep->add_option("--values", s_values, "comma separated, strictly increasing")
      ->required();
  sc_sweep->add_option("--out-dir", s_out, "output directory");
  sc_sweep->add_option("--seed", s_seed, "seed recorded in the manifest");

  // verify ----------------------------------------------------------------------
  std::string v_profile = "quick", v_out;
  std::uint64_t v_seed = 20240711;
  auto* sc_verify = app.add_subcommand("verify", "run the acceptance suite");
  sc_verify->add_option("--profile", v_profile, "quick|full")
      ->check(CLI::IsMember({"quick", "full"}));
  sc_verify->add_option("--out-dir", v_out, "where the full profile writes the scoreboard");
  sc_verify->add_option("--seed", v_seed, "seed for the randomized identity suite");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*sc_const) {
      if (c_cs <= 0.0) c_cs = pmrd::sharp_sobolev_constant(c_n);
      const auto table = pmrd::build_exponent_table(c_m, c_p, c_n, c_r, c_q, c_cs, c_cp);
      if (c_format == "json") std::cout << table_json(table).dump(2) << "\n";
      else print_table_text(table, std::cout);
      return 0;
    }

    if (*sc_run) {
      auto cfg = pmrd::parse_config(load_config_json(r_config));
      if (!r_out.empty() || std::getenv("PMRD_OUT_DIR")) cfg.out_dir = default_out_dir(r_out);
      if (!r_format.empty()) {
        cfg.formats.clear();
        std::stringstream ss(r_format);
        std::string item;
        while (std::getline(ss, item, ',')) cfg.formats.push_back(item);
      }
      if (r_dry) {
        const double q = cfg.q_list.empty() ? 2.0 : cfg.q_list.front();
        const auto table = pmrd::build_exponent_table(
            cfg.problem.m, cfg.problem.p, cfg.manifold.dimension, cfg.r, q,
            cfg.manifold.sobolev_constant, cfg.manifold.poincare_constant);
        print_table_text(table, std::cout);
        return 0;
      }
      const auto art = pmrd::run_experiment(cfg, r_seed);
      std::cout << "status: " << pmrd::to_string(art.record.status) << "\n";
      for (const auto& rep : art.reports)
        std::cout << "check " << rep.claim << ": " << (rep.pass ? "pass" : "FAIL")
                  << " (worst margin " << rep.worst_margin << ")\n";
      for (const auto& f : art.files) std::cout << "wrote " << f << "\n";
      bool ok = true;
      for (const auto& rep : art.reports) ok = ok && rep.pass;
      return ok ? 0 : 1;
    }

    if (*sc_sweep) {
      auto cfg = pmrd::parse_config(load_config_json(s_config));
      cfg.out_dir = default_out_dir(s_out.empty() ? cfg.out_dir : s_out);
      const auto mode = pmrd::sweep_mode_from_string(s_param);
      const auto rep = pmrd::run_sweep(cfg, mode, parse_values(s_values));
      const auto j = pmrd::to_json(rep);
      std::filesystem::create_directories(cfg.out_dir);
      const auto path = std::filesystem::path(cfg.out_dir) /
                        (cfg.name + "_sweep_" + pmrd::to_string(mode) + ".json");
      pmrd::write_text_file(path, j.dump(2) + "\n");
      std::cout << "sweep " << pmrd::to_string(mode) << ": "
                << (rep.pass ? "pass" : "FAIL") << "\n";
      std::cout << "wrote " << path.string() << "\n";
      return rep.pass ? 0 : 1;
    }

    if (*sc_verify) {
      const auto results = pmrd::run_acceptance(v_profile, v_seed);
      int failures = 0;
      for (const auto& r : results) {
        std::printf("[%s] %02d %-24s (%.2f s)  %s\n", r.pass ? "PASS" : "FAIL", r.id,
                    r.name.c_str(), r.seconds, r.detail.c_str());
        if (!r.pass) ++failures;
      }
      if (v_profile == "full") {
        const auto dir = default_out_dir(v_out);
        std::filesystem::create_directories(dir);
        const auto path = std::filesystem::path(dir) / "acceptance_scoreboard.json";
        pmrd::write_text_file(path, pmrd::scoreboard_json(results).dump(2) + "\n");
        std::cout << "wrote " << path.string() << "\n";
      }
      std::cout << (failures == 0 ? "all criteria passed" : "criteria failed") << "\n";
      return failures == 0 ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
