#include <cinttypes>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "dsdsc/numeric.hpp"
#include "dsdsc/sweep.hpp"

namespace {

using namespace dsdsc;

unsigned default_jobs() {
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

Environment resolve_environment(const std::string& name,
                                const std::string& env_file) {
  if (!env_file.empty()) {
    std::ifstream in(env_file);
    if (!in) {
      throw std::invalid_argument("cannot open environment file '" + env_file +
                                  "'");
    }
    nlohmann::json doc = nlohmann::json::parse(in);
    nlohmann::json wrapper;
    wrapper["environments"] = nlohmann::json::array({doc});
    wrapper["d_max_m"] = {100.0};
    wrapper["eps_bb"] = {1e-3};
    wrapper["e_r"] = {0.5};
    wrapper["master_seed"] = 0;
    return parse_sweep_config(wrapper).environments.front();
  }
  if (auto preset = environment_preset(name)) return *preset;
  throw std::invalid_argument("unknown environment '" + name +
                              "'; use suburban|urban|high_urban or --env-file");
}

void write_single_row(const std::string& out_dir, const CellResult& row) {
  std::filesystem::create_directories(out_dir);
  const auto path = std::filesystem::path(out_dir) / "results.csv";
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  const CellResult rows[] = {row};
  write_results_csv(out, rows);
  std::printf("row written to     %s\n", path.string().c_str());
}

int cmd_single(const Environment& env, double d_max, double eps_bb, double e_r,
               double lambda, const ServiceRequirements& reqs,
               const OptimizeBudget& budget, std::uint64_t seed,
               const std::string& out_dir) {
  const CellSpec cell{d_max, lambda};
  CellResult row;
  row.env_label = env.label;
  row.d_max_m = d_max;
  row.eps_bb = eps_bb;
  row.e_r = e_r;
  row.lambda = lambda;
  row.opt = optimize(env, e_r, reqs, cell, budget, seed);
  const OptimizationResult& r = row.opt;

  std::printf("environment        %s\n", env.label.c_str());
  std::printf("cell               radius %g m, %g users/km^2 (%.4g expected)\n",
              d_max, lambda, cell.expected_users());
  std::printf("requirements       bb rate %g, eps %g | mtc rate %g, eps %g\n",
              reqs.rate_bb, reqs.eps_bb, reqs.rate_mtc, reqs.eps_mtc);
  std::printf("baseline           theta_lap %.4f deg, le_lap %.6g dB\n",
              rad2deg(r.baseline.theta_lap), r.baseline.le_lap_db);
  std::printf("slicing bound      omega_max %.9g (theta_rsr %.4f deg, le_rsr "
              "%.6g dB)\n",
              r.omega_max, rad2deg(r.bound.theta_rsr), r.bound.le_rsr_db);
  if (budget.fixed_omega && *budget.fixed_omega > r.omega_max) {
    std::printf("infeasible         requested omega_b %.9g exceeds the maximal "
                "slicing ratio %.9g;\n"
                "                   worst-case MTC coverage cannot be met at "
                "any elevation angle\n",
                *budget.fixed_omega, r.omega_max);
  } else if (r.feasible) {
    std::printf("optimum            theta %.4f deg, omega_b %.9g\n",
                rad2deg(r.best.theta), r.best.omega_b);
    std::printf("ari                %.9g (std err %.3g)\n", r.ari,
                r.ari_std_err);
    std::printf("reliability        bb %.9g (target %.9g), mtc %.9g (target "
                "%.9g)\n",
                r.bb_reliability, 1.0 - reqs.eps_bb, r.mtc_reliability,
                1.0 - reqs.eps_mtc);
  } else {
    std::printf("infeasible         no design point satisfies both coverage "
                "constraints\n");
  }
  std::printf("feasible           %s\n", r.feasible ? "true" : "false");
  write_single_row(out_dir, row);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"drone small cell deployment simulator and optimizer"};
  app.require_subcommand(1);

  // --- sweep ---
  auto* sweep = app.add_subcommand(
      "sweep", "run the full experiment grid from a JSON config");
  std::string config_path;
  sweep->add_option("config", config_path, "sweep config JSON file")
      ->required();
  unsigned jobs = default_jobs();
  sweep->add_option("--jobs", jobs, "max concurrent cells");
  std::optional<std::uint64_t> seed_override;
  sweep->add_option("--seed", seed_override, "override master_seed");
  std::string out_override;
  sweep->add_option("--out", out_override, "override output_dir");
  std::optional<std::size_t> geom_override, rate_override;
  sweep->add_option("--trials-geometry", geom_override,
                    "override geometry trials");
  sweep->add_option("--trials-rate", rate_override, "override rate trials");

  // --- single ---
  auto* single =
      app.add_subcommand("single", "optimize one deployment scenario");
  std::string env_name, env_file;
  single->add_option("--env", env_name,
                     "environment preset (suburban|urban|high_urban)");
  single->add_option("--env-file", env_file,
                     "JSON file with the eight topology constants");
  double s_dmax = 0.0, s_eps_bb = 0.0, s_er = 0.0, s_lambda = 2.0;
  single->add_option("--dmax", s_dmax, "cell radius, meters")->required();
  single->add_option("--eps-bb", s_eps_bb, "broadband outage tolerance")
      ->required();
  single->add_option("--er", s_er, "antenna efficiency in (0,1)")->required();
  single->add_option("--lambda", s_lambda, "user density per km^2");
  double s_rate_bb = 1.0, s_rate_mtc = 0.3, s_eps_mtc = 0.1;
  single->add_option("--rate-bb", s_rate_bb, "broadband rate, bits/symbol");
  single->add_option("--rate-mtc", s_rate_mtc, "MTC rate, bits/symbol");
  single->add_option("--eps-mtc", s_eps_mtc, "MTC outage tolerance");
  std::optional<double> s_omega;
  single->add_option("--omega", s_omega,
                     "pin the broadband slicing ratio instead of searching");
  std::uint64_t s_seed = 1;
  single->add_option("--seed", s_seed, "random seed");
  std::size_t s_geom = 100000, s_rate = 20000, s_grid = 40;
  single->add_option("--trials-geometry", s_geom, "geometry trials");
  single->add_option("--trials-rate", s_rate, "rate trials");
  single->add_option("--omega-grid", s_grid, "slicing-ratio grid size");
  std::string s_weighting = "users";
  single
      ->add_option("--ari-weighting", s_weighting,
                   "rate averaging: users (all users pooled) or snapshots "
                   "(mean of per-snapshot means)")
      ->check(CLI::IsMember({"users", "snapshots"}));
  std::string s_out = ".";
  single->add_option("--out", s_out, "output directory");

  // --- kappa ---
  auto* kappa = app.add_subcommand(
      "kappa", "emit the empirical kappa_SBC CDF only");
  std::vector<double> k_dmax = {10, 50, 100, 200, 500, 1000, 2000};
  kappa->add_option("--dmax", k_dmax, "cell radii, meters");
  double k_lambda = 2.0;
  kappa->add_option("--lambda", k_lambda, "user density per km^2");
  std::size_t k_trials = 100000;
  kappa->add_option("--trials", k_trials, "samples per radius");
  std::uint64_t k_seed = 1;
  kappa->add_option("--seed", k_seed, "random seed");
  std::string k_out = ".";
  kappa->add_option("--out", k_out, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;  // usage errors exit 2
  }

  try {
    if (sweep->parsed()) {
      SweepConfig config = load_sweep_config(config_path);
      if (seed_override) config.master_seed = *seed_override;
      if (!out_override.empty()) config.output_dir = out_override;
      if (geom_override) config.trials.geometry = *geom_override;
      if (rate_override) config.trials.rate = *rate_override;
      return run_sweep(config, jobs);
    }
    if (single->parsed()) {
      if (env_name.empty() && env_file.empty()) {
        std::fprintf(stderr, "error: one of --env or --env-file is required\n");
        return 2;
      }
      const Environment env = resolve_environment(env_name, env_file);
      ServiceRequirements reqs{s_rate_bb, s_eps_bb, s_rate_mtc, s_eps_mtc};
      reqs.validate();
      OptimizeBudget budget;
      budget.geometry_trials = s_geom;
      budget.rate_trials = s_rate;
      budget.omega_grid = s_grid;
      budget.fixed_omega = s_omega;
      budget.snapshot_weighted = (s_weighting == "snapshots");
      return cmd_single(env, s_dmax, s_eps_bb, s_er, s_lambda, reqs, budget,
                        s_seed, s_out);
    }
    // kappa
    std::filesystem::create_directories(k_out);
    const auto curves = kappa_cdf_curves(k_dmax, k_lambda, k_trials, k_seed);
    const auto path = std::filesystem::path(k_out) / "kappa_cdf.csv";
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    write_kappa_csv(out, curves);
    std::printf("kappa CDF written to %s\n", path.string().c_str());
    return 0;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
