#include "dsdsc/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cinttypes>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <thread>

#include <nlohmann/json.hpp>

#include "dsdsc/log.hpp"
#include "dsdsc/numeric.hpp"

namespace dsdsc {

namespace {

constexpr std::uint64_t kCellTag = 0x63656c6cULL;   // "cell"
constexpr std::uint64_t kKappaTag = 0x6b617070ULL;  // "kapp"

std::string fmt9(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.9g", value);
  return buf;
}

std::string sanitize_error(std::string text) {
  for (char& c : text) {
    if (c == ',' || c == '\n' || c == '\r') c = ';';
  }
  return text;
}

double require_number(const nlohmann::json& doc, const char* key) {
  if (!doc.contains(key) || !doc[key].is_number()) {
    throw std::invalid_argument(std::string("config: missing or non-numeric '") +
                                key + "'");
  }
  return doc[key].get<double>();
}

Environment parse_environment(const nlohmann::json& entry) {
  if (entry.is_string()) {
    const std::string name = entry.get<std::string>();
    if (auto preset = environment_preset(name)) return *preset;
    throw std::invalid_argument("config: unknown environment preset '" + name +
                                "' (use suburban|urban|high_urban or an "
                                "inline object)");
  }
  if (!entry.is_object()) {
    throw std::invalid_argument(
        "config: environments entries must be preset names or objects");
  }
  Environment env;
  env.a = require_number(entry, "a");
  env.b = require_number(entry, "b");
  env.mu_los = require_number(entry, "mu_los");
  env.mu_nlos = require_number(entry, "mu_nlos");
  env.d_los = require_number(entry, "d_los");
  env.d_nlos = require_number(entry, "d_nlos");
  env.c_los = require_number(entry, "c_los");
  env.c_nlos = require_number(entry, "c_nlos");
  env.label = entry.value("label", std::string("custom"));
  env.validate();
  return env;
}

std::vector<double> parse_number_list(const nlohmann::json& doc,
                                      const char* key) {
  if (!doc.contains(key) || !doc[key].is_array() || doc[key].empty()) {
    throw std::invalid_argument(std::string("config: '") + key +
                                "' must be a nonempty array");
  }
  std::vector<double> values;
  for (const auto& v : doc[key]) {
    if (!v.is_number()) {
      throw std::invalid_argument(std::string("config: '") + key +
                                  "' entries must be numeric");
    }
    values.push_back(v.get<double>());
  }
  return values;
}

CellResult run_one_cell(const SweepConfig& config, const Environment& env,
                        double d_max, double eps_bb, double e_r,
                        std::uint64_t cell_seed) {
  CellResult row;
  row.env_label = env.label;
  row.d_max_m = d_max;
  row.eps_bb = eps_bb;
  row.e_r = e_r;
  row.lambda = config.lambda_per_km2;
  try {
    OptimizeBudget budget;
    budget.geometry_trials = config.trials.geometry;
    budget.rate_trials = config.trials.rate;
    budget.omega_grid = config.trials.omega_grid;
    budget.snapshot_weighted = config.snapshot_weighted_ari;
    row.opt = optimize(env, e_r, config.requirements(eps_bb),
                       CellSpec{d_max, config.lambda_per_km2}, budget,
                       cell_seed);
  } catch (const std::exception& e) {
    row.error = e.what();
    log_message(LogLevel::kError, "cell (%s, %g m, %g, %g) failed: %s",
                env.label.c_str(), d_max, eps_bb, e_r, e.what());
  }
  return row;
}

}  // namespace

void SweepConfig::validate() const {
  if (environments.empty() || d_max_list_m.empty() || eps_bb_list.empty() ||
      e_r_list.empty()) {
    throw std::invalid_argument("config: all sweep axes must be nonempty");
  }
  for (const Environment& env : environments) env.validate();
  for (double d : d_max_list_m) {
    if (!(d > 0.0)) throw std::invalid_argument("config: d_max_m must be > 0");
  }
  for (double eps : eps_bb_list) {
    (void)requirements(eps);  // validates each eps against the MTC class
  }
  for (double er : e_r_list) {
    if (!(er > 0.0 && er <= 1.0)) {
      throw std::invalid_argument("config: e_r must lie in (0, 1]");
    }
  }
  if (!(lambda_per_km2 > 0.0)) {
    throw std::invalid_argument("config: lambda_per_km2 must be > 0");
  }
  if (!(frequency_hz > 0.0)) {
    throw std::invalid_argument("config: frequency_hz must be > 0");
  }
}

ServiceRequirements SweepConfig::requirements(double eps_bb) const {
  ServiceRequirements reqs{rate_bb, eps_bb, rate_mtc, eps_mtc};
  reqs.validate();
  return reqs;
}

SweepConfig SweepConfig::default_grid(std::uint64_t master_seed) {
  SweepConfig config;
  config.environments = {suburban_environment(), urban_environment(),
                         high_urban_environment()};
  config.d_max_list_m = {10.0, 50.0, 100.0, 200.0, 500.0, 1000.0, 2000.0};
  config.eps_bb_list = {1e-3, 1e-4, 1e-5};
  config.e_r_list = {0.6};
  config.master_seed = master_seed;
  return config;
}

SweepConfig parse_sweep_config(const nlohmann::json& doc) {
  if (!doc.is_object()) {
    throw std::invalid_argument("config: top-level JSON must be an object");
  }
  static const char* known[] = {
      "environments", "d_max_m",       "eps_bb",        "e_r",
      "lambda_per_km2", "frequency_hz", "requirements",  "trials",
      "master_seed",  "output_dir",    "ari_weighting"};
  for (const auto& item : doc.items()) {
    if (std::find_if(std::begin(known), std::end(known),
                     [&](const char* k) { return item.key() == k; }) ==
        std::end(known)) {
      throw std::invalid_argument("config: unknown key '" + item.key() + "'");
    }
  }

  SweepConfig config;
  if (!doc.contains("environments") || !doc["environments"].is_array() ||
      doc["environments"].empty()) {
    throw std::invalid_argument(
        "config: 'environments' must be a nonempty array");
  }
  for (const auto& entry : doc["environments"]) {
    config.environments.push_back(parse_environment(entry));
  }
  config.d_max_list_m = parse_number_list(doc, "d_max_m");
  config.eps_bb_list = parse_number_list(doc, "eps_bb");
  config.e_r_list = parse_number_list(doc, "e_r");
  if (doc.contains("lambda_per_km2")) {
    config.lambda_per_km2 = require_number(doc, "lambda_per_km2");
  }
  if (doc.contains("frequency_hz")) {
    config.frequency_hz = require_number(doc, "frequency_hz");
  }
  if (doc.contains("requirements")) {
    const auto& reqs = doc["requirements"];
    if (!reqs.is_object()) {
      throw std::invalid_argument("config: 'requirements' must be an object");
    }
    if (reqs.contains("rate_bb")) config.rate_bb = require_number(reqs, "rate_bb");
    if (reqs.contains("rate_mtc"))
      config.rate_mtc = require_number(reqs, "rate_mtc");
    if (reqs.contains("eps_mtc")) config.eps_mtc = require_number(reqs, "eps_mtc");
  }
  if (doc.contains("trials")) {
    const auto& trials = doc["trials"];
    if (!trials.is_object()) {
      throw std::invalid_argument("config: 'trials' must be an object");
    }
    if (trials.contains("geometry")) {
      config.trials.geometry =
          static_cast<std::size_t>(require_number(trials, "geometry"));
    }
    if (trials.contains("rate")) {
      config.trials.rate =
          static_cast<std::size_t>(require_number(trials, "rate"));
    }
    if (trials.contains("omega_grid")) {
      config.trials.omega_grid =
          static_cast<std::size_t>(require_number(trials, "omega_grid"));
    }
  }
  if (!doc.contains("master_seed") ||
      !doc["master_seed"].is_number_unsigned()) {
    throw std::invalid_argument(
        "config: 'master_seed' (non-negative integer) is mandatory; "
        "wall-clock seeding is not supported");
  }
  config.master_seed = doc["master_seed"].get<std::uint64_t>();
  if (doc.contains("output_dir")) {
    if (!doc["output_dir"].is_string()) {
      throw std::invalid_argument("config: 'output_dir' must be a string");
    }
    config.output_dir = doc["output_dir"].get<std::string>();
  }
  if (doc.contains("ari_weighting")) {
    const std::string mode = doc["ari_weighting"].get<std::string>();
    if (mode == "snapshots") {
      config.snapshot_weighted_ari = true;
    } else if (mode != "users") {
      throw std::invalid_argument(
          "config: 'ari_weighting' must be \"users\" or \"snapshots\"");
    }
  }
  config.validate();
  return config;
}

SweepConfig load_sweep_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::invalid_argument("config: cannot open '" + path + "'");
  }
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument("config '" + path + "': " + e.what());
  }
  return parse_sweep_config(doc);
}

std::vector<CellResult> run_cells(const SweepConfig& config, unsigned jobs) {
  config.validate();
  struct Cell {
    const Environment* env;
    double d_max, eps_bb, e_r;
    std::uint64_t seed;
  };
  std::vector<Cell> cells;
  std::uint64_t index = 0;
  const std::uint64_t cell_key = mix_seed(config.master_seed, kCellTag);
  for (const Environment& env : config.environments) {
    for (double d_max : config.d_max_list_m) {
      for (double eps_bb : config.eps_bb_list) {
        for (double e_r : config.e_r_list) {
          cells.push_back(
              Cell{&env, d_max, eps_bb, e_r, mix_seed(cell_key, index)});
          ++index;
        }
      }
    }
  }

  std::vector<CellResult> rows(cells.size());
  const unsigned workers =
      std::max(1u, std::min<unsigned>(jobs, cells.size()));
  if (workers == 1) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      const Cell& c = cells[i];
      log_message(LogLevel::kInfo, "cell %zu/%zu: %s d_max=%g eps_bb=%g",
                  i + 1, cells.size(), c.env->label.c_str(), c.d_max,
                  c.eps_bb);
      rows[i] = run_one_cell(config, *c.env, c.d_max, c.eps_bb, c.e_r, c.seed);
    }
    return rows;
  }

  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&]() {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= cells.size()) return;
        const Cell& c = cells[i];
        rows[i] =
            run_one_cell(config, *c.env, c.d_max, c.eps_bb, c.e_r, c.seed);
      }
    });
  }
  for (std::thread& t : pool) t.join();
  return rows;
}

std::vector<KappaCdf> kappa_cdf_curves(std::span<const double> radii_m,
                                       double lambda_per_km2,
                                       std::size_t trials,
                                       std::uint64_t master_seed) {
  const std::uint64_t kappa_key = mix_seed(master_seed, kKappaTag);
  std::vector<KappaCdf> curves;
  for (std::size_t r = 0; r < radii_m.size(); ++r) {
    const CellSpec cell{radii_m[r], lambda_per_km2};
    RandomStream rng(mix_seed(kappa_key, r));
    std::vector<double> samples = kappa_sbc_samples(cell, trials, rng);
    std::sort(samples.begin(), samples.end());

    KappaCdf curve;
    curve.d_max_m = cell.radius_m;
    curve.kappa.reserve(1000);
    curve.cdf.reserve(1000);
    for (int i = 0; i < 1000; ++i) {
      const double kappa = static_cast<double>(i) / 999.0;
      const auto it =
          std::upper_bound(samples.begin(), samples.end(), kappa);
      curve.kappa.push_back(kappa);
      curve.cdf.push_back(static_cast<double>(it - samples.begin()) /
                          static_cast<double>(samples.size()));
    }
    curves.push_back(std::move(curve));
  }
  return curves;
}

std::vector<KappaCdf> run_kappa_cdfs(const SweepConfig& config) {
  config.validate();
  return kappa_cdf_curves(config.d_max_list_m, config.lambda_per_km2,
                          config.trials.geometry, config.master_seed);
}

void write_results_csv(std::ostream& out, std::span<const CellResult> rows) {
  const bool any_error =
      std::any_of(rows.begin(), rows.end(),
                  [](const CellResult& r) { return !r.error.empty(); });
  out << "env,d_max_m,eps_bb,e_r,lambda,theta_lap_deg,le_lap_db,omega_max,"
         "theta_opt_deg,omega_opt,ari,bb_rel,mtc_rel,trials,seed,feasible";
  if (any_error) out << ",error";
  out << "\n";
  for (const CellResult& row : rows) {
    out << row.env_label << ',' << fmt9(row.d_max_m) << ','
        << fmt9(row.eps_bb) << ',' << fmt9(row.e_r) << ',' << fmt9(row.lambda)
        << ',' << fmt9(rad2deg(row.opt.baseline.theta_lap)) << ','
        << fmt9(row.opt.baseline.le_lap_db) << ',' << fmt9(row.opt.omega_max)
        << ',' << fmt9(rad2deg(row.opt.best.theta)) << ','
        << fmt9(row.opt.best.omega_b) << ',' << fmt9(row.opt.ari) << ','
        << fmt9(row.opt.bb_reliability) << ','
        << fmt9(row.opt.mtc_reliability) << ',' << row.opt.rate_trials << ','
        << row.opt.seed << ',' << (row.opt.feasible ? "true" : "false");
    if (any_error) out << ',' << sanitize_error(row.error);
    out << "\n";
  }
}

void write_kappa_csv(std::ostream& out, std::span<const KappaCdf> curves) {
  out << "d_max_m,kappa,cdf\n";
  for (const KappaCdf& curve : curves) {
    for (std::size_t i = 0; i < curve.kappa.size(); ++i) {
      out << fmt9(curve.d_max_m) << ',' << fmt9(curve.kappa[i]) << ','
          << fmt9(curve.cdf[i]) << "\n";
    }
  }
}

int run_sweep(const SweepConfig& config, unsigned jobs) {
  config.validate();
  std::filesystem::create_directories(config.output_dir);
  const std::vector<CellResult> rows = run_cells(config, jobs);
  const std::vector<KappaCdf> curves = run_kappa_cdfs(config);

  const auto results_path =
      std::filesystem::path(config.output_dir) / "results.csv";
  const auto kappa_path =
      std::filesystem::path(config.output_dir) / "kappa_cdf.csv";
  {
    std::ofstream out(results_path, std::ios::binary);
    if (!out) {
      throw std::runtime_error("cannot write " + results_path.string());
    }
    write_results_csv(out, rows);
  }
  {
    std::ofstream out(kappa_path, std::ios::binary);
    if (!out) {
      throw std::runtime_error("cannot write " + kappa_path.string());
    }
    write_kappa_csv(out, curves);
  }

  const bool any_error =
      std::any_of(rows.begin(), rows.end(),
                  [](const CellResult& r) { return !r.error.empty(); });
  return any_error ? 1 : 0;
}

}  // namespace dsdsc
