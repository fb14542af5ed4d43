#ifndef DSDSC_SWEEP_HPP
#define DSDSC_SWEEP_HPP

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "dsdsc/optimizer.hpp"

#include <nlohmann/json_fwd.hpp>

namespace dsdsc {

struct TrialBudget {
  std::size_t geometry = 100000;
  std::size_t rate = 20000;
  std::size_t omega_grid = 40;
};

/// Experiment grid: one optimization per (environment, radius, eps_bb, E_r)
/// cell at fixed user density. The carrier frequency is recorded for
/// provenance only; it enters the link budget through a constant that
/// cancels out of every reported ratio.
struct SweepConfig {
  std::vector<Environment> environments;
  std::vector<double> d_max_list_m;
  std::vector<double> eps_bb_list;
  std::vector<double> e_r_list;
  double lambda_per_km2 = 2.0;
  double frequency_hz = 2.0e9;
  double rate_bb = 1.0;
  double rate_mtc = 0.3;
  double eps_mtc = 0.1;
  TrialBudget trials;
  std::uint64_t master_seed = 0;
  std::string output_dir = ".";
  bool snapshot_weighted_ari = false;

  void validate() const;
  ServiceRequirements requirements(double eps_bb) const;

  /// The reference grid: three environments x seven radii x three broadband
  /// outage tolerances at E_r = 0.6, lambda = 2 users/km^2.
  static SweepConfig default_grid(std::uint64_t master_seed);
};

/// Parses a config JSON document. Unknown keys are rejected; missing
/// required keys and invalid values throw std::invalid_argument naming the
/// offending key. master_seed is mandatory: no wall-clock seeding.
SweepConfig parse_sweep_config(const nlohmann::json& doc);

/// Loads and parses a config file; JSON syntax errors carry the file name
/// and line/column position.
SweepConfig load_sweep_config(const std::string& path);

struct CellResult {
  std::string env_label;
  double d_max_m = 0.0;
  double eps_bb = 0.0;
  double e_r = 0.0;
  double lambda = 0.0;
  OptimizationResult opt;
  std::string error;  // nonempty if the cell failed hard
};

struct KappaCdf {
  double d_max_m = 0.0;
  std::vector<double> kappa;  // 1000-point grid on [0, 1]
  std::vector<double> cdf;
};

/// Runs every cell of the grid, up to `jobs` concurrently. Cell seeds are
/// derived from (master_seed, cell index), and rows are returned in config
/// order, so results are identical for any job count.
std::vector<CellResult> run_cells(const SweepConfig& config, unsigned jobs);

/// Empirical kappa_SBC CDF on a 1000-point grid, one curve per radius.
/// Curve seeds derive from (master_seed, radius index).
std::vector<KappaCdf> kappa_cdf_curves(std::span<const double> radii_m,
                                       double lambda_per_km2,
                                       std::size_t trials,
                                       std::uint64_t master_seed);

/// The config-driven form used by run_sweep (trials.geometry samples each).
std::vector<KappaCdf> run_kappa_cdfs(const SweepConfig& config);

/// Fixed-schema CSV; floating-point fields carry 9 significant digits. If
/// any row failed, a trailing `error` column is appended.
void write_results_csv(std::ostream& out, std::span<const CellResult> rows);
void write_kappa_csv(std::ostream& out, std::span<const KappaCdf> curves);

/// Full sweep: computes all cells and kappa CDFs, writes results.csv and
/// kappa_cdf.csv under config.output_dir. Returns 0 on full success,
/// nonzero if any cell failed hard (infeasible cells are recorded rows, not
/// failures).
int run_sweep(const SweepConfig& config, unsigned jobs);

}  // namespace dsdsc

#endif  // DSDSC_SWEEP_HPP
