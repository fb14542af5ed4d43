#ifndef DSDSC_OPTIMIZER_HPP
#define DSDSC_OPTIMIZER_HPP

#include <cstdint>
#include <limits>
#include <optional>

#include "dsdsc/coverage.hpp"
#include "dsdsc/geometry.hpp"

namespace dsdsc {

/// One candidate deployment: reference elevation angle and broadband
/// slicing ratio.
struct DesignPoint {
  double theta = std::numeric_limits<double>::quiet_NaN();
  double omega_b = std::numeric_limits<double>::quiet_NaN();
};

/// Test hooks and estimator variants for the rate comparison.
struct AriOptions {
  bool pin_drone_at_center = false;  // bypass SBC positioning
  bool share_fading = false;         // same draws for both systems
  bool snapshot_weighted = false;    // mean of per-snapshot means
};

struct AriEstimate {
  double ari = 0.0;
  double std_err = 0.0;
  double bb_reliability = 0.0;  // mean coverage CDF over this set's kappa_SBC
};

struct OptimizeBudget {
  std::size_t geometry_trials = 100000;  // kappa_SBC samples for constraints
  std::size_t rate_trials = 20000;       // snapshots per rate estimate
  std::size_t omega_grid = 40;           // log-spaced slicing candidates
  double theta_tol = 1e-3;               // radians
  std::optional<double> fixed_omega;     // evaluate only this slicing ratio
  bool snapshot_weighted = false;

  void validate() const;
};

struct OptimizationResult {
  DesignPoint best;
  double ari = std::numeric_limits<double>::quiet_NaN();
  double ari_std_err = std::numeric_limits<double>::quiet_NaN();
  double bb_reliability = std::numeric_limits<double>::quiet_NaN();
  double mtc_reliability = std::numeric_limits<double>::quiet_NaN();
  double omega_max = std::numeric_limits<double>::quiet_NaN();
  std::size_t geometry_trials = 0;
  std::size_t rate_trials = 0;
  std::uint64_t seed = 0;
  bool feasible = false;
  LapBaseline baseline;
  SlicingBound bound;
};

/// Rate of a broadband user served by the repositioned drone, given one
/// realized positioning gain for that geometry. At the calibration loss the
/// rate equals the required rate exactly.
double rate_dhop(const AntennaConfig& cfg, double omega_b, double rate_bb_req,
                 double gain_db, const LapBaseline& baseline);

/// Same rate formula pinned to the static reference deployment angle.
double rate_static(double efficiency, double omega_b, double rate_bb_req,
                   double gain_db, const LapBaseline& baseline);

/// Ratio-of-sums Monte Carlo estimate of E[rate under repositioning] /
/// E[rate under the static reference]. Each snapshot draws one user field
/// (conditioned on K >= 1) shared by both systems; fading is drawn
/// independently per system since the elevation angles differ. Consumes one
/// value from `rng` as the per-trial stream derivation key, so trials are
/// reconstructible and order-independent.
AriEstimate ari_estimate(const Environment& env, const AntennaConfig& cfg,
                         double omega_b, const ServiceRequirements& reqs,
                         const CellSpec& cell, std::size_t trials,
                         RandomStream& rng, const LapBaseline& baseline,
                         const AriOptions& options = {});

/// Full deployment search: outer log-spaced grid over the slicing ratio up
/// to its upper bound, per-ratio feasible elevation interval from the MTC
/// boundary (bisection around the kappa=2 loss minimum) intersected with
/// broadband coverage, then golden-section rate maximization with common
/// random numbers across all candidates. Deterministic given `seed`.
OptimizationResult optimize(const Environment& env, double efficiency,
                            const ServiceRequirements& reqs,
                            const CellSpec& cell, const OptimizeBudget& budget,
                            std::uint64_t seed);

}  // namespace dsdsc

#endif  // DSDSC_OPTIMIZER_HPP
