#ifndef DSDSC_COVERAGE_HPP
#define DSDSC_COVERAGE_HPP

#include <span>

#include "dsdsc/channel.hpp"
#include "dsdsc/environment.hpp"

namespace dsdsc {

/// Per-class service demands: required rates in bits/symbol and outage
/// tolerances. Broadband is the high-reliability class, so eps_bb < eps_mtc.
struct ServiceRequirements {
  double rate_bb = 1.0;
  double eps_bb = 1e-3;
  double rate_mtc = 0.3;
  double eps_mtc = 0.1;

  void validate() const;  // throws std::invalid_argument
};

/// Static center-of-cell reference deployment: the elevation angle that
/// minimizes the reliability path-loss equivalent at the cell edge, and
/// that minimum. Independent of the slicing ratio; the power budget that
/// would realize it is exposed as an accessor because the common
/// frequency/cell-size constant cancels out of every ratio this project
/// reports.
struct LapBaseline {
  double theta_lap = 0.0;  // radians
  double le_lap_db = 0.0;

  /// (2^(rate_req/omega_b) - 1) * 10^(le_lap/10): the max-power SNR budget
  /// in path-loss-equivalent units. Grows without bound as omega_b -> 0.
  double snr_budget(double rate_req, double omega_b) const;
};

/// Upper bound on the broadband slicing ratio: beyond omega_max no
/// elevation angle can keep worst-case machine-type coverage within its
/// outage tolerance under the baseline power budget.
struct SlicingBound {
  double theta_rsr = 0.0;  // radians, argmin of the kappa=2 reliability loss
  double le_rsr_db = 0.0;
  double omega_max = 0.0;
  bool feasible = true;
};

struct MpleResult {
  double theta = 0.0;  // radians
  double le_db = 0.0;
  bool boundary = false;  // argmin hit the search range edge
};

struct CoverageCheck {
  bool pass = false;
  double reliability = 0.0;
};

struct ThetaRange {
  double lo;
  double hi;
};

ThetaRange default_theta_range();  // [1 deg, 89 deg]

/// Path-loss equivalent met with probability 1 - eps at normalized
/// distance kappa: the (1 - eps) quantile of the positioning gain plus the
/// deterministic antenna/distance terms.
double reliability_ple(const Environment& env, const AntennaConfig& cfg,
                       double kappa, double eps);

/// Minimum of reliability_ple over the elevation angle: coarse 0.25-degree
/// grid followed by golden-section refinement to 1e-4 rad. A minimum on the
/// range edge is flagged and logged, not silently accepted.
MpleResult mple(const Environment& env, double efficiency, double kappa,
                double eps, ThetaRange range = default_theta_range());

/// Cell-edge calibration of the static reference deployment at the
/// broadband outage tolerance.
LapBaseline lap_baseline(const Environment& env, double efficiency,
                         const ServiceRequirements& reqs);

/// Solves for the slicing ratio at which the machine-type worst-case rate
/// demand exactly exhausts the baseline power headroom over the kappa=2
/// reliability loss. The demand ratio is strictly increasing in omega, so
/// the root is unique.
SlicingBound max_slicing_ratio(const Environment& env, double efficiency,
                               const ServiceRequirements& reqs,
                               const LapBaseline& baseline);
SlicingBound max_slicing_ratio(const Environment& env, double efficiency,
                               const ServiceRequirements& reqs);

/// Broadband coverage estimate: the mean over kappa_SBC samples of the
/// exact fading CDF at the baseline loss threshold (fading is integrated
/// analytically; only geometry is sampled). Pass iff >= 1 - eps_bb.
/// The slicing ratio cancels out of this constraint; it is kept in the
/// signature as part of the design point being checked.
CoverageCheck bb_coverage(const Environment& env, const AntennaConfig& cfg,
                          double omega_b, std::span<const double> kappa_sbc,
                          const LapBaseline& baseline,
                          const ServiceRequirements& reqs);

/// Machine-type coverage at the worst-case normalized distance kappa = 2,
/// with the loss threshold shrunk by the slicing demand ratio. Pass iff
/// >= 1 - eps_mtc. omega_b = 1 (empty MTC slice) is rejected.
CoverageCheck mtc_coverage(const Environment& env, const AntennaConfig& cfg,
                           double omega_b, const LapBaseline& baseline,
                           const ServiceRequirements& reqs);

/// 10*log10 of the slicing demand ratio (2^(rate_mtc/(1-omega)) - 1) /
/// (2^(rate_bb/omega) - 1), evaluated in the log domain so extreme slicing
/// ratios stay finite.
double slicing_demand_db(const ServiceRequirements& reqs, double omega_b);

}  // namespace dsdsc

#endif  // DSDSC_COVERAGE_HPP
