#include "dsdsc/coverage.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dsdsc/log.hpp"
#include "dsdsc/numeric.hpp"
#include "dsdsc/search.hpp"

namespace dsdsc {

void ServiceRequirements::validate() const {
  if (!(rate_bb > 0.0 && rate_mtc > 0.0)) {
    throw std::invalid_argument("required rates must be > 0");
  }
  if (!(eps_bb > 0.0 && eps_bb < 1.0 && eps_mtc > 0.0 && eps_mtc < 1.0)) {
    throw std::invalid_argument("outage tolerances must lie in (0, 1)");
  }
  if (!(eps_bb < eps_mtc)) {
    throw std::invalid_argument(
        "broadband is the high-reliability class: eps_bb < eps_mtc required");
  }
}

double LapBaseline::snr_budget(double rate_req, double omega_b) const {
  if (!(omega_b > 0.0 && omega_b < 1.0)) {
    throw std::invalid_argument("slicing ratio must lie in (0, 1)");
  }
  return std::exp(log_exp2m1(rate_req / omega_b) +
                  le_lap_db * (kLn10 / 10.0));
}

ThetaRange default_theta_range() {
  return ThetaRange{deg2rad(1.0), deg2rad(89.0)};
}

double reliability_ple(const Environment& env, const AntennaConfig& cfg,
                       double kappa, double eps) {
  if (!(eps > 0.0 && eps < 1.0)) {
    throw std::invalid_argument("outage tolerance must lie in (0, 1)");
  }
  const double q = positioning_gain_quantile(env, cfg.reference_angle, kappa,
                                             1.0 - eps);
  return path_loss_equivalent_db(cfg, q);
}

MpleResult mple(const Environment& env, double efficiency, double kappa,
                double eps, ThetaRange range) {
  env.validate();
  if (!(range.lo > 0.0 && range.hi < kPi / 2.0 && range.lo < range.hi)) {
    throw std::invalid_argument("theta range must satisfy 0 < lo < hi < pi/2");
  }
  auto objective = [&](double theta) {
    return reliability_ple(env, AntennaConfig{efficiency, theta}, kappa, eps);
  };

  const double step = deg2rad(0.25);
  std::size_t best = 0;
  double best_le = objective(range.lo);
  std::vector<double> grid{range.lo};
  for (double theta = range.lo + step; theta < range.hi; theta += step) {
    grid.push_back(theta);
  }
  grid.push_back(range.hi);
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const double le = objective(grid[i]);
    if (le < best_le) {
      best_le = le;
      best = i;
    }
  }

  MpleResult result;
  result.boundary = (best == 0 || best + 1 == grid.size());
  if (result.boundary) {
    log_message(LogLevel::kWarn,
                "reliability loss minimum for '%s' sits on the theta range "
                "edge (%.3f deg); objective may not be unimodal here",
                env.label.c_str(), rad2deg(grid[best]));
    result.theta = grid[best];
    result.le_db = best_le;
    return result;
  }

  const ScalarOptimum fine = golden_section_min(
      objective, grid[best - 1], grid[best + 1], 1e-4);
  if (fine.value <= best_le) {
    result.theta = fine.x;
    result.le_db = fine.value;
  } else {
    result.theta = grid[best];
    result.le_db = best_le;
  }
  return result;
}

LapBaseline lap_baseline(const Environment& env, double efficiency,
                         const ServiceRequirements& reqs) {
  reqs.validate();
  const MpleResult m = mple(env, efficiency, 1.0, reqs.eps_bb);
  return LapBaseline{m.theta, m.le_db};
}

double slicing_demand_db(const ServiceRequirements& reqs, double omega_b) {
  if (!(omega_b > 0.0 && omega_b < 1.0)) {
    throw std::invalid_argument("slicing ratio must lie in (0, 1)");
  }
  const double ln_ratio = log_exp2m1(reqs.rate_mtc / (1.0 - omega_b)) -
                          log_exp2m1(reqs.rate_bb / omega_b);
  return 10.0 * ln_ratio / kLn10;
}

SlicingBound max_slicing_ratio(const Environment& env, double efficiency,
                               const ServiceRequirements& reqs,
                               const LapBaseline& baseline) {
  reqs.validate();
  const MpleResult rsr = mple(env, efficiency, 2.0, reqs.eps_mtc);
  SlicingBound bound;
  bound.theta_rsr = rsr.theta;
  bound.le_rsr_db = rsr.le_db;

  // Headroom available to the MTC demand ratio; the root of
  // demand(omega) = headroom is unique because the demand is strictly
  // increasing (MTC slice shrinks while the BB exponent relaxes).
  const double headroom_db = baseline.le_lap_db - rsr.le_db;
  auto excess = [&](double omega) {
    return slicing_demand_db(reqs, omega) - headroom_db;
  };
  const double lo = 1e-9;
  const double hi = 1.0 - 1e-9;
  if (excess(lo) > 0.0 || excess(hi) < 0.0) {
    bound.feasible = false;
    bound.omega_max = 0.0;
    return bound;
  }
  bound.omega_max = bisect_root(excess, lo, hi, 0.0, 1e-12 * (10.0 / kLn10));
  return bound;
}

SlicingBound max_slicing_ratio(const Environment& env, double efficiency,
                               const ServiceRequirements& reqs) {
  return max_slicing_ratio(env, efficiency, reqs,
                           lap_baseline(env, efficiency, reqs));
}

CoverageCheck bb_coverage(const Environment& env, const AntennaConfig& cfg,
                          double omega_b, std::span<const double> kappa_sbc,
                          const LapBaseline& baseline,
                          const ServiceRequirements& reqs) {
  (void)omega_b;  // cancels against the baseline power budget
  if (kappa_sbc.empty()) {
    throw std::invalid_argument("bb_coverage: no kappa_SBC samples");
  }
  cfg.validate();
  const double gain_threshold =
      baseline.le_lap_db + antenna_gain_db(cfg) -
      20.0 * std::log10(std::tan(cfg.reference_angle));
  double sum = 0.0;
  for (double kappa : kappa_sbc) {
    sum += GainMixture::at(env, cfg.reference_angle, kappa).cdf(gain_threshold);
  }
  const double reliability = sum / static_cast<double>(kappa_sbc.size());
  return CoverageCheck{reliability >= 1.0 - reqs.eps_bb, reliability};
}

CoverageCheck mtc_coverage(const Environment& env, const AntennaConfig& cfg,
                           double omega_b, const LapBaseline& baseline,
                           const ServiceRequirements& reqs) {
  cfg.validate();
  if (!(omega_b > 0.0 && omega_b < 1.0)) {
    throw std::invalid_argument(
        "mtc_coverage: omega_b must lie in (0, 1); an empty MTC slice cannot "
        "be served");
  }
  const double loss_threshold =
      baseline.le_lap_db - slicing_demand_db(reqs, omega_b);
  const double gain_threshold =
      loss_threshold + antenna_gain_db(cfg) -
      20.0 * std::log10(std::tan(cfg.reference_angle));
  const double reliability =
      GainMixture::at(env, cfg.reference_angle, 2.0).cdf(gain_threshold);
  return CoverageCheck{reliability >= 1.0 - reqs.eps_mtc, reliability};
}

}  // namespace dsdsc
