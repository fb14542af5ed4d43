#include "dsdsc/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "dsdsc/log.hpp"
#include "dsdsc/numeric.hpp"
#include "dsdsc/search.hpp"

namespace dsdsc {

namespace {

// Per-user fading primitives and geometry, drawn once and replayed for
// every (theta, omega) candidate: common random numbers make the noisy
// objective a fixed function of the design point.
struct SnapshotSet {
  std::vector<std::uint32_t> offsets;  // trials + 1
  std::vector<double> kappa_d;         // user -> drone position
  std::vector<double> u_d;             // group pick, repositioned system
  std::vector<double> z_d;             // excess-loss draw, repositioned
  std::vector<double> le_s;            // realized static path loss, per user
  std::vector<double> kappa_sbc;       // per trial
};

// Realized positioning gain from stored primitives. sin(atan(t/kappa)) is
// expanded as t/hypot(t, kappa); atan2 maps kappa = 0 to pi/2 exactly.
inline double user_gain_db(const Environment& env, double tan_theta,
                           double kappa, double u, double z) {
  const double elev_deg = std::atan2(tan_theta, kappa) * kDegPerRad;
  const double p_los = 1.0 / (1.0 + env.a * std::exp(-env.b * (elev_deg -
                                                               env.a)));
  const double distance_db =
      20.0 * (std::log10(std::hypot(tan_theta, kappa)) - std::log10(tan_theta));
  if (u < p_los) {
    return env.mu_los + env.d_los * std::exp(-env.c_los * elev_deg) * z +
           distance_db;
  }
  return env.mu_nlos + env.d_nlos * std::exp(-env.c_nlos * elev_deg) * z +
         distance_db;
}

SnapshotSet draw_snapshots(const Environment& env, double efficiency,
                           const CellSpec& cell, const LapBaseline& baseline,
                           std::size_t trials, std::uint64_t key,
                           const AriOptions& options) {
  SnapshotSet snaps;
  snaps.offsets.reserve(trials + 1);
  snaps.offsets.push_back(0);
  snaps.kappa_sbc.reserve(trials);

  const AntennaConfig cfg_lap{efficiency, baseline.theta_lap};
  const double tan_lap = std::tan(baseline.theta_lap);
  const double ple_lap =
      -antenna_gain_db(cfg_lap) + 20.0 * std::log10(tan_lap);

  for (std::size_t t = 0; t < trials; ++t) {
    RandomStream rng = RandomStream::derived(key, t);
    const UserField field = sample_user_field(cell, rng);
    const Circle sbc = smallest_bounding_circle(field.points);
    snaps.kappa_sbc.push_back(sbc.radius / cell.radius_m);
    const Point drone =
        options.pin_drone_at_center ? Point{0.0, 0.0} : sbc.center;
    for (const Point& p : field.points) {
      const double kappa_d = normalized_distance(p, drone, cell);
      const double kappa_s = normalized_distance(p, Point{0.0, 0.0}, cell);
      const double u_d = rng.uniform();
      const double z_d = rng.normal();
      double u_s = u_d;
      double z_s = z_d;
      if (!options.share_fading) {
        u_s = rng.uniform();
        z_s = rng.normal();
      }
      snaps.kappa_d.push_back(kappa_d);
      snaps.u_d.push_back(u_d);
      snaps.z_d.push_back(z_d);
      snaps.le_s.push_back(ple_lap +
                           user_gain_db(env, tan_lap, kappa_s, u_s, z_s));
    }
    snaps.offsets.push_back(static_cast<std::uint32_t>(snaps.kappa_d.size()));
  }
  return snaps;
}

AriEstimate evaluate_snapshots(const SnapshotSet& snaps,
                               const Environment& env,
                               const AntennaConfig& cfg, double omega_b,
                               const ServiceRequirements& reqs,
                               const LapBaseline& baseline,
                               bool snapshot_weighted,
                               bool with_reliability) {
  const double tan_theta = std::tan(cfg.reference_angle);
  const double ple_const =
      -antenna_gain_db(cfg) + 20.0 * std::log10(tan_theta);
  const double gain_threshold = baseline.le_lap_db - ple_const;
  const double w_req = log_exp2m1(reqs.rate_bb / omega_b);
  const double ln10_over_10 = kLn10 / 10.0;

  const std::size_t trials = snaps.offsets.size() - 1;
  double sum_a = 0.0;
  double sum_b = 0.0;
  std::vector<double> a(trials), b(trials);
  for (std::size_t t = 0; t < trials; ++t) {
    double sum_d = 0.0;
    double sum_s = 0.0;
    for (std::uint32_t i = snaps.offsets[t]; i < snaps.offsets[t + 1]; ++i) {
      const double gain_d =
          user_gain_db(env, tan_theta, snaps.kappa_d[i], snaps.u_d[i],
                       snaps.z_d[i]);
      const double le_d = ple_const + gain_d;
      sum_d += omega_b *
               log2_1p_exp(w_req + (baseline.le_lap_db - le_d) * ln10_over_10);
      sum_s += omega_b *
               log2_1p_exp(w_req +
                           (baseline.le_lap_db - snaps.le_s[i]) *
                               ln10_over_10);
    }
    const double users =
        static_cast<double>(snaps.offsets[t + 1] - snaps.offsets[t]);
    a[t] = snapshot_weighted ? sum_d / users : sum_d;
    b[t] = snapshot_weighted ? sum_s / users : sum_s;
    sum_a += a[t];
    sum_b += b[t];
  }

  AriEstimate est;
  est.ari = sum_a / sum_b;
  double resid2 = 0.0;
  for (std::size_t t = 0; t < trials; ++t) {
    const double r = a[t] - est.ari * b[t];
    resid2 += r * r;
  }
  est.std_err = std::sqrt(resid2) / sum_b;

  if (with_reliability) {
    double rel = 0.0;
    for (double kappa : snaps.kappa_sbc) {
      rel += GainMixture::at(env, cfg.reference_angle, kappa)
                 .cdf(gain_threshold);
    }
    est.bb_reliability = rel / static_cast<double>(trials);
  }
  return est;
}

// Mean coverage CDF over a kappa_SBC sample set; exact-zero kappas (single
// user snapshots) collapse to one evaluation.
double bb_reliability_over(const Environment& env, const AntennaConfig& cfg,
                           std::span<const double> kappa_sbc,
                           const LapBaseline& baseline) {
  const double gain_threshold =
      baseline.le_lap_db + antenna_gain_db(cfg) -
      20.0 * std::log10(std::tan(cfg.reference_angle));
  std::size_t zeros = 0;
  double sum = 0.0;
  for (double kappa : kappa_sbc) {
    if (kappa == 0.0) {
      ++zeros;
    } else {
      sum += GainMixture::at(env, cfg.reference_angle, kappa)
                 .cdf(gain_threshold);
    }
  }
  if (zeros > 0) {
    sum += static_cast<double>(zeros) *
           GainMixture::at(env, cfg.reference_angle, 0.0).cdf(gain_threshold);
  }
  return sum / static_cast<double>(kappa_sbc.size());
}

}  // namespace

void OptimizeBudget::validate() const {
  if (geometry_trials < 1000 || rate_trials < 1000) {
    throw std::invalid_argument(
        "optimize budget: need at least 1000 geometry and 1000 rate trials");
  }
  if (omega_grid < 1) {
    throw std::invalid_argument("optimize budget: omega grid must be >= 1");
  }
  if (!(theta_tol > 0.0)) {
    throw std::invalid_argument("optimize budget: theta tolerance must be > 0");
  }
  if (fixed_omega && !(*fixed_omega > 0.0 && *fixed_omega < 1.0)) {
    throw std::invalid_argument(
        "optimize budget: fixed omega must lie in (0, 1)");
  }
}

double rate_dhop(const AntennaConfig& cfg, double omega_b, double rate_bb_req,
                 double gain_db, const LapBaseline& baseline) {
  if (!(omega_b > 0.0 && omega_b < 1.0)) {
    throw std::invalid_argument("slicing ratio must lie in (0, 1)");
  }
  const double le = path_loss_equivalent_db(cfg, gain_db);
  return sliced_rate(omega_b, rate_bb_req, baseline.le_lap_db - le);
}

double rate_static(double efficiency, double omega_b, double rate_bb_req,
                   double gain_db, const LapBaseline& baseline) {
  return rate_dhop(AntennaConfig{efficiency, baseline.theta_lap}, omega_b,
                   rate_bb_req, gain_db, baseline);
}

AriEstimate ari_estimate(const Environment& env, const AntennaConfig& cfg,
                         double omega_b, const ServiceRequirements& reqs,
                         const CellSpec& cell, std::size_t trials,
                         RandomStream& rng, const LapBaseline& baseline,
                         const AriOptions& options) {
  if (trials < 1000) {
    throw std::invalid_argument("ari_estimate: need at least 1000 trials");
  }
  cfg.validate();
  if (!(omega_b > 0.0 && omega_b < 1.0)) {
    throw std::invalid_argument("slicing ratio must lie in (0, 1)");
  }
  const std::uint64_t key = rng.next_u64();
  const SnapshotSet snaps = draw_snapshots(env, cfg.efficiency, cell, baseline,
                                           trials, key, options);
  return evaluate_snapshots(snaps, env, cfg, omega_b, reqs, baseline,
                            options.snapshot_weighted,
                            /*with_reliability=*/true);
}

OptimizationResult optimize(const Environment& env, double efficiency,
                            const ServiceRequirements& reqs,
                            const CellSpec& cell, const OptimizeBudget& budget,
                            std::uint64_t seed) {
  env.validate();
  reqs.validate();
  cell.validate();
  budget.validate();

  OptimizationResult result;
  result.seed = seed;
  result.geometry_trials = budget.geometry_trials;
  result.rate_trials = budget.rate_trials;

  result.baseline = lap_baseline(env, efficiency, reqs);
  result.bound = max_slicing_ratio(env, efficiency, reqs, result.baseline);
  result.omega_max = result.bound.omega_max;
  if (!result.bound.feasible) {
    log_message(LogLevel::kWarn,
                "'%s': no slicing ratio satisfies worst-case MTC coverage",
                env.label.c_str());
    return result;
  }

  RandomStream geo_rng(mix_seed(seed, 0x67656fULL));
  std::vector<double> kappa_set =
      kappa_sbc_samples(cell, budget.geometry_trials, geo_rng);
  std::sort(kappa_set.begin(), kappa_set.end());

  AriOptions options;
  options.snapshot_weighted = budget.snapshot_weighted;
  const SnapshotSet snaps =
      draw_snapshots(env, efficiency, cell, result.baseline,
                     budget.rate_trials, mix_seed(seed, 0x726174ULL), options);

  // Slicing-ratio candidates, largest first so equal-rate ties keep the
  // larger omega; log spacing biases the grid toward small ratios where the
  // MTC constraint relaxes most.
  std::vector<double> omegas;
  if (budget.fixed_omega) {
    if (*budget.fixed_omega > result.omega_max) {
      log_message(LogLevel::kInfo,
                  "requested omega_b %.6g exceeds the maximal slicing ratio "
                  "%.6g; infeasible",
                  *budget.fixed_omega, result.omega_max);
      result.best = DesignPoint{std::numeric_limits<double>::quiet_NaN(),
                                *budget.fixed_omega};
      return result;
    }
    omegas.push_back(*budget.fixed_omega);
  } else if (budget.omega_grid == 1) {
    omegas.push_back(result.omega_max);
  } else {
    const double span = 1e-3;  // smallest candidate = omega_max / 1000
    const std::size_t n = budget.omega_grid;
    for (std::size_t i = 0; i < n; ++i) {
      omegas.push_back(result.omega_max *
                       std::pow(span, static_cast<double>(i) /
                                          static_cast<double>(n - 1)));
    }
  }

  const ThetaRange range = default_theta_range();
  const auto mtc_loss = [&](double theta) {
    return reliability_ple(env, AntennaConfig{efficiency, theta}, 2.0,
                           reqs.eps_mtc);
  };

  bool have_best = false;
  DesignPoint best_design;
  AriEstimate best_est;

  for (const double omega : omegas) {
    const double loss_threshold =
        result.baseline.le_lap_db - slicing_demand_db(reqs, omega);

    // Feasible elevation interval for worst-case MTC coverage: the loss is
    // minimal at theta_RSR and grows toward both range edges.
    double theta_lo = result.bound.theta_rsr;
    double theta_hi = result.bound.theta_rsr;
    const double rsr_loss = result.bound.le_rsr_db;
    if (rsr_loss > loss_threshold) {
      if (rsr_loss - loss_threshold > 1e-6) continue;  // only at omega_max
    } else {
      auto excess = [&](double theta) { return mtc_loss(theta) -
                                               loss_threshold; };
      theta_lo = excess(range.lo) <= 0.0
                     ? range.lo
                     : bisect_root(excess, range.lo, result.bound.theta_rsr,
                                   budget.theta_tol * 0.5, 0.0);
      theta_hi = excess(range.hi) <= 0.0
                     ? range.hi
                     : bisect_root(excess, result.bound.theta_rsr, range.hi,
                                   budget.theta_tol * 0.5, 0.0);
      if (mtc_loss(theta_lo) > loss_threshold) theta_lo = result.bound.theta_rsr;
      if (mtc_loss(theta_hi) > loss_threshold) theta_hi = result.bound.theta_rsr;
    }

    // Intersect with broadband coverage on a scan grid, then refine the
    // edges of each feasible run to the angle tolerance.
    const AntennaConfig probe{efficiency, theta_lo};
    (void)probe;
    auto bb_ok = [&](double theta) {
      return bb_reliability_over(env, AntennaConfig{efficiency, theta},
                                 kappa_set,
                                 result.baseline) >= 1.0 - reqs.eps_bb;
    };
    constexpr std::size_t kScan = 25;
    std::vector<double> scan;
    std::vector<bool> ok;
    if (theta_hi - theta_lo < budget.theta_tol) {
      scan.push_back(theta_lo);
      ok.push_back(bb_ok(theta_lo));
    } else {
      for (std::size_t i = 0; i < kScan; ++i) {
        const double theta =
            theta_lo + (theta_hi - theta_lo) * static_cast<double>(i) /
                           static_cast<double>(kScan - 1);
        scan.push_back(theta);
        ok.push_back(bb_ok(theta));
      }
    }

    auto evaluate_at = [&](double theta) {
      return evaluate_snapshots(snaps, env, AntennaConfig{efficiency, theta},
                                omega, reqs, result.baseline,
                                budget.snapshot_weighted,
                                /*with_reliability=*/false);
    };

    std::size_t i = 0;
    while (i < scan.size()) {
      if (!ok[i]) {
        ++i;
        continue;
      }
      std::size_t j = i;
      while (j + 1 < scan.size() && ok[j + 1]) ++j;

      double a = scan[i];
      if (i > 0) {
        // smallest feasible angle between an infeasible and a feasible probe
        double lo = scan[i - 1], hi = scan[i];
        while (hi - lo > budget.theta_tol) {
          const double mid = 0.5 * (lo + hi);
          (bb_ok(mid) ? hi : lo) = mid;
        }
        a = hi;
      }
      double b = scan[j];
      if (j + 1 < scan.size()) {
        double lo = scan[j], hi = scan[j + 1];
        while (hi - lo > budget.theta_tol) {
          const double mid = 0.5 * (lo + hi);
          (bb_ok(mid) ? lo : hi) = mid;
        }
        b = lo;
      }

      // Candidates: both interval edges plus the interior golden optimum;
      // ties resolve toward the smallest angle.
      std::vector<DesignPoint> candidates;
      candidates.push_back(DesignPoint{a, omega});
      if (b > a) {
        const ScalarOptimum interior = golden_section_max(
            [&](double theta) { return evaluate_at(theta).ari; }, a, b,
            budget.theta_tol);
        candidates.push_back(DesignPoint{interior.x, omega});
        candidates.push_back(DesignPoint{b, omega});
        std::sort(candidates.begin(), candidates.end(),
                  [](const DesignPoint& l, const DesignPoint& r) {
                    return l.theta < r.theta;
                  });
      }
      for (const DesignPoint& cand : candidates) {
        const AriEstimate est = evaluate_at(cand.theta);
        if (!have_best || est.ari > best_est.ari) {
          have_best = true;
          best_design = cand;
          best_est = est;
        }
      }
      i = j + 1;
    }
  }

  if (!have_best) {
    log_message(LogLevel::kWarn,
                "'%s': broadband coverage infeasible at every candidate "
                "design point",
                env.label.c_str());
    return result;
  }

  // Post-hoc feasibility re-assertion at the chosen design.
  const AntennaConfig best_cfg{efficiency, best_design.theta};
  const double bb_rel =
      bb_reliability_over(env, best_cfg, kappa_set, result.baseline);
  const CoverageCheck mtc = mtc_coverage(env, best_cfg, best_design.omega_b,
                                         result.baseline, reqs);
  result.best = best_design;
  result.ari = best_est.ari;
  result.ari_std_err = best_est.std_err;
  result.bb_reliability = bb_rel;
  result.mtc_reliability = mtc.reliability;
  result.feasible = (bb_rel >= 1.0 - reqs.eps_bb) && mtc.pass &&
                    best_design.omega_b <= result.omega_max * (1.0 + 1e-12);
  return result;
}

}  // namespace dsdsc
