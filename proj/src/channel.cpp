#include "dsdsc/channel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dsdsc/numeric.hpp"

namespace dsdsc {

void AntennaConfig::validate() const {
  // (0, 1]: efficiency 1 is the ideal-aperture reference case
  if (!(efficiency > 0.0 && efficiency <= 1.0)) {
    throw std::invalid_argument("antenna efficiency must lie in (0, 1]");
  }
  if (!(reference_angle > 0.0 && reference_angle < kPi / 2.0)) {
    throw std::invalid_argument(
        "antenna reference angle must lie in (0, pi/2) radians");
  }
}

LinkGeometry LinkGeometry::from_kappa(double theta, double kappa) {
  return LinkGeometry{kappa, user_elevation(theta, kappa)};
}

double user_elevation(double theta, double kappa) {
  if (!(theta > 0.0 && theta < kPi / 2.0)) {
    throw std::invalid_argument("theta must lie in (0, pi/2) radians");
  }
  if (!(kappa >= 0.0 && kappa <= 2.0)) {
    throw std::invalid_argument("kappa must lie in [0, 2]");
  }
  if (kappa == 0.0) return kPi / 2.0;  // directly beneath the drone
  return std::atan(std::tan(theta) / kappa);
}

double prob_los(const Environment& env, double user_elev) {
  if (!(user_elev > 0.0 && user_elev <= kPi / 2.0)) {
    throw std::domain_error("user elevation must lie in (0, pi/2] radians");
  }
  const double elev_deg = user_elev * kDegPerRad;
  return 1.0 / (1.0 + env.a * std::exp(-env.b * (elev_deg - env.a)));
}

GainParams excess_loss_params(const Environment& env, double user_elev,
                              PropagationGroup group) {
  if (!(user_elev > 0.0 && user_elev <= kPi / 2.0)) {
    throw std::domain_error("user elevation must lie in (0, pi/2] radians");
  }
  const double elev_deg = user_elev * kDegPerRad;
  if (group == PropagationGroup::kLos) {
    return GainParams{env.mu_los, env.d_los * std::exp(-env.c_los * elev_deg),
                      group};
  }
  return GainParams{env.mu_nlos, env.d_nlos * std::exp(-env.c_nlos * elev_deg),
                    group};
}

double antenna_gain_db(const AntennaConfig& cfg) {
  cfg.validate();
  return cfg.efficiency * 10.0 *
         std::log10(2.0 / (1.0 - std::sin(cfg.reference_angle)));
}

double path_loss_equivalent_db(const AntennaConfig& cfg, double gain_db) {
  return -antenna_gain_db(cfg) +
         20.0 * std::log10(std::tan(cfg.reference_angle)) + gain_db;
}

GainMixture GainMixture::at(const Environment& env, double theta,
                            double kappa) {
  const double elev = user_elevation(theta, kappa);
  const GainParams los = excess_loss_params(env, elev, PropagationGroup::kLos);
  const GainParams nlos =
      excess_loss_params(env, elev, PropagationGroup::kNlos);
  GainMixture mix;
  mix.p_los = prob_los(env, elev);
  mix.mu_los_db = los.mean_db;
  mix.sigma_los_db = los.std_db;
  mix.mu_nlos_db = nlos.mean_db;
  mix.sigma_nlos_db = nlos.std_db;
  mix.distance_db = -20.0 * std::log10(std::sin(elev));
  return mix;
}

double GainMixture::cdf(double gain_db) const {
  const double u = gain_db - distance_db;
  return (1.0 - p_los) * normal_cdf((u - mu_nlos_db) / sigma_nlos_db) +
         p_los * normal_cdf((u - mu_los_db) / sigma_los_db);
}

double GainMixture::quantile(double p) const {
  if (!(p > 0.0 && p < 1.0)) {
    throw std::invalid_argument("quantile probability must lie in (0, 1)");
  }
  const double sigma_max = std::max(sigma_los_db, sigma_nlos_db);
  // 10 combined deviations around the component means hold all but ~1e-23
  // of the mixture mass; doubled until the root is actually bracketed.
  double lo = std::min(mu_los_db, mu_nlos_db) - 10.0 * sigma_max + distance_db;
  double hi = std::max(mu_los_db, mu_nlos_db) + 10.0 * sigma_max + distance_db;
  double width = hi - lo;
  while (cdf(lo) > p) {
    lo -= width;
    width *= 2.0;
  }
  while (cdf(hi) < p) {
    hi += width;
    width *= 2.0;
  }
  double mid = 0.5 * (lo + hi);
  for (int i = 0; i < 200; ++i) {
    mid = 0.5 * (lo + hi);
    const double c = cdf(mid);
    if (std::abs(c - p) <= 1e-10 || hi - lo <= 1e-10) return mid;
    if (c < p) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  if (std::abs(cdf(mid) - p) > 1e-6) {
    throw std::runtime_error("positioning-gain quantile failed to converge");
  }
  return mid;
}

double GainMixture::sample(RandomStream& rng) const {
  const bool los = rng.uniform() < p_los;
  const double z = rng.normal();
  const double excess = los ? mu_los_db + sigma_los_db * z
                            : mu_nlos_db + sigma_nlos_db * z;
  return excess + distance_db;
}

double GainMixture::mean_db() const {
  return p_los * mu_los_db + (1.0 - p_los) * mu_nlos_db + distance_db;
}

double positioning_gain_cdf(const Environment& env, double theta, double kappa,
                            double gain_db) {
  return GainMixture::at(env, theta, kappa).cdf(gain_db);
}

double positioning_gain_quantile(const Environment& env, double theta,
                                 double kappa, double p) {
  return GainMixture::at(env, theta, kappa).quantile(p);
}

double sample_positioning_gain(const Environment& env, double theta,
                               double kappa, RandomStream& rng) {
  return GainMixture::at(env, theta, kappa).sample(rng);
}

}  // namespace dsdsc
