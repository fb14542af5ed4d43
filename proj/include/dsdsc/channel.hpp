#ifndef DSDSC_CHANNEL_HPP
#define DSDSC_CHANNEL_HPP

#include "dsdsc/environment.hpp"
#include "dsdsc/random_stream.hpp"

namespace dsdsc {

/// Uniform-aperture directional antenna: efficiency E_r in (0,1) scaling an
/// ideal aperture, and the reference elevation angle at the cell edge.
struct AntennaConfig {
  double efficiency = 0.0;       // dimensionless, (0, 1)
  double reference_angle = 0.0;  // radians, (0, pi/2)

  void validate() const;  // throws std::invalid_argument
};

enum class PropagationGroup { kNlos = 0, kLos = 1 };

/// Gaussian excess-loss parameters of one propagation group at a given user
/// elevation.
struct GainParams {
  double mean_db = 0.0;
  double std_db = 0.0;
  PropagationGroup group = PropagationGroup::kNlos;
};

/// Drone-to-point geometry in normalized units. kappa is the horizontal
/// distance divided by the cell radius; the user elevation is derived from
/// the reference angle as arctan(tan(theta)/kappa), with kappa = 0 mapping
/// to a user directly beneath the drone (pi/2).
struct LinkGeometry {
  double kappa = 0.0;
  double user_elevation = 0.0;  // radians

  static LinkGeometry from_kappa(double theta, double kappa);
};

/// Elevation angle seen by a point at normalized distance kappa from the
/// drone; theta in (0, pi/2), kappa in [0, 2].
double user_elevation(double theta, double kappa);

/// Line-of-sight probability at a user elevation in (0, pi/2].
double prob_los(const Environment& env, double user_elev);

/// Excess-loss mean/deviation of one propagation group; the deviation decays
/// exponentially with the user elevation in degrees.
GainParams excess_loss_params(const Environment& env, double user_elev,
                              PropagationGroup group);

/// Antenna gain in dB: efficiency * 10*log10(2/(1 - sin(theta))). Diverges
/// at theta = pi/2, which validate() rejects.
double antenna_gain_db(const AntennaConfig& cfg);

/// Per-unit-radius path loss with the frequency/cell-size constant factored
/// out: -G_t(theta) + 20*log10(tan(theta)) + gain_db. `gain_db` is one
/// realized or quantile value of the user positioning gain.
double path_loss_equivalent_db(const AntennaConfig& cfg, double gain_db);

/// The user positioning gain G_U(theta, kappa) = A_tau - 20*log10(sin(
/// user elevation)) at a fixed geometry: a two-component Gaussian mixture
/// shifted by the distance term. Bundles the per-geometry constants so the
/// CDF/quantile/sampling paths share one setup.
struct GainMixture {
  double p_los = 0.0;
  double mu_los_db = 0.0;
  double sigma_los_db = 0.0;
  double mu_nlos_db = 0.0;
  double sigma_nlos_db = 0.0;
  double distance_db = 0.0;  // -20*log10(sin(user elevation))

  static GainMixture at(const Environment& env, double theta, double kappa);

  /// P(G_U < gain_db); monotone non-decreasing, limits 0 and 1.
  double cdf(double gain_db) const;

  /// Inverse CDF by bracketed bisection; |cdf(result) - p| <= 1e-6 is
  /// guaranteed (the solver aims for 1e-10 and throws if 200 iterations
  /// cannot deliver 1e-6).
  double quantile(double p) const;

  /// One fading draw: Bernoulli group choice, then the group's Gaussian,
  /// then the distance shift. Consumes one uniform and one normal.
  double sample(RandomStream& rng) const;

  double mean_db() const;
};

double positioning_gain_cdf(const Environment& env, double theta, double kappa,
                            double gain_db);
double positioning_gain_quantile(const Environment& env, double theta,
                                 double kappa, double p);
double sample_positioning_gain(const Environment& env, double theta,
                               double kappa, RandomStream& rng);

}  // namespace dsdsc

#endif  // DSDSC_CHANNEL_HPP
