#include <doctest.h>

#include <cmath>
#include <vector>

#include "dsdsc/channel.hpp"
#include "dsdsc/numeric.hpp"
#include "oracles.hpp"

using namespace dsdsc;

namespace {

const Environment kEnvs[] = {suburban_environment(), urban_environment(),
                             high_urban_environment()};

}  // namespace

TEST_CASE("line-of-sight probability: pinned values and domain") {
  const Environment urban = urban_environment();
  // exponent vanishes when the elevation in degrees equals `a`
  CHECK(prob_los(urban, deg2rad(9.61)) ==
        doctest::Approx(1.0 / 10.61).epsilon(1e-12));
  CHECK(prob_los(urban, kPi / 2.0) ==
        doctest::Approx(0.999975).epsilon(1e-5));
  CHECK_THROWS_AS((void)prob_los(urban, 0.0), std::domain_error);
  CHECK_THROWS_AS((void)prob_los(urban, kPi / 2.0 + 1e-6), std::domain_error);
}

TEST_CASE("line-of-sight probability: in (0,1) and strictly increasing") {
  for (const Environment& env : kEnvs) {
    double prev = 0.0;
    for (int deg = 1; deg <= 90; ++deg) {
      const double p = prob_los(env, deg2rad(deg));
      CHECK(p > 0.0);
      CHECK(p < 1.0);
      CHECK(p > prev);
      prev = p;
    }
  }
}

TEST_CASE("excess-loss parameters: pinned values, deviation decreasing") {
  const Environment suburban = suburban_environment();
  CHECK(excess_loss_params(suburban, 1e-9, PropagationGroup::kNlos).std_db ==
        doctest::Approx(32.17).epsilon(1e-6));
  CHECK(excess_loss_params(suburban, kPi / 2.0, PropagationGroup::kLos)
            .std_db == doctest::Approx(0.0508115).epsilon(1e-4));
  CHECK(excess_loss_params(high_urban_environment(), deg2rad(37.0),
                           PropagationGroup::kLos)
            .mean_db == doctest::Approx(1.6).epsilon(1e-12));
  for (const Environment& env : kEnvs) {
    for (auto group : {PropagationGroup::kLos, PropagationGroup::kNlos}) {
      double prev = 1e9;
      for (int deg = 1; deg <= 90; ++deg) {
        const double s = excess_loss_params(env, deg2rad(deg), group).std_db;
        CHECK(s < prev);
        prev = s;
      }
    }
  }
}

TEST_CASE("antenna gain: pinned values, monotone, domain") {
  CHECK(antenna_gain_db({1.0, kPi / 6.0}) ==
        doctest::Approx(6.0205999).epsilon(1e-6));
  CHECK(antenna_gain_db({0.6, kPi / 6.0}) ==
        doctest::Approx(3.6123600).epsilon(1e-6));
  CHECK(antenna_gain_db({1.0, 1e-12}) ==
        doctest::Approx(3.0102999).epsilon(1e-6));
  CHECK(antenna_gain_db({0.9, 0.8}) > antenna_gain_db({0.9, 0.7}));
  CHECK(antenna_gain_db({0.9, 0.8}) > antenna_gain_db({0.6, 0.8}));
  CHECK_THROWS_AS((void)antenna_gain_db({0.5, kPi / 2.0}),
                  std::invalid_argument);
  CHECK_THROWS_AS((void)antenna_gain_db({1.5, 0.5}), std::invalid_argument);
}

TEST_CASE("link geometry: elevation bounds and the kappa = 0 limit") {
  const double theta = deg2rad(35.0);
  CHECK(user_elevation(theta, 0.0) == kPi / 2.0);
  for (double kappa : {0.1, 0.5, 0.9, 1.0}) {
    const LinkGeometry geom = LinkGeometry::from_kappa(theta, kappa);
    CHECK(geom.user_elevation >= theta);
    CHECK(geom.user_elevation <= kPi / 2.0);
  }
  for (double kappa : {0.01, 0.5, 1.0, 1.5, 2.0}) {
    CHECK(user_elevation(theta, kappa) > 0.0);
  }
  CHECK(user_elevation(theta, 1.0) == doctest::Approx(theta).epsilon(1e-12));
  CHECK_THROWS_AS((void)user_elevation(theta, 2.5), std::invalid_argument);
}

TEST_CASE("positioning-gain CDF: limits and monotonicity in the argument") {
  const Environment urban = urban_environment();
  CHECK(positioning_gain_cdf(urban, deg2rad(30.0), 1.0, 1e6) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(positioning_gain_cdf(urban, deg2rad(30.0), 1.0, -1e6) ==
        doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
  double prev = -0.1;
  for (double g = -40.0; g <= 120.0; g += 2.5) {
    const double c = positioning_gain_cdf(urban, deg2rad(30.0), 1.0, g);
    CHECK(c >= prev);
    prev = c;
  }
}

TEST_CASE("positioning-gain CDF matches the quadrature oracle") {
  RandomStream rng(917);
  for (const Environment& env : kEnvs) {
    for (int i = 0; i < 100; ++i) {
      const double theta = deg2rad(1.0 + 88.0 * rng.uniform());
      const double kappa = 2.0 * rng.uniform();
      const GainMixture mix = GainMixture::at(env, theta, kappa);
      const double spread =
          std::max(mix.sigma_los_db, mix.sigma_nlos_db) * 8.0 + 20.0;
      const double g = mix.mean_db() + spread * (rng.uniform() - 0.5);
      const double analytic = mix.cdf(g);
      const double quadrature = dsdsc::test::mixture_cdf_quadrature(mix, g);
      CHECK(analytic == doctest::Approx(quadrature).scale(1.0).epsilon(1e-6));
    }
  }
}

TEST_CASE("positioning-gain mean is strictly increasing in kappa") {
  for (const Environment& env : kEnvs) {
    for (double theta_deg : {20.0, 45.0, 70.0}) {
      double prev = -1e9;
      for (double kappa = 0.05; kappa <= 2.0 + 1e-12; kappa += 0.05) {
        const double mean =
            GainMixture::at(env, deg2rad(theta_deg), kappa).mean_db();
        CHECK(mean > prev);
        prev = mean;
      }
    }
  }
}

TEST_CASE("quantile/CDF round trip and monotonicity") {
  const double probs[] = {1e-5, 1e-3, 0.1, 0.5, 0.9, 0.9999, 1.0 - 1e-5};
  for (const Environment& env : kEnvs) {
    const GainMixture mix = GainMixture::at(env, deg2rad(40.0), 1.3);
    double prev_q = -1e18;
    for (double p : probs) {
      const double q = mix.quantile(p);
      CHECK(mix.cdf(q) == doctest::Approx(p).scale(1.0).epsilon(1e-6));
      CHECK(q > prev_q);
      prev_q = q;
    }
  }
}

TEST_CASE("quantile dominates the lighter LoS component in the upper tail") {
  const Environment urban = urban_environment();
  const GainMixture mix = GainMixture::at(urban, deg2rad(45.0), 1.0);
  // 0.999-quantile of the LoS-only Gaussian at the same geometry
  const double z999 = 3.090232306167814;
  const double los_only = mix.mu_los_db + z999 * mix.sigma_los_db +
                          mix.distance_db;
  const double q = mix.quantile(0.999);
  CHECK(q >= los_only);
  CHECK(q == doctest::Approx(dsdsc::test::mixture_quantile_quadrature(
                 mix, 0.999))
                 .epsilon(1e-7));
}

TEST_CASE("fading samples: mean, kappa = 0 limit, determinism") {
  const Environment urban = urban_environment();
  const GainMixture mix = GainMixture::at(urban, deg2rad(30.0), 1.0);

  RandomStream rng(42);
  const std::size_t n = 1000000;
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) sum += mix.sample(rng);
  CHECK(std::abs(sum / static_cast<double>(n) - mix.mean_db()) < 0.05);

  CHECK(GainMixture::at(urban, deg2rad(30.0), 0.0).distance_db == 0.0);

  RandomStream a(7), b(7);
  for (int i = 0; i < 100; ++i) {
    CHECK(sample_positioning_gain(urban, 0.5, 1.2, a) ==
          sample_positioning_gain(urban, 0.5, 1.2, b));
  }
}

TEST_CASE("sampled gains match the analytic CDF in Kolmogorov distance") {
  const Environment urban = urban_environment();
  const GainMixture mix = GainMixture::at(urban, deg2rad(30.0), 1.0);
  RandomStream rng(123);
  std::vector<double> samples(100000);
  for (double& s : samples) s = mix.sample(rng);
  const double d = dsdsc::test::kolmogorov_distance(
      std::move(samples), [&](double g) { return mix.cdf(g); });
  CHECK(d < 5e-3);
}

TEST_CASE("path-loss equivalent: pinned value, linearity, efficiency") {
  const AntennaConfig cfg{1.0, kPi / 4.0};
  CHECK(path_loss_equivalent_db(cfg, 0.0) ==
        doctest::Approx(-8.3426).epsilon(1e-4));
  const AntennaConfig cfg6{0.6, deg2rad(50.0)};
  const double g1 = 12.5, g2 = -3.75;
  CHECK(path_loss_equivalent_db(cfg6, g1 + g2) -
            path_loss_equivalent_db(cfg6, g1) ==
        doctest::Approx(g2).epsilon(1e-12));
  CHECK(path_loss_equivalent_db({0.9, deg2rad(50.0)}, 5.0) <
        path_loss_equivalent_db({0.6, deg2rad(50.0)}, 5.0));
}
