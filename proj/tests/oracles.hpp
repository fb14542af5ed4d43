#ifndef DSDSC_TESTS_ORACLES_HPP
#define DSDSC_TESTS_ORACLES_HPP

// Independent reference implementations used only by tests. They avoid the
// code paths they check: the mixture CDF is integrated by adaptive Simpson
// quadrature instead of erf, and the enclosing circle is an O(n^4) scan in
// long double over all pair/triple candidate circles.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <span>
#include <vector>

#include "dsdsc/channel.hpp"
#include "dsdsc/geometry.hpp"

namespace dsdsc::test {

inline double simpson(const std::function<double(double)>& f, double a,
                      double b, double fa, double fm, double fb) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

inline double adaptive_simpson(const std::function<double(double)>& f,
                               double a, double m, double b, double fa,
                               double fm, double fb, double whole, double tol,
                               int depth) {
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = simpson(f, a, m, fa, flm, fm);
  const double right = simpson(f, m, b, fm, frm, fb);
  if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol) {
    return left + right + (left + right - whole) / 15.0;
  }
  return adaptive_simpson(f, a, lm, m, fa, flm, fm, left, tol * 0.5,
                          depth - 1) +
         adaptive_simpson(f, m, rm, b, fm, frm, fb, right, tol * 0.5,
                          depth - 1);
}

inline double integrate(const std::function<double(double)>& f, double a,
                        double b, double tol) {
  if (b <= a) return 0.0;
  const double m = 0.5 * (a + b);
  const double fa = f(a);
  const double fm = f(m);
  const double fb = f(b);
  return adaptive_simpson(f, a, m, b, fa, fm, fb, simpson(f, a, b, fa, fm, fb),
                          tol, 48);
}

/// Quadrature evaluation of P(G_U < gain_db): each weighted Gaussian
/// component of the excess loss is integrated up to u = gain_db - distance
/// shift, truncated at 13 deviations (tail mass ~1e-38).
inline double mixture_cdf_quadrature(const dsdsc::GainMixture& mix,
                                     double gain_db) {
  const double u = gain_db - mix.distance_db;
  double total = 0.0;
  const double weights[2] = {mix.p_los, 1.0 - mix.p_los};
  const double means[2] = {mix.mu_los_db, mix.mu_nlos_db};
  const double sigmas[2] = {mix.sigma_los_db, mix.sigma_nlos_db};
  for (int c = 0; c < 2; ++c) {
    const double lo = means[c] - 13.0 * sigmas[c];
    const double hi = means[c] + 13.0 * sigmas[c];
    if (u <= lo) continue;
    if (u >= hi) {
      total += weights[c];
      continue;
    }
    const double mu = means[c];
    const double sigma = sigmas[c];
    auto density = [mu, sigma](double x) {
      const double z = (x - mu) / sigma;
      return std::exp(-0.5 * z * z) /
             (sigma * 2.5066282746310005024157653);
    };
    total += weights[c] * integrate(density, lo, u, 1e-12);
  }
  return total;
}

/// Quantile by bisection on the quadrature CDF.
inline double mixture_quantile_quadrature(const dsdsc::GainMixture& mix,
                                          double p) {
  const double sigma_max = std::max(mix.sigma_los_db, mix.sigma_nlos_db);
  double lo = std::min(mix.mu_los_db, mix.mu_nlos_db) - 13.0 * sigma_max +
              mix.distance_db;
  double hi = std::max(mix.mu_los_db, mix.mu_nlos_db) + 13.0 * sigma_max +
              mix.distance_db;
  for (int i = 0; i < 200 && hi - lo > 1e-11; ++i) {
    const double mid = 0.5 * (lo + hi);
    (mixture_cdf_quadrature(mix, mid) < p ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

/// O(n^4) minimum enclosing circle: the optimum is either a pair-diameter
/// circle or a triple circumcircle; scan all of them in long double.
inline dsdsc::Circle brute_force_enclosing_circle(
    std::span<const dsdsc::Point> pts, double contain_tol = 1e-9) {
  using std::sqrt;
  const std::size_t n = pts.size();
  dsdsc::Circle best;
  best.radius = std::numeric_limits<double>::infinity();
  if (n == 1) return dsdsc::Circle{pts[0], 0.0};

  auto consider = [&](long double cx, long double cy, long double r) {
    if (static_cast<double>(r) >= best.radius) return;
    for (const dsdsc::Point& p : pts) {
      const long double dx = p.x - cx;
      const long double dy = p.y - cy;
      if (sqrt(dx * dx + dy * dy) > r + contain_tol) return;
    }
    best = dsdsc::Circle{{static_cast<double>(cx), static_cast<double>(cy)},
                         static_cast<double>(r)};
  };

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const long double cx = 0.5L * (pts[i].x + pts[j].x);
      const long double cy = 0.5L * (pts[i].y + pts[j].y);
      const long double dx = pts[i].x - pts[j].x;
      const long double dy = pts[i].y - pts[j].y;
      consider(cx, cy, 0.5L * sqrt(dx * dx + dy * dy));
      for (std::size_t k = j + 1; k < n; ++k) {
        // circumcenter via the perpendicular-bisector linear system
        const long double ax = pts[i].x, ay = pts[i].y;
        const long double bx = pts[j].x, by = pts[j].y;
        const long double ccx = pts[k].x, ccy = pts[k].y;
        const long double d =
            2.0L * (ax * (by - ccy) + bx * (ccy - ay) + ccx * (ay - by));
        if (d == 0.0L) continue;
        const long double a2 = ax * ax + ay * ay;
        const long double b2 = bx * bx + by * by;
        const long double c2 = ccx * ccx + ccy * ccy;
        const long double ux =
            (a2 * (by - ccy) + b2 * (ccy - ay) + c2 * (ay - by)) / d;
        const long double uy =
            (a2 * (ccx - bx) + b2 * (ax - ccx) + c2 * (bx - ax)) / d;
        const long double rx = ax - ux;
        const long double ry = ay - uy;
        consider(ux, uy, sqrt(rx * rx + ry * ry));
      }
    }
  }
  return best;
}

/// Kolmogorov distance between an empirical sample and an analytic CDF.
inline double kolmogorov_distance(std::vector<double> samples,
                                  const std::function<double(double)>& cdf) {
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = cdf(samples[i]);
    d = std::max(d, std::abs(f - static_cast<double>(i) / n));
    d = std::max(d, std::abs(f - static_cast<double>(i + 1) / n));
  }
  return d;
}

/// P(K = k | K > 0) for K ~ Poisson(lambda).
inline double truncated_poisson_pmf(double lambda, unsigned k) {
  double log_p = -lambda + k * std::log(lambda);
  for (unsigned i = 2; i <= k; ++i) log_p -= std::log(static_cast<double>(i));
  return std::exp(log_p) / (1.0 - std::exp(-lambda));
}

}  // namespace dsdsc::test

#endif  // DSDSC_TESTS_ORACLES_HPP
