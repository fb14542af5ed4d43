#ifndef DSDSC_NUMERIC_HPP
#define DSDSC_NUMERIC_HPP

#include <cmath>

namespace dsdsc {

inline constexpr double kPi = 3.141592653589793238462643;
inline constexpr double kLn2 = 0.693147180559945309417232;
inline constexpr double kLn10 = 2.302585092994045684017991;
inline constexpr double kDegPerRad = 180.0 / kPi;

inline double deg2rad(double deg) { return deg / kDegPerRad; }
inline double rad2deg(double rad) { return rad * kDegPerRad; }

/// Standard normal CDF. erfc keeps the lower tail accurate; absolute error
/// is at machine level everywhere, which the mixture quantile solver needs.
inline double normal_cdf(double z) {
  return 0.5 * std::erfc(-z * 0.7071067811865475244008444);
}

/// log(2^x - 1) for x > 0 without overflow or cancellation.
inline double log_exp2m1(double x) {
  if (x > 50.0) return x * kLn2 + std::log1p(-std::exp2(-x));
  return std::log(std::expm1(x * kLn2));
}

/// log2(1 + e^w), stable for any w.
inline double log2_1p_exp(double w) {
  if (w > 36.0) return (w + std::log1p(std::exp(-w))) / kLn2;
  return std::log1p(std::exp(w)) / kLn2;
}

/// Shannon rate of a slice holding an `omega` fraction of the resources,
/// driven by the power budget that delivers `rate_req` at the calibration
/// loss: omega * log2(1 + (2^(rate_req/omega) - 1) * 10^(headroom_db/10)).
/// Evaluated in the log domain so tiny slices (2^(1/omega) far beyond
/// double range) and deep-fade headrooms stay finite.
inline double sliced_rate(double omega, double rate_req, double headroom_db) {
  const double w = log_exp2m1(rate_req / omega) + headroom_db * (kLn10 / 10.0);
  return omega * log2_1p_exp(w);
}

}  // namespace dsdsc

#endif  // DSDSC_NUMERIC_HPP
