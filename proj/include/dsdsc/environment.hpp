#ifndef DSDSC_ENVIRONMENT_HPP
#define DSDSC_ENVIRONMENT_HPP

#include <optional>
#include <string>
#include <string_view>

namespace dsdsc {

/// Air-to-ground excess-loss topology constants for one deployment class.
/// `a`/`b` shape the line-of-sight probability sigmoid (in degrees of user
/// elevation); the remaining pairs parameterize the Gaussian excess loss of
/// the LoS and NLoS propagation groups.
struct Environment {
  double a = 0.0;        // sigmoid offset, degrees
  double b = 0.0;        // sigmoid slope, 1/degree
  double mu_los = 0.0;   // LoS mean excess loss, dB
  double mu_nlos = 0.0;  // NLoS mean excess loss, dB
  double d_los = 0.0;    // LoS deviation scale, dB
  double d_nlos = 0.0;   // NLoS deviation scale, dB
  double c_los = 0.0;    // LoS deviation decay, 1/degree
  double c_nlos = 0.0;   // NLoS deviation decay, 1/degree
  std::string label;

  /// Throws std::invalid_argument unless all eight constants are strictly
  /// positive and the NLoS mean exceeds the LoS mean.
  void validate() const;
};

Environment suburban_environment();
Environment urban_environment();
Environment high_urban_environment();

/// Preset lookup by name ("suburban", "urban", "high_urban").
std::optional<Environment> environment_preset(std::string_view name);

}  // namespace dsdsc

#endif  // DSDSC_ENVIRONMENT_HPP
