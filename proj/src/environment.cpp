#include "dsdsc/environment.hpp"

#include <stdexcept>

namespace dsdsc {

void Environment::validate() const {
  const double constants[] = {a,    b,      mu_los, mu_nlos,
                              d_los, d_nlos, c_los,  c_nlos};
  for (double v : constants) {
    if (!(v > 0.0)) {
      throw std::invalid_argument("environment '" + label +
                                  "': all topology constants must be > 0");
    }
  }
  if (!(mu_nlos > mu_los)) {
    throw std::invalid_argument("environment '" + label +
                                "': NLoS mean excess loss must exceed LoS");
  }
}

Environment suburban_environment() {
  return Environment{4.88, 0.43, 0.1, 21.0, 11.25, 32.17, 0.06, 0.03,
                     "suburban"};
}

Environment urban_environment() {
  return Environment{9.61, 0.16, 1.0, 20.0, 10.39, 29.6, 0.05, 0.03, "urban"};
}

Environment high_urban_environment() {
  return Environment{12.08, 0.11, 1.6, 23.0, 8.96, 35.97, 0.04, 0.04,
                     "high_urban"};
}

std::optional<Environment> environment_preset(std::string_view name) {
  if (name == "suburban") return suburban_environment();
  if (name == "urban") return urban_environment();
  if (name == "high_urban") return high_urban_environment();
  return std::nullopt;
}

}  // namespace dsdsc
