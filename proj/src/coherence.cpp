#include "feyncoh/coherence.hpp"

#include <cmath>
#include <string>

#include "feyncoh/constants.hpp"
#include "feyncoh/errors.hpp"

namespace feyncoh {

double degeneracy_factor_blackbody(double nu_hz, double temperature_k) {
  if (!(nu_hz > 0.0)) throw DomainError("degeneracy factor: frequency must be > 0");
  if (!(temperature_k > 0.0)) throw DomainError("degeneracy factor: temperature must be > 0");
  const double x = constants.h * nu_hz / (constants.k_B * temperature_k);
  if (x > 700.0) return 0.0;  // underflow guard
  return 1.0 / std::expm1(x);
}

double degeneracy_factor_laser(double power_w, double nu_hz, double delta_nu_hz) {
  if (!(power_w > 0.0)) throw DomainError("degeneracy factor: power must be > 0");
  if (!(nu_hz > 0.0)) throw DomainError("degeneracy factor: frequency must be > 0");
  if (!(delta_nu_hz > 0.0)) throw DomainError("degeneracy factor: linewidth must be > 0");
  return power_w / (constants.h * nu_hz * delta_nu_hz);
}

double coherence_time(double delta_nu_hz) {
  if (!(delta_nu_hz > 0.0)) throw DomainError("coherence time: bandwidth must be > 0");
  return 1.0 / delta_nu_hz;
}

double coherence_length(double delta_nu_hz) {
  return constants.c * coherence_time(delta_nu_hz);
}

}  // namespace feyncoh
