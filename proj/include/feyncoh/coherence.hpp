#pragma once

namespace feyncoh {

/// Mean photon number per coherence volume for blackbody radiation,
/// 1/(exp(h nu / k_B T) - 1). Returns 0 when h nu / (k_B T) > 700, where
/// exp() would overflow and the true value underflows to zero anyway.
double degeneracy_factor_blackbody(double nu_hz, double temperature_k);

/// Photons per coherence time of a CW laser beam, P/(h nu delta_nu).
double degeneracy_factor_laser(double power_w, double nu_hz, double delta_nu_hz);

/// Coherence time 1/delta_nu [s].
double coherence_time(double delta_nu_hz);

/// Longitudinal coherence length c/delta_nu [m].
double coherence_length(double delta_nu_hz);

}  // namespace feyncoh
