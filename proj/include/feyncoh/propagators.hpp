#pragma once

#include <complex>
#include <vector>

#include "feyncoh/spectrum.hpp"

namespace feyncoh {

using Amplitude = std::complex<double>;

struct SpacetimePoint {
  double x = 0.0;  ///< transverse coordinate [m]
  double z = 0.0;  ///< longitudinal coordinate [m]
  double t = 0.0;  ///< time [s]
};

/// Transverse weight profile of an extended source, sampled on a grid with
/// linear interpolation. Empty means uniform.
struct WeightProfile {
  std::vector<double> x;
  std::vector<double> w;

  double operator()(double xs) const;
  bool uniform() const { return x.empty(); }
};

/// Single-frequency point-source propagator: magnitude 1/|r - r0|, phase
/// -omega (t - t0) + k |r - r0| with k = omega/c. The global prefactor is
/// fixed to 1; all downstream outputs are normalized probabilities.
Amplitude point_propagator(const SpacetimePoint& emit, const SpacetimePoint& detect,
                           double omega);

/// Classical-optics Green-function approximation for an extended 1-D source
/// of length d at longitudinal distance L: (L / i lambda) times the
/// quadrature of s(xs) exp(i k R)/R^2 over xs in [-d/2, d/2], with
/// R = |r_detect - r_s| (expanded to second order in paraxial mode).
/// The detection-time phase exp(-i omega t) is included.
Amplitude extended_source_propagator(double extent, const WeightProfile& profile,
                                     const SpacetimePoint& detect, double omega, double L,
                                     bool paraxial);

/// Temporal envelope: the Fourier transform of the frequency distribution,
/// normalized to magnitude 1 at tau = 0.
///   monochromatic -> exp(-i w0 tau)
///   rectangular   -> exp(-i w0 tau) sinc(dw tau / 2)
///   gaussian      -> exp(-i w0 tau) exp(-sigma^2 tau^2 / 2)
///   lorentzian    -> exp(-i w0 tau) exp(-gamma |tau| / 2)
Amplitude spectral_envelope(const Spectrum& spectrum, double tau);

/// Free-particle kernel sqrt(m / (2 pi i hbar T)) exp(i m dx^2 / (2 hbar T)),
/// with the branch of sqrt(i) fixed to exp(i pi / 4).
Amplitude free_particle_propagator(double mass, const SpacetimePoint& a,
                                   const SpacetimePoint& b);

/// de Broglie wavelength h/(m v) [m].
double de_broglie_wavelength(double mass, double speed);

/// Effective angular-frequency bandwidth of a matter-wave beam with central
/// speed v0 and speed spread dv: 2 m v0 dv / hbar.
double matter_angular_bandwidth(double mass, double v0, double dv);

/// sin(x)/x with sinc(0) = 1.
double sinc(double x);

}  // namespace feyncoh
