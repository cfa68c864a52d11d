#include "feyncoh/propagators.hpp"

#include <algorithm>
#include <cmath>

#include "feyncoh/constants.hpp"
#include "feyncoh/errors.hpp"
#include "feyncoh/quadrature.hpp"

namespace feyncoh {

double sinc(double x) {
  if (std::abs(x) < 1e-8) return 1.0 - x * x / 6.0;
  return std::sin(x) / x;
}

double WeightProfile::operator()(double xs) const {
  if (x.empty()) return 1.0;
  if (xs <= x.front()) return w.front();
  if (xs >= x.back()) return w.back();
  auto it = std::upper_bound(x.begin(), x.end(), xs);
  std::size_t i = static_cast<std::size_t>(it - x.begin());
  double f = (xs - x[i - 1]) / (x[i] - x[i - 1]);
  return w[i - 1] + f * (w[i] - w[i - 1]);
}

Amplitude point_propagator(const SpacetimePoint& emit, const SpacetimePoint& detect,
                           double omega) {
  if (!(omega > 0.0)) throw DomainError("point propagator: omega must be > 0");
  if (detect.t < emit.t) throw DomainError("point propagator: detection precedes emission");
  const double dx = detect.x - emit.x;
  const double dz = detect.z - emit.z;
  const double r = std::hypot(dx, dz);
  if (r <= 0.0) throw DomainError("point propagator: zero separation");
  const double k = omega / constants.c;
  const double phase = -omega * (detect.t - emit.t) + k * r;
  return std::polar(1.0 / r, phase);
}

Amplitude extended_source_propagator(double extent, const WeightProfile& profile,
                                     const SpacetimePoint& detect, double omega, double L,
                                     bool paraxial) {
  if (!(extent > 0.0)) throw DomainError("extended source: extent must be > 0");
  if (!(L > 0.0)) throw DomainError("extended source: L must be > 0");
  if (!(omega > 0.0)) throw DomainError("extended source: omega must be > 0");
  const double k = omega / constants.c;
  const double lambda = two_pi / k;

  auto integrand = [&](double xs) -> Amplitude {
    const double dx = detect.x - xs;
    double r, phase;
    if (paraxial) {
      r = L;
      phase = k * (L + dx * dx / (2.0 * L));
    } else {
      r = std::hypot(dx, L);
      phase = k * r;
    }
    return profile(xs) * std::polar(1.0 / (r * r), phase);
  };

  const Amplitude integral = adaptive_simpson(integrand, -extent / 2.0, extent / 2.0);
  const Amplitude prefactor = L / (Amplitude(0.0, 1.0) * lambda);
  return prefactor * integral * std::polar(1.0, -omega * detect.t);
}

Amplitude spectral_envelope(const Spectrum& spectrum, double tau) {
  const Amplitude carrier = std::polar(1.0, -spectrum.omega0() * tau);
  const double w = spectrum.width();
  switch (spectrum.shape()) {
    case SpectrumShape::Monochromatic:
      return carrier;
    case SpectrumShape::Rectangular:
      return carrier * sinc(w * tau / 2.0);
    case SpectrumShape::Gaussian:
      return carrier * std::exp(-0.5 * w * w * tau * tau);
    case SpectrumShape::Lorentzian:
      return carrier * std::exp(-0.5 * w * std::abs(tau));
  }
  throw UsageError("spectral envelope: unknown spectrum shape");
}

Amplitude free_particle_propagator(double mass, const SpacetimePoint& a,
                                   const SpacetimePoint& b) {
  if (!(mass > 0.0)) throw DomainError("free particle propagator: mass must be > 0");
  if (!(b.t > a.t)) throw DomainError("free particle propagator: requires b.t > a.t");
  const double dt = b.t - a.t;
  const double dx = b.x - a.x;
  const double mag = std::sqrt(mass / (two_pi * constants.hbar * dt));
  // 1/sqrt(i) = exp(-i pi/4) with sqrt(i) = exp(i pi/4).
  const double phase = mass * dx * dx / (2.0 * constants.hbar * dt) - pi / 4.0;
  return std::polar(mag, phase);
}

double de_broglie_wavelength(double mass, double speed) {
  if (!(mass > 0.0)) throw DomainError("de Broglie wavelength: mass must be > 0");
  if (!(speed > 0.0)) throw DomainError("de Broglie wavelength: speed must be > 0");
  return constants.h / (mass * speed);
}

double matter_angular_bandwidth(double mass, double v0, double dv) {
  if (!(mass > 0.0) || !(v0 > 0.0) || !(dv > 0.0))
    throw DomainError("matter bandwidth: mass, v0 and dv must be > 0");
  return 2.0 * mass * v0 * dv / constants.hbar;
}

}  // namespace feyncoh
