#include "feyncoh/spectrum.hpp"

#include <cmath>
#include <limits>

#include "feyncoh/constants.hpp"
#include "feyncoh/errors.hpp"

namespace feyncoh {

std::string to_string(SpectrumShape shape) {
  switch (shape) {
    case SpectrumShape::Monochromatic: return "monochromatic";
    case SpectrumShape::Rectangular: return "rectangular";
    case SpectrumShape::Gaussian: return "gaussian";
    case SpectrumShape::Lorentzian: return "lorentzian";
  }
  return "?";
}

Spectrum::Spectrum(SpectrumShape shape, double omega0, double width)
    : shape_(shape), omega0_(omega0), width_(width) {
  if (!(omega0 > 0.0) || !std::isfinite(omega0))
    throw DomainError("spectrum: omega0 must be positive, got " + std::to_string(omega0));
  if (shape != SpectrumShape::Monochromatic) {
    if (!(width > 0.0) || !std::isfinite(width))
      throw DomainError("spectrum: width must be positive, got " + std::to_string(width));
    if (!(width < omega0 / 10.0))
      throw DomainError("spectrum: quasi-monochromatic assumption requires width < omega0/10");
  }
}

Spectrum Spectrum::monochromatic(double omega0) {
  return Spectrum(SpectrumShape::Monochromatic, omega0, 0.0);
}

Spectrum Spectrum::rectangular(double omega0, double delta_omega) {
  return Spectrum(SpectrumShape::Rectangular, omega0, delta_omega);
}

Spectrum Spectrum::gaussian(double omega0, double sigma) {
  return Spectrum(SpectrumShape::Gaussian, omega0, sigma);
}

Spectrum Spectrum::lorentzian(double omega0, double gamma) {
  return Spectrum(SpectrumShape::Lorentzian, omega0, gamma);
}

double Spectrum::coherence_time() const {
  if (shape_ == SpectrumShape::Monochromatic)
    return std::numeric_limits<double>::infinity();
  return two_pi / width_;
}

}  // namespace feyncoh
