#pragma once

#include <string>

namespace feyncoh {

enum class SpectrumShape { Monochromatic, Rectangular, Gaussian, Lorentzian };

std::string to_string(SpectrumShape shape);

/// Frequency distribution of a source. All frequencies are angular [rad/s].
/// The quasi-monochromatic assumption is enforced: width < omega0 / 10.
class Spectrum {
 public:
  static Spectrum monochromatic(double omega0);
  /// Flat band of full width delta_omega centred on omega0.
  static Spectrum rectangular(double omega0, double delta_omega);
  /// Gaussian with standard deviation sigma.
  static Spectrum gaussian(double omega0, double sigma);
  /// Lorentzian line of full width gamma (decay rate of the upper level).
  static Spectrum lorentzian(double omega0, double gamma);

  SpectrumShape shape() const { return shape_; }
  double omega0() const { return omega0_; }
  /// Width parameter: delta_omega, sigma or gamma; 0 for monochromatic.
  double width() const { return width_; }

  /// Coherence time 2*pi/width [s]; infinity for monochromatic light.
  double coherence_time() const;

 private:
  Spectrum(SpectrumShape shape, double omega0, double width);

  SpectrumShape shape_;
  double omega0_;
  double width_;
};

}  // namespace feyncoh
