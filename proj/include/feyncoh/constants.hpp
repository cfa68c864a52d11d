#pragma once

#include <numbers>

namespace feyncoh {

/// CODATA 2018 values, fixed at build time.
struct PhysicalConstants {
  double h;     ///< Planck constant [J s]
  double hbar;  ///< reduced Planck constant [J s]
  double c;     ///< speed of light in vacuum [m/s]
  double k_B;   ///< Boltzmann constant [J/K]
};

inline constexpr PhysicalConstants constants{
    6.62607015e-34,
    6.62607015e-34 / (2.0 * std::numbers::pi),
    299792458.0,
    1.380649e-23,
};

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;

}  // namespace feyncoh
