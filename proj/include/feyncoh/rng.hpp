#pragma once

#include <cmath>
#include <cstdint>

#include "feyncoh/constants.hpp"

namespace feyncoh {

// Counter-based random numbers built on the SplitMix64 finalizer. Every
// variate is a pure function of (seed, stream, counter, draw), so any
// substream can be evaluated independently on any worker:
//   substream = hash(seed, stream id, counter index).
// Streams used across the library:
//   kPhaseStream     initial phases, counter = (sample, symbol)
//   kModeStream      mode draws (frequency / position), counter = (sample, symbol)
//   kWeightStream    per-coherence-interval intensity weights, counter = (source, interval)
//   kEventStream     event counts and timestamps, counter = (source/detector, interval, draw)
//   kPhotonStream    first-order photon phases and positions, counter = (photon, draw)
namespace rng {

inline constexpr std::uint64_t kPhaseStream = 0x9069366f72616e64ull;
inline constexpr std::uint64_t kModeStream = 0x6d6f64657372616eull;
inline constexpr std::uint64_t kWeightStream = 0x7765696768747321ull;
inline constexpr std::uint64_t kEventStream = 0x6576656e74737472ull;
inline constexpr std::uint64_t kPhotonStream = 0x70686f746f6e7331ull;

inline std::uint64_t mix(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

inline std::uint64_t hash(std::uint64_t seed, std::uint64_t stream, std::uint64_t c0,
                          std::uint64_t c1 = 0, std::uint64_t c2 = 0) {
  std::uint64_t h = mix(seed ^ stream);
  h = mix(h ^ c0);
  h = mix(h ^ c1);
  h = mix(h ^ c2);
  return h;
}

/// Uniform in [0, 1).
inline double u01(std::uint64_t seed, std::uint64_t stream, std::uint64_t c0,
                  std::uint64_t c1 = 0, std::uint64_t c2 = 0) {
  return static_cast<double>(hash(seed, stream, c0, c1, c2) >> 11) * 0x1.0p-53;
}

/// Uniform phase in [0, 2 pi).
inline double phase(std::uint64_t seed, std::uint64_t stream, std::uint64_t c0,
                    std::uint64_t c1 = 0, std::uint64_t c2 = 0) {
  return two_pi * u01(seed, stream, c0, c1, c2);
}

/// Unit-mean exponential variate.
inline double exponential(std::uint64_t seed, std::uint64_t stream, std::uint64_t c0,
                          std::uint64_t c1 = 0, std::uint64_t c2 = 0) {
  double u = u01(seed, stream, c0, c1, c2);
  return -std::log1p(-u);
}

/// Standard normal via Box-Muller on two sub-draws of the same counter.
inline double normal(std::uint64_t seed, std::uint64_t stream, std::uint64_t c0,
                     std::uint64_t c1 = 0, std::uint64_t c2 = 0) {
  double u1 = u01(seed, stream, c0, c1, 2 * c2);
  double u2 = u01(seed, stream, c0, c1, 2 * c2 + 1);
  if (u1 <= 0.0) u1 = 0x1.0p-53;
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(two_pi * u2);
}

/// Standard Cauchy variate.
inline double cauchy(std::uint64_t seed, std::uint64_t stream, std::uint64_t c0,
                     std::uint64_t c1 = 0, std::uint64_t c2 = 0) {
  return std::tan(pi * (u01(seed, stream, c0, c1, c2) - 0.5));
}

/// Poisson variate by inversion (small means) or normal approximation with
/// continuity correction (mean > 64, where the relative error is negligible
/// for counting statistics).
inline long poisson(double mean, std::uint64_t seed, std::uint64_t stream, std::uint64_t c0,
                    std::uint64_t c1 = 0, std::uint64_t c2 = 0) {
  if (mean <= 0.0) return 0;
  if (mean > 64.0) {
    double g = normal(seed, stream, c0, c1, c2);
    double v = std::floor(mean + std::sqrt(mean) * g + 0.5);
    return v < 0.0 ? 0 : static_cast<long>(v);
  }
  const double u = u01(seed, stream, c0, c1, c2);
  double p = std::exp(-mean);
  double cdf = p;
  long k = 0;
  while (u > cdf && k < 4096) {
    ++k;
    p *= mean / static_cast<double>(k);
    cdf += p;
  }
  return k;
}

}  // namespace rng
}  // namespace feyncoh
