#pragma once

#include <optional>
#include <span>
#include <vector>

#include "feyncoh/source.hpp"
#include "feyncoh/spectrum.hpp"

namespace feyncoh {

enum class PatternAxis { TimeDifference, Position, PositionPair, TimePair };

enum class Normalization {
  Raw,                      ///< values as printed in the closed form
  UncorrelatedBaselineOne,  ///< independent detections give exactly 1
};

/// A sampled probability function over a time-difference or position grid.
/// For pair axes the values are row-major over (grid, grid2).
struct PatternSamples {
  PatternAxis axis = PatternAxis::TimeDifference;
  std::vector<double> grid;
  std::vector<double> grid2;
  std::vector<double> values;
  Normalization normalization = Normalization::Raw;

  double& at(std::size_t i, std::size_t j) { return values[i * grid2.size() + j]; }
  double at(std::size_t i, std::size_t j) const { return values[i * grid2.size() + j]; }
};

/// (max - min) / (max + min) over the sampled values.
double fringe_visibility(const PatternSamples& p);
double fringe_visibility(std::span<const double> values);

/// Uniformly spaced grid of n points over [-span, span].
std::vector<double> symmetric_grid(double span, int n = 512);

// ---------------------------------------------------------------------------
// First order
// ---------------------------------------------------------------------------

enum class MzGaussianVariant {
  // Envelope exp(-sigma^2 (t1^2 + t2^2)/2) / (exp(-sigma^2 t1^2) + exp(-sigma^2 t2^2))
  // evaluated on the slice t1 = tau, t2 = 0. Never exceeds visibility 1/2.
  PaperVerbatim,
  // Standard first-order coherence envelope exp(-sigma^2 tau^2 / 2).
  StandardEnvelope,
};

/// Mach-Zehnder first-order pattern over a path time-difference grid:
/// monochromatic 1 + cos(w0 tau); finite bandwidth adds the spectral
/// envelope (for Gaussian spectra the variant selects between the two
/// published forms, which disagree; both are provided).
PatternSamples mz_first_order(const Spectrum& spectrum, std::span<const double> tau_grid,
                              MzGaussianVariant variant = MzGaussianVariant::StandardEnvelope);

struct MultiBeamOptions {
  std::vector<double> phases;  ///< initial phase per source (lasers/BECs)
  long n_detected = 1;         ///< N
  long n_simultaneous = 0;     ///< N2, single-photon sources only
  bool long_average = false;   ///< average over many coherence intervals
};

struct MultiBeamResult {
  PatternSamples pattern;
  double visibility = 0.0;
};

/// First-order pattern of 2 or 3 independent beams over a position grid and
/// its fringe visibility: two lasers 1 (transient) or ~0 (long average), two
/// thermal 1/sqrt(N), two single-photon sqrt(N2)/N, three lasers the exact
/// three-source form with the printed d12/2 and d23/2 offsets.
MultiBeamResult multi_beam_first_order(const std::vector<SourceSpec>& sources,
                                       const Geometry& geometry,
                                       std::span<const double> x_grid,
                                       const MultiBeamOptions& options);

// ---------------------------------------------------------------------------
// Second order, one beam (HBT)
// ---------------------------------------------------------------------------

struct HbtParams {
  double bandwidth = 0.0;    ///< angular frequency bandwidth [rad/s] (temporal)
  double source_size = 0.0;  ///< source length [m] (spatial)
  double wavelength = 0.0;   ///< carrier wavelength [m] (spatial)
  double L = 1.0;            ///< propagation distance [m] (spatial)
  int stages = 1;            ///< superbunching cascade stages
  GammaTable gamma;          ///< superbunching modulation
};

/// Normalized g2 of one beam in an HBT interferometer. Peak values:
/// thermal/cold atoms 2, laser/BEC 1 (flat), cascade 2^stages, modulated
/// gamma(0) * 2, fermions 0 (dip 1 - sinc^2).
PatternSamples hbt_second_order(SourceKind kind, Statistics statistics, Domain domain,
                                const HbtParams& params, std::span<const double> grid);

// ---------------------------------------------------------------------------
// Second order, two beams (HOM)
// ---------------------------------------------------------------------------

enum class HomPair {
  EntangledPair,
  TwoSinglePhoton,
  TwoLasers,     ///< bandwidth means the laser detuning omega1 - omega2
  LaserThermal,
  TwoBec,
  FermionPair,
};

struct HomParams {
  double bandwidth = 0.0;    ///< matched-source bandwidth, or detuning for TwoLasers
  double source_size = 0.0;  ///< spatial: source length (thermal length l for LaserThermal)
  double separation = 0.0;   ///< spatial: source separation d (LaserThermal)
  double wavelength = 0.0;
  double L = 1.0;
};

/// Normalized second-order pattern behind a 1:1 beam splitter fed by two
/// beams. The reflected-photon pi/2 phase is built in.
PatternSamples hom_second_order(HomPair pair, Domain domain, const HomParams& params,
                                std::span<const double> grid);

// ---------------------------------------------------------------------------
// Second order, three sources
// ---------------------------------------------------------------------------

/// Two-photon pattern of three collinear sources vs x1 - x2; baseline 3 for
/// single-photon sources, 4.5 for lasers. Values are the raw closed form.
PatternSamples multi_source_second_order(SourceKind kind, double d12, double d23,
                                         const Geometry& geometry,
                                         std::span<const double> dx_grid);

// ---------------------------------------------------------------------------
// Subwavelength interference
// ---------------------------------------------------------------------------

enum class SubwavelengthScan { FixOne, SameDirection, OppositeDirections };
enum class SubwavelengthPhase { EqualFixed, RandomRelative };

struct SubwavelengthTerm {
  enum class Kind { Constant, Detector1, Detector2, SumCoordinate, DifferenceCoordinate };
  Kind kind;
  double coefficient;     ///< relative to the constant term (= 1)
  double scan_frequency;  ///< spatial frequency along the chosen scan [rad/m]
};

struct SubwavelengthResult {
  std::vector<SubwavelengthTerm> terms;
  /// Fringe period along the scan, from the fastest surviving oscillatory
  /// term; empty when no term oscillates along the scan.
  std::optional<double> effective_period;
  double visibility = 0.0;  ///< of the surviving pattern along the scan
};

/// Decompose the two-laser two-photon pattern into its five terms and
/// report which survive the phase mode (random relative phase removes the
/// single-coordinate and x1+x2 terms) and the fringe period of the scan.
SubwavelengthResult subwavelength_decomposition(SubwavelengthScan scan,
                                                SubwavelengthPhase phase_mode, double d,
                                                const Geometry& geometry);

// ---------------------------------------------------------------------------
// Third order
// ---------------------------------------------------------------------------

/// Three-fold bunching factor 1 + sum sinc^2 + 2 prod sinc of the three
/// pairwise arguments (boson HBT).
double thermal_g3(double u12, double u23, double u31);

/// Fermion three-fold factor 1 - sum sinc^2 + 2 prod sinc.
double fermion_g3(double u12, double u23, double u31);

enum class ThirdOrderConfig {
  ThermalHbt3Temporal,    ///< 2-D over (t1-t2, t1-t3)
  ThermalHbt3Spatial,     ///< 2-D over (x1-x2, x1-x3)
  FermionHbt3,            ///< 2-D over (t1-t2, t2-t3)
  SinglePhotonPlusLaser,  ///< 1-D slice x1 = s, x2 = 0, x3 = -s
  ThreeSinglePhoton,      ///< 2-D over (x1, x2) at fixed x3
  ThreeSinglePhotonSlice, ///< 2-D over (x1, x2) with d12 = d23 = d, x3 = x2
};

struct ThirdOrderParams {
  double bandwidth = 0.0;
  double source_size = 0.0;
  double wavelength = 0.0;
  double L = 1.0;
  double d12 = 0.0, d23 = 0.0, d = 0.0;
  double x3 = 0.0;
  double intensity1 = 1.0, intensity2 = 1.0;  ///< SinglePhotonPlusLaser
};

/// Closed-form third-order patterns. 2-D configs use (grid1, grid2); the
/// SinglePhotonPlusLaser slice uses grid1 only.
PatternSamples third_order_pattern(ThirdOrderConfig config, const ThirdOrderParams& params,
                                   std::span<const double> grid1,
                                   std::span<const double> grid2);

/// Raw three-photon probability of one single-photon source plus one laser,
/// 3 I1^2 [3 + 2 cos a(x1-x2) + 2 cos a(x2-x3) + 2 cos a(x1-x3)] + I2^2.
double single_photon_plus_laser_p3(double a_x12, double a_x23, double a_x13, double i1,
                                   double i2);

}  // namespace feyncoh
