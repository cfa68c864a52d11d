#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "feyncoh/patterns.hpp"
#include "feyncoh/source.hpp"

namespace feyncoh {

struct DetectionEvent {
  int detector = 0;
  double timestamp = 0.0;  ///< [s]
};

struct CorrelationResult {
  int order = 2;
  std::vector<double> tau_edges;      ///< bin edges [s]
  std::vector<double> g;              ///< normalized correlation per bin
  std::vector<long> coincidences;     ///< raw counts per bin
  std::vector<long> singles;          ///< per detector
  double window = 0.0;                ///< coincidence window T [s]
  double duration = 0.0;              ///< observation time [s]
  bool window_warning = false;        ///< window not below the coherence time
};

struct SimulationConfig {
  std::vector<SourceSpec> sources;
  std::vector<DetectorSpec> detectors;
  Geometry geometry;
  int order = 2;
  long n_photons = 0;
  double duration = 0.0;  ///< [s]; 0 keeps all photons in one coherence interval
  std::uint64_t seed = 0;
  int bins = 64;
};

struct CosineFit {
  double baseline = 0.0;
  double visibility = 0.0;
  double phase = 0.0;
  bool ok = false;
};

/// Linear least squares of y ~ a (1 + V cos(k x + phi)) with k known.
CosineFit fit_cosine(std::span<const double> x, std::span<const double> y, double k);

struct FirstOrderSim {
  PatternSamples histogram;          ///< sampled detection positions, counts per bin
  std::vector<double> accumulated;   ///< sum of per-photon probability patterns on the grid
  double visibility_fit = 0.0;       ///< cosine fit of the accumulated pattern
  double visibility_extrema = 0.0;   ///< extrema-based cross-check on the same pattern
  double visibility_hist_fit = 0.0;  ///< cosine fit of the position histogram
  double phase_fit = 0.0;
  bool fit_ok = false;
};

/// Photon-by-photon two-beam interference build-up: per photon, draw initial
/// phases per phase model (one per coherence interval for lasers, fresh per
/// photon for thermal light), draw a detection position from
/// 1 + cos(2 pi d x / (lambda L) + dphi), and accumulate both the position
/// histogram and the exact per-photon probability pattern. The reported
/// visibility is fitted on the accumulated pattern with the fringe frequency
/// held fixed; the histogram fit is reported alongside.
FirstOrderSim simulate_first_order(const SimulationConfig& config,
                                   std::span<const double> x_grid);

struct EventConfig {
  SourceSpec source = SourceSpec::laser(Spectrum::monochromatic(1.0));
  int n_detectors = 2;
  double mean_rate = 1e5;      ///< singles rate per detector [Hz]
  double duration = 1.0;       ///< [s]
  double coherence_time = 0.0; ///< [s]; 0 derives it from the source spectrum
  std::uint64_t seed = 0;
};

struct EventStreams {
  std::vector<std::vector<DetectionEvent>> streams;  ///< per detector, time-ordered
  double duration = 0.0;
  double coherence_time = 0.0;
  bool low_rate_warning = false;  ///< fewer than 100 expected events
};

/// Deterministic detection-event streams whose coincidence statistics
/// reproduce the source's g(n): thermal-like sources are intensity-modulated
/// with one exponential speckle weight per coherence interval (a cascade
/// multiplies one weight per stage), laser-like sources are constant-rate
/// Poisson, and a single-photon source emits at most one photon per interval
/// into one output port. Identical seeds give identical streams.
EventStreams generate_events(const EventConfig& config);

/// Windowed n-fold coincidence counting (n = 2 or 3): every tuple with one
/// event per detector and all pairwise time differences within the window
/// counts; no event consumption, no dead time. For n = 2 the counts are
/// binned by t1 - t2; for n = 3 both t1 - t2 and t1 - t3 must fall into the
/// same bin (the diagonal slice). Bins are normalized by singles rates and
/// bin width so independent streams give 1.
CorrelationResult correlate(const std::vector<std::vector<DetectionEvent>>& streams,
                            int order, double window, int n_bins,
                            double coherence_time_hint = 0.0);

/// Time-averaged intensity product correlation of equal-length sampled
/// traces, normalized by the mean intensities; lags run over
/// [-max_lag, max_lag] samples. With a third trace the three-fold diagonal
/// correlation is computed.
CorrelationResult intensity_correlation(std::span<const double> trace1,
                                        std::span<const double> trace2, int max_lag,
                                        double dt = 1.0,
                                        std::span<const double> trace3 = {});

}  // namespace feyncoh
