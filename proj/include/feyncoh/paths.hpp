#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "feyncoh/constants.hpp"
#include "feyncoh/propagators.hpp"
#include "feyncoh/source.hpp"

namespace feyncoh {

/// One particle's route: emission (source, emission label) to a detector,
/// optionally routed through intermediate scatterer nodes (cascade sources).
/// Emission labels of coherent-phase sources are canonicalized to 0: all
/// photons of a laser within one coherence interval occupy the same mode.
struct PathLeg {
  int source = 0;
  int emission = 0;
  int detector = 0;
  std::vector<int> nodes;

  bool operator==(const PathLeg&) const = default;
  auto operator<=>(const PathLeg&) const = default;
};

/// One assignment of the emitted particles to the detectors.
struct Path {
  std::vector<PathLeg> legs;       ///< indexed by detector
  std::vector<int> phase_symbols;  ///< symbol ids, sorted, with multiplicity
  int reflection_count = 0;        ///< beam-splitter reflections along the path
  int sign = 1;                    ///< fermion exchange sign (permutation parity)
};

struct PhaseSymbolInfo {
  enum class Kind { Emission, CascadeNode };
  Kind kind = Kind::Emission;
  int source = 0;
  int label = 0;  ///< emission label, or cascade stage for nodes
  int node = -1;  ///< cascade node index, -1 for emissions
};

/// A distinguishable alternative: which sources emitted how many particles.
/// Its paths are the indistinguishable detector assignments whose amplitudes
/// superpose; identical paths (after coherent-mode canonicalization) are
/// already collapsed to one.
struct Way {
  double probability_weight = 1.0;
  std::vector<int> emissions_per_source;
  std::vector<Path> paths;
  bool distinguishable_from_other_ways = false;
};

struct WaySet {
  std::vector<Way> ways;
  std::vector<PhaseSymbolInfo> symbols;
  int order = 0;
  int n_sources = 0;
};

/// Exhaustively enumerate the ways to trigger an order-fold coincidence:
/// every multiset of `order` emissions (single-photon sources emit at most
/// one per coherence interval), weighted by the multinomial intensity ratio
/// and renormalized over the feasible set. Each way carries all distinct
/// detector assignments as paths. Order is capped at 4.
WaySet enumerate_ways(const std::vector<SourceSpec>& sources, int order);

/// Fill path reflection counts from a per-(port, detector) reflection table.
/// Ports follow source order; an entangled-pair emitter occupies two
/// consecutive ports, one per photon of the pair.
void assign_reflections(WaySet& ways, const std::vector<SourceSpec>& sources,
                        const std::vector<std::vector<int>>& reflections);

enum class DistinguishabilityReason {
  MomentumResolvable,
  OutsideCoherenceVolume,
  SourceStatusMeasurable,
};

struct DistinguishabilityVerdict {
  bool distinguishable = false;
  std::optional<DistinguishabilityReason> reason;
};

struct ClassifyContext {
  std::vector<SourceSpec> sources;
  std::vector<DetectorSpec> detectors;
  Geometry geometry;
  /// emission_times[source][emission label] [s]; empty means simultaneous.
  std::vector<std::vector<double>> emission_times;
};

/// Decide whether two alternative paths of the same configuration could in
/// principle be told apart: by momentum resolution (source separation
/// d > lambda L / dx), by emission-time separation beyond the coherence
/// time, or by measuring which single-photon sources fired.
DistinguishabilityVerdict classify(const Path& a, const Path& b, const ClassifyContext& ctx);

using LegAmplitudeFn = std::function<Amplitude(const PathLeg&)>;

/// Rule-II superposition over the indistinguishable paths of one way:
///   sum_p sign * exp(i(sum of initial phases + reflections * bs_phase)) * prod(leg amplitudes)
/// normalized by 1/sqrt(path count). Every phase symbol of the way must be
/// assigned in phase_by_symbol.
Amplitude way_amplitude(const Way& way, std::span<const double> phase_by_symbol,
                        double bs_reflection_phase, const LegAmplitudeFn& leg_amplitude);

/// Interferometer context for the stochastic ensemble engine.
struct CoincidenceSetup {
  std::vector<SourceSpec> sources;
  Domain domain = Domain::Temporal;
  Geometry geometry;  ///< spatial domain only (L and carrier wavelength)
  /// reflections[port][detector]; empty means no beam splitter phases.
  std::vector<std::vector<int>> reflections;
  double bs_reflection_phase = pi / 2.0;
  /// Force rule III at path level: add per-path probabilities, no cross terms.
  bool force_distinguishable = false;
  /// Groups of source indices sharing one initial phase (beams split from a
  /// common laser). Sources not listed draw independent phases.
  std::vector<std::vector<int>> phase_lock_groups;
};

struct EnsembleEstimate {
  double value = 0.0;
  double std_error = 0.0;
  long samples = 0;
};

/// Ensemble-averaged, normalized n-fold detection probability at the given
/// detector coordinates (times [s] in the temporal domain, positions [m] in
/// the spatial domain). Per sample, initial phases and source modes are
/// drawn per phase model (coherent sources: one shared phase and mode per
/// coherence interval; random sources: fresh per emission), amplitudes are
/// superposed by rule II within each group of mutually indistinguishable
/// ways and by rule III across groups, and the result is normalized by the
/// uncorrelated baseline (all cross terms disabled) so independent
/// detections give exactly 1.
/// Deterministic: identical (seed, n_samples, workers) give bit-identical
/// results; each worker derives substreams from the sample index alone.
EnsembleEstimate ensemble_probability(const WaySet& ways, const CoincidenceSetup& setup,
                                      std::span<const double> detector_coords, long n_samples,
                                      std::uint64_t seed, int workers = 1);

/// ensemble_probability over a list of coordinate tuples.
std::vector<EnsembleEstimate> ensemble_scan(const WaySet& ways, const CoincidenceSetup& setup,
                                            const std::vector<std::vector<double>>& coords,
                                            long n_samples, std::uint64_t seed,
                                            int workers = 1);

using AmplitudeMatrix = std::vector<std::vector<Amplitude>>;

/// Permanent by explicit permutation expansion (the n-boson path sum).
Amplitude matrix_permanent(const AmplitudeMatrix& m);

/// Determinant by explicit signed permutation expansion (the n-fermion path
/// sum).
Amplitude matrix_determinant(const AmplitudeMatrix& m);

}  // namespace feyncoh
