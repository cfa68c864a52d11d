#pragma once

#include <string>
#include <vector>

#include "feyncoh/spectrum.hpp"

namespace feyncoh {

enum class Domain { Temporal, Spatial };

enum class Statistics { Boson, Fermion };

/// +1 for bosons, -1 for fermions.
inline int exchange_sign(Statistics s) { return s == Statistics::Boson ? +1 : -1; }

enum class PhaseModelKind {
  CoherentPhase,    ///< one shared phase per coherence interval, redrawn per interval
  RandomPerPhoton,  ///< independent uniform phase per emitted quantum
};

class PhaseModel {
 public:
  static PhaseModel coherent(double coherence_time);
  static PhaseModel random_per_photon();

  PhaseModelKind kind() const { return kind_; }
  /// Coherence interval length [s]; only meaningful for CoherentPhase.
  double coherence_time() const { return coherence_time_; }

 private:
  PhaseModel(PhaseModelKind kind, double tau_c) : kind_(kind), coherence_time_(tau_c) {}
  PhaseModelKind kind_;
  double coherence_time_;
};

enum class SourceKind {
  Thermal,
  Laser,
  SinglePhoton,
  SuperbunchingCascade,
  SuperbunchingModulated,
  EntangledPairEmitter,
  ColdAtomCloud,
  Bec,
};

std::string to_string(SourceKind kind);

/// Sampled intensity correlation gamma(tau) with linear interpolation,
/// clamped to the end values outside the tabulated range.
struct GammaTable {
  std::vector<double> tau;    ///< strictly increasing, tau[0] == 0
  std::vector<double> value;  ///< gamma at each tau

  double operator()(double t) const;
  bool empty() const { return tau.empty(); }
};

/// One light or matter-wave source. Immutable after construction; the
/// constructor enforces every cross-field rule, so a constructed SourceSpec
/// is always internally consistent.
class SourceSpec {
 public:
  struct Fields {
    SourceKind kind = SourceKind::Thermal;
    double position = 0.0;          ///< transverse coordinate [m]
    double extent = 0.0;            ///< source length [m], 0 for a point source
    double intensity_weight = 1.0;  ///< dimensionless, >= 0
    Spectrum spectrum = Spectrum::monochromatic(1.0);
    PhaseModelKind phase_model = PhaseModelKind::RandomPerPhoton;
    double phase_coherence_time = 0.0;  ///< [s]; 0 means "use spectrum coherence time"
    Statistics statistics = Statistics::Boson;
    double particle_mass = 0.0;           ///< [kg], 0 for photons
    double particle_speed = 299792458.0;  ///< [m/s], c for photons
    int cascade_stages = 1;               ///< SuperbunchingCascade only
    GammaTable gamma;                     ///< SuperbunchingModulated only
  };

  explicit SourceSpec(const Fields& f);

  // Convenience factories for the common cases.
  static SourceSpec thermal(const Spectrum& s, double position = 0.0, double extent = 0.0,
                            double intensity = 1.0);
  static SourceSpec laser(const Spectrum& s, double position = 0.0, double intensity = 1.0);
  static SourceSpec single_photon(const Spectrum& s, double position = 0.0,
                                  double intensity = 1.0,
                                  Statistics stats = Statistics::Boson);
  static SourceSpec cascade(const Spectrum& s, int stages, double intensity = 1.0);
  static SourceSpec modulated(const Spectrum& s, GammaTable gamma, double intensity = 1.0);
  static SourceSpec entangled_pair(const Spectrum& s, double position = 0.0,
                                   double extent = 0.0);
  static SourceSpec cold_atoms(const Spectrum& s, double mass, double speed,
                               Statistics stats, double position = 0.0, double extent = 0.0,
                               double intensity = 1.0);
  static SourceSpec bec(const Spectrum& s, double mass, double speed, double position = 0.0,
                        double intensity = 1.0);

  SourceKind kind() const { return fields_.kind; }
  double position() const { return fields_.position; }
  double extent() const { return fields_.extent; }
  double intensity_weight() const { return fields_.intensity_weight; }
  const Spectrum& spectrum() const { return fields_.spectrum; }
  PhaseModelKind phase_model() const { return fields_.phase_model; }
  double phase_coherence_time() const;
  Statistics statistics() const { return fields_.statistics; }
  double particle_mass() const { return fields_.particle_mass; }
  double particle_speed() const { return fields_.particle_speed; }
  int cascade_stages() const { return fields_.cascade_stages; }
  const GammaTable& gamma() const { return fields_.gamma; }

  bool coherent_phase() const { return fields_.phase_model == PhaseModelKind::CoherentPhase; }
  /// Maximum emissions per coherence interval; -1 means unbounded.
  int emission_cap() const;
  /// Photons per emission act: 2 for pair emitters, otherwise 1.
  int emission_arity() const;
  /// Carrier wavelength: 2*pi*c/omega0 for photons, h/(m v) for matter.
  double wavelength() const;

 private:
  Fields fields_;
};

/// Required phase model for a source kind.
PhaseModelKind required_phase_model(SourceKind kind);

struct DetectorSpec {
  double position = 0.0;               ///< transverse coordinate [m]
  double position_uncertainty = 1e-10; ///< detection resolution Delta x [m]
  int id = 0;

  DetectorSpec() = default;
  DetectorSpec(double pos, double dx, int id);
};

struct Geometry {
  double L = 1.0;          ///< source plane to detection plane distance [m]
  bool paraxial = true;
  double wavelength = 0.0; ///< carrier wavelength [m]

  Geometry() = default;
  Geometry(double L, bool paraxial, double wavelength);
};

/// Paraxial-mode sanity check: max transverse extent must be < L/10.
void check_paraxial(const Geometry& g, const std::vector<SourceSpec>& sources,
                    const std::vector<DetectorSpec>& detectors);

}  // namespace feyncoh
