#include "feyncoh/source.hpp"

#include <algorithm>
#include <cmath>

#include "feyncoh/constants.hpp"
#include "feyncoh/errors.hpp"

namespace feyncoh {

std::string to_string(SourceKind kind) {
  switch (kind) {
    case SourceKind::Thermal: return "thermal";
    case SourceKind::Laser: return "laser";
    case SourceKind::SinglePhoton: return "single-photon";
    case SourceKind::SuperbunchingCascade: return "cascade";
    case SourceKind::SuperbunchingModulated: return "modulated";
    case SourceKind::EntangledPairEmitter: return "entangled-pair";
    case SourceKind::ColdAtomCloud: return "cold-atom";
    case SourceKind::Bec: return "bec";
  }
  return "?";
}

PhaseModel PhaseModel::coherent(double coherence_time) {
  if (!(coherence_time > 0.0))
    throw DomainError("phase model: coherence time must be positive");
  return PhaseModel(PhaseModelKind::CoherentPhase, coherence_time);
}

PhaseModel PhaseModel::random_per_photon() {
  return PhaseModel(PhaseModelKind::RandomPerPhoton, 0.0);
}

double GammaTable::operator()(double t) const {
  if (tau.empty()) return 1.0;
  t = std::abs(t);
  if (t <= tau.front()) return value.front();
  if (t >= tau.back()) return value.back();
  auto it = std::upper_bound(tau.begin(), tau.end(), t);
  std::size_t i = static_cast<std::size_t>(it - tau.begin());
  double f = (t - tau[i - 1]) / (tau[i] - tau[i - 1]);
  return value[i - 1] + f * (value[i] - value[i - 1]);
}

PhaseModelKind required_phase_model(SourceKind kind) {
  switch (kind) {
    case SourceKind::Laser:
    case SourceKind::Bec:
      return PhaseModelKind::CoherentPhase;
    default:
      return PhaseModelKind::RandomPerPhoton;
  }
}

namespace {

void validate_gamma(const GammaTable& g) {
  if (g.tau.size() != g.value.size() || g.tau.size() < 2)
    throw UsageError("modulated source: gamma table needs matching tau/value arrays (>= 2 points)");
  if (g.tau.front() != 0.0)
    throw UsageError("modulated source: gamma table must start at tau = 0");
  for (std::size_t i = 1; i < g.tau.size(); ++i)
    if (!(g.tau[i] > g.tau[i - 1]))
      throw UsageError("modulated source: gamma table tau values must be strictly increasing");
  if (!(g(0.0) >= 1.0))
    throw DomainError("modulated source: gamma(0) must be >= 1");
  // Sampled tail check for gamma(tau -> inf) -> 1.
  if (std::abs(g(g.tau.back()) - 1.0) > 1e-3)
    throw DomainError("modulated source: gamma must return to 1 at the end of the table");
}

}  // namespace

SourceSpec::SourceSpec(const Fields& f) : fields_(f) {
  if (!(f.intensity_weight >= 0.0) || !std::isfinite(f.intensity_weight))
    throw DomainError("source: intensity weight must be >= 0");
  if (!(f.extent >= 0.0) || !std::isfinite(f.extent))
    throw DomainError("source: extent must be >= 0");
  if (!std::isfinite(f.position))
    throw DomainError("source: position must be finite");

  if (f.phase_model != required_phase_model(f.kind))
    throw UsageError("source: kind '" + to_string(f.kind) + "' requires the " +
                     (required_phase_model(f.kind) == PhaseModelKind::CoherentPhase
                          ? std::string("coherent-phase")
                          : std::string("random-per-photon")) +
                     " phase model");
  if (f.statistics == Statistics::Fermion &&
      (f.kind == SourceKind::Laser || f.kind == SourceKind::Bec))
    throw UsageError("source: fermion statistics is incompatible with phase-coherent sources "
                     "(laser, BEC)");

  if (f.kind == SourceKind::SuperbunchingCascade && f.cascade_stages < 1)
    throw DomainError("source: cascade needs at least one stage");
  if (f.kind == SourceKind::SuperbunchingModulated) validate_gamma(f.gamma);

  const bool matter = f.kind == SourceKind::ColdAtomCloud || f.kind == SourceKind::Bec;
  if (matter) {
    if (!(f.particle_mass > 0.0)) throw DomainError("source: matter waves need mass > 0");
    if (!(f.particle_speed > 0.0)) throw DomainError("source: matter waves need speed > 0");
  } else {
    if (f.particle_mass != 0.0)
      throw UsageError("source: photon sources must have particle_mass = 0");
  }
  if (f.phase_coherence_time < 0.0)
    throw DomainError("source: phase coherence time must be >= 0");
}

double SourceSpec::phase_coherence_time() const {
  if (fields_.phase_coherence_time > 0.0) return fields_.phase_coherence_time;
  return fields_.spectrum.coherence_time();
}

int SourceSpec::emission_cap() const {
  switch (fields_.kind) {
    case SourceKind::SinglePhoton: return 1;
    case SourceKind::EntangledPairEmitter: return 2;
    default: return -1;
  }
}

int SourceSpec::emission_arity() const {
  return fields_.kind == SourceKind::EntangledPairEmitter ? 2 : 1;
}

double SourceSpec::wavelength() const {
  if (fields_.particle_mass > 0.0)
    return constants.h / (fields_.particle_mass * fields_.particle_speed);
  return two_pi * constants.c / fields_.spectrum.omega0();
}

SourceSpec SourceSpec::thermal(const Spectrum& s, double position, double extent,
                               double intensity) {
  Fields f;
  f.kind = SourceKind::Thermal;
  f.spectrum = s;
  f.position = position;
  f.extent = extent;
  f.intensity_weight = intensity;
  return SourceSpec(f);
}

SourceSpec SourceSpec::laser(const Spectrum& s, double position, double intensity) {
  Fields f;
  f.kind = SourceKind::Laser;
  f.spectrum = s;
  f.position = position;
  f.intensity_weight = intensity;
  f.phase_model = PhaseModelKind::CoherentPhase;
  return SourceSpec(f);
}

SourceSpec SourceSpec::single_photon(const Spectrum& s, double position, double intensity,
                                     Statistics stats) {
  Fields f;
  f.kind = SourceKind::SinglePhoton;
  f.spectrum = s;
  f.position = position;
  f.intensity_weight = intensity;
  f.statistics = stats;
  return SourceSpec(f);
}

SourceSpec SourceSpec::cascade(const Spectrum& s, int stages, double intensity) {
  Fields f;
  f.kind = SourceKind::SuperbunchingCascade;
  f.spectrum = s;
  f.cascade_stages = stages;
  f.intensity_weight = intensity;
  return SourceSpec(f);
}

SourceSpec SourceSpec::modulated(const Spectrum& s, GammaTable gamma, double intensity) {
  Fields f;
  f.kind = SourceKind::SuperbunchingModulated;
  f.spectrum = s;
  f.gamma = std::move(gamma);
  f.intensity_weight = intensity;
  return SourceSpec(f);
}

SourceSpec SourceSpec::entangled_pair(const Spectrum& s, double position, double extent) {
  Fields f;
  f.kind = SourceKind::EntangledPairEmitter;
  f.spectrum = s;
  f.position = position;
  f.extent = extent;
  return SourceSpec(f);
}

SourceSpec SourceSpec::cold_atoms(const Spectrum& s, double mass, double speed,
                                  Statistics stats, double position, double extent,
                                  double intensity) {
  Fields f;
  f.kind = SourceKind::ColdAtomCloud;
  f.spectrum = s;
  f.particle_mass = mass;
  f.particle_speed = speed;
  f.statistics = stats;
  f.position = position;
  f.extent = extent;
  f.intensity_weight = intensity;
  return SourceSpec(f);
}

SourceSpec SourceSpec::bec(const Spectrum& s, double mass, double speed, double position,
                           double intensity) {
  Fields f;
  f.kind = SourceKind::Bec;
  f.spectrum = s;
  f.particle_mass = mass;
  f.particle_speed = speed;
  f.position = position;
  f.intensity_weight = intensity;
  f.phase_model = PhaseModelKind::CoherentPhase;
  return SourceSpec(f);
}

DetectorSpec::DetectorSpec(double pos, double dx, int id_)
    : position(pos), position_uncertainty(dx), id(id_) {
  if (!(dx > 0.0)) throw DomainError("detector: position uncertainty must be > 0");
  if (!std::isfinite(pos)) throw DomainError("detector: position must be finite");
}

Geometry::Geometry(double L_, bool paraxial_, double wavelength_)
    : L(L_), paraxial(paraxial_), wavelength(wavelength_) {
  if (!(L > 0.0)) throw DomainError("geometry: L must be > 0");
  if (!(wavelength > 0.0)) throw DomainError("geometry: wavelength must be > 0");
}

void check_paraxial(const Geometry& g, const std::vector<SourceSpec>& sources,
                    const std::vector<DetectorSpec>& detectors) {
  if (!g.paraxial) return;
  double span = 0.0;
  for (const auto& s : sources)
    span = std::max(span, std::abs(s.position()) + s.extent() / 2.0);
  for (const auto& d : detectors) span = std::max(span, std::abs(d.position));
  if (!(span < g.L / 10.0))
    throw DomainError("geometry: paraxial mode requires transverse extents < L/10");
}

}  // namespace feyncoh
