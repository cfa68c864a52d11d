#include "feyncoh/experiment.hpp"

namespace feyncoh {

// Bundled configurations; `feyncoh run <name>` resolves these when no file
// of that name exists. They double as format documentation.
const std::vector<std::pair<std::string, std::string>>& bundled_presets() {
  static const std::vector<std::pair<std::string, std::string>> presets = {
      {"thermal-hbt-temporal",
       R"(# Thermal light in an HBT interferometer, temporal g2.
name = thermal-hbt-temporal
experiment = hbt
mode = both
domain = temporal
order = 2
grid.points = 129
samples = 20000
seed = 7
source.1.kind = thermal
source.1.spectrum = rectangular
source.1.omega0 = 2.9767e15 rad/s
source.1.bandwidth = 1 GHz
out = runs/thermal-hbt-temporal
)"},
      {"thermal-hbt-spatial",
       R"(# Extended thermal source, spatial two-photon bunching.
name = thermal-hbt-spatial
experiment = hbt
mode = both
domain = spatial
order = 2
grid.points = 129
samples = 20000
seed = 7
grid.span = 4 mm
source.1.kind = thermal
source.1.spectrum = monochromatic
source.1.omega0 = 2.9767e15 rad/s
source.1.extent = 1 mm
geometry.L = 1 m
out = runs/thermal-hbt-spatial
)"},
      {"thermal-hbt-distinguishable",
       R"(# Thermal HBT with rule III forced at path level: flat background of 1.
name = thermal-hbt-distinguishable
experiment = hbt
mode = both
domain = temporal
order = 2
grid.points = 65
samples = 5000
seed = 7
force-distinguishable = true
source.1.kind = thermal
source.1.spectrum = rectangular
source.1.omega0 = 2.9767e15 rad/s
source.1.bandwidth = 1 GHz
out = runs/thermal-hbt-distinguishable
)"},
      {"cascade-hbt",
       R"(# Three-stage superbunching cascade: g2(0) = 2^3 = 8.
name = cascade-hbt
experiment = hbt
mode = both
domain = temporal
order = 2
grid.points = 129
samples = 20000
seed = 11
source.1.kind = cascade
source.1.stages = 3
source.1.spectrum = rectangular
source.1.omega0 = 2.9767e15 rad/s
source.1.bandwidth = 1 GHz
out = runs/cascade-hbt
)"},
      {"modulated-hbt",
       R"(# Intensity-modulated superbunching: gamma(0) * 2 at zero delay.
name = modulated-hbt
experiment = hbt
mode = analytic
domain = temporal
order = 2
grid.points = 257
source.1.kind = modulated
source.1.spectrum = rectangular
source.1.omega0 = 2.9767e15 rad/s
source.1.bandwidth = 1 GHz
source.1.gamma = 0:10.0, 2e-9:4.0, 5e-9:1.5, 1e-8:1.0
out = runs/modulated-hbt
)"},
      {"hom-entangled",
       R"(# Entangled photon pair in a HOM interferometer: dip to 0 at tau = 0.
name = hom-entangled
experiment = hom
mode = both
domain = temporal
order = 2
grid.points = 129
samples = 20000
seed = 13
source.1.kind = entangled-pair
source.1.spectrum = rectangular
source.1.omega0 = 2.9767e15 rad/s
source.1.bandwidth = 1 GHz
out = runs/hom-entangled
)"},
      {"laser-laser-beating",
       R"(# Two detuned CW lasers behind a beam splitter: 1 - cos(dw tau)/2.
name = laser-laser-beating
experiment = hom
mode = both
domain = temporal
order = 2
grid.points = 129
samples = 20000
seed = 17
source.1.kind = laser
source.1.spectrum = monochromatic
source.1.omega0 = 2.9767e15 rad/s
source.2.kind = laser
source.2.spectrum = monochromatic
source.2.omega0 = 2.9767006283185307e15 rad/s
out = runs/laser-laser-beating
)"},
      {"laser-thermal-hom",
       R"(# One laser and one thermal beam on a beam splitter, spatial pattern.
name = laser-thermal-hom
experiment = hom
mode = both
domain = spatial
order = 2
grid.points = 129
samples = 20000
seed = 19
grid.span = 2 mm
source.1.kind = laser
source.1.spectrum = monochromatic
source.1.omega0 = 2.9767e15 rad/s
source.1.position = 0 m
source.2.kind = thermal
source.2.spectrum = monochromatic
source.2.omega0 = 2.9767e15 rad/s
source.2.position = 1 mm
source.2.extent = 0.02 mm
geometry.L = 1 m
out = runs/laser-thermal-hom
)"},
      {"fermion-hbt",
       R"(# Fermion beam in an HBT interferometer: antibunching dip to 0.
name = fermion-hbt
experiment = hbt
mode = both
domain = temporal
order = 2
grid.points = 129
samples = 20000
seed = 23
source.1.kind = cold-atom
source.1.statistics = fermion
source.1.spectrum = rectangular
source.1.omega0 = 6.3e10 rad/s
source.1.bandwidth = 1e9 rad/s
source.1.mass = 6.64e-26 kg
source.1.speed = 10
out = runs/fermion-hbt
)"},
      {"fermion-hom",
       R"(# Two single-fermion emitters on a beam splitter: coincidence peak of 2.
name = fermion-hom
experiment = hom
mode = both
domain = temporal
order = 2
grid.points = 129
samples = 20000
seed = 29
source.1.kind = single-photon
source.1.statistics = fermion
source.1.spectrum = rectangular
source.1.omega0 = 6.3e10 rad/s
source.1.bandwidth = 1e9 rad/s
source.2.kind = single-photon
source.2.statistics = fermion
source.2.spectrum = rectangular
source.2.omega0 = 6.3e10 rad/s
source.2.bandwidth = 1e9 rad/s
out = runs/fermion-hom
)"},
      {"two-bec-hom",
       R"(# Two independent condensates on a beam splitter: dip to 1/2.
name = two-bec-hom
experiment = hom
mode = both
domain = temporal
order = 2
grid.points = 129
samples = 20000
seed = 31
source.1.kind = bec
source.1.spectrum = rectangular
source.1.omega0 = 6.3e10 rad/s
source.1.bandwidth = 1e9 rad/s
source.1.mass = 1.44e-25 kg
source.1.speed = 10
source.2.kind = bec
source.2.spectrum = rectangular
source.2.omega0 = 6.3e10 rad/s
source.2.bandwidth = 1e9 rad/s
source.2.mass = 1.44e-25 kg
source.2.speed = 10
out = runs/two-bec-hom
)"},
      {"two-laser-transient",
       R"(# Transient first-order fringes of two independent lasers.
name = two-laser-transient
experiment = first-order
mode = both
domain = spatial
grid.points = 257
n-detected = 10000
seed = 37
source.1.kind = laser
source.1.spectrum = monochromatic
source.1.omega0 = 2.9767e15 rad/s
source.1.position = 0.5 mm
source.2.kind = laser
source.2.spectrum = monochromatic
source.2.omega0 = 2.9767e15 rad/s
source.2.position = -0.5 mm
geometry.L = 1 m
out = runs/two-laser-transient
)"},
      {"visibility-decay",
       R"(# Median fringe visibility of two thermal beams vs detected photons.
name = visibility-decay
experiment = visibility-decay
mode = montecarlo
domain = spatial
seeds-per-point = 100
photon-counts = 100, 1000, 10000
seed = 41
source.1.kind = thermal
source.1.spectrum = monochromatic
source.1.omega0 = 2.9767e15 rad/s
source.1.position = 0.5 mm
source.2.kind = thermal
source.2.spectrum = monochromatic
source.2.omega0 = 2.9767e15 rad/s
source.2.position = -0.5 mm
geometry.L = 1 m
out = runs/visibility-decay
)"},
      {"multi-source-second-sp",
       R"(# Two-photon pattern of three single-photon sources, baseline 3.
name = multi-source-second-sp
experiment = multi-source-second
mode = both
domain = spatial
grid.points = 129
samples = 20000
seed = 43
grid.span = 2 mm
source.1.kind = single-photon
source.1.spectrum = monochromatic
source.1.omega0 = 2.9767e15 rad/s
source.1.position = 1.125 mm
source.2.kind = single-photon
source.2.spectrum = monochromatic
source.2.omega0 = 2.9767e15 rad/s
source.2.position = 0 m
source.3.kind = single-photon
source.3.spectrum = monochromatic
source.3.omega0 = 2.9767e15 rad/s
source.3.position = -1.125 mm
geometry.L = 1 m
out = runs/multi-source-second-sp
)"},
      {"subwavelength-fix-one",
       R"(# Two-laser second-order pattern, one detector fixed: period lambda L / d.
name = subwavelength-fix-one
experiment = subwavelength
mode = both
domain = spatial
scan = fix-one
phase-mode = random-relative
grid.points = 129
samples = 20000
seed = 47
source.1.kind = laser
source.1.spectrum = monochromatic
source.1.omega0 = 2.9767e15 rad/s
source.1.position = 0.3955 mm
source.2.kind = laser
source.2.spectrum = monochromatic
source.2.omega0 = 2.9767e15 rad/s
source.2.position = -0.3955 mm
geometry.L = 1 m
out = runs/subwavelength-fix-one
)"},
      {"subwavelength-opposite",
       R"(# Detectors scanned in opposite directions: half the period.
name = subwavelength-opposite
experiment = subwavelength
mode = both
domain = spatial
scan = opposite
phase-mode = random-relative
grid.points = 129
samples = 20000
seed = 47
source.1.kind = laser
source.1.spectrum = monochromatic
source.1.omega0 = 2.9767e15 rad/s
source.1.position = 0.3955 mm
source.2.kind = laser
source.2.spectrum = monochromatic
source.2.omega0 = 2.9767e15 rad/s
source.2.position = -0.3955 mm
geometry.L = 1 m
out = runs/subwavelength-opposite
)"},
      {"thermal-hbt3",
       R"(# Third-order HBT of thermal light: g3(0,0) = 6.
name = thermal-hbt3
experiment = third-order
third-config = thermal-temporal
mode = both
domain = temporal
order = 3
grid.points = 61
samples = 50000
seed = 53
source.1.kind = thermal
source.1.spectrum = rectangular
source.1.omega0 = 2.9767e15 rad/s
source.1.bandwidth = 1 GHz
out = runs/thermal-hbt3
)"},
      {"fermion-hbt3",
       R"(# Third-order correlation of a fermion beam: 0 at triple coincidence.
name = fermion-hbt3
experiment = third-order
third-config = fermion
mode = both
domain = temporal
order = 3
grid.points = 61
samples = 20000
seed = 59
source.1.kind = cold-atom
source.1.statistics = fermion
source.1.spectrum = rectangular
source.1.omega0 = 6.3e10 rad/s
source.1.bandwidth = 1e9 rad/s
source.1.mass = 6.64e-26 kg
source.1.speed = 10
out = runs/fermion-hbt3
)"},
      {"burt-ratio",
       R"(# Cold-atom third-order bunching vs a condensate: ratio 6.
name = burt-ratio
experiment = third-order
third-config = thermal-temporal
mode = both
domain = temporal
order = 3
grid.points = 41
samples = 50000
seed = 61
source.1.kind = cold-atom
source.1.statistics = boson
source.1.spectrum = rectangular
source.1.omega0 = 6.3e10 rad/s
source.1.bandwidth = 1e9 rad/s
source.1.mass = 1.44e-25 kg
source.1.speed = 10
out = runs/burt-ratio
)"},
      {"sp-plus-laser-third",
       R"(# One single-photon source plus one laser, three detectors.
name = sp-plus-laser-third
experiment = third-order
third-config = single-photon-plus-laser
mode = analytic
domain = spatial
order = 3
grid.points = 257
d = 1 mm
source.1.kind = single-photon
source.1.spectrum = monochromatic
source.1.omega0 = 2.9767e15 rad/s
source.1.intensity = 1
source.2.kind = laser
source.2.spectrum = monochromatic
source.2.omega0 = 2.9767e15 rad/s
source.2.intensity = 1
geometry.L = 1 m
out = runs/sp-plus-laser-third
)"},
      {"event-stream-thermal",
       R"(# Time-tagged thermal streams and windowed g2: bunching peak of 2.
name = event-stream-thermal
experiment = event-stream
mode = montecarlo
order = 2
rate = 500 kHz
duration = 2 s
window = 0.01 us
bins = 64
seed = 67
source.1.kind = thermal
source.1.spectrum = rectangular
source.1.omega0 = 2.9767e15 rad/s
source.1.bandwidth = 1 MHz
out = runs/event-stream-thermal
)"},
      {"event-stream-thermal-g3",
       R"(# Three-detector thermal streams: g3(0) = 6.
name = event-stream-thermal-g3
experiment = event-stream
mode = montecarlo
order = 3
rate = 1 MHz
duration = 2 s
window = 0.04 us
bins = 8
seed = 71
source.1.kind = thermal
source.1.spectrum = rectangular
source.1.omega0 = 2.9767e15 rad/s
source.1.bandwidth = 1 MHz
out = runs/event-stream-thermal-g3
)"},
      {"mz-gaussian",
       R"(# Mach-Zehnder pattern of a Gaussian wave packet.
name = mz-gaussian
experiment = mz
mode = analytic
domain = temporal
grid.points = 512
variant = standard
source.1.kind = single-photon
source.1.spectrum = gaussian
source.1.omega0 = 2.355e15 rad/s
source.1.bandwidth = 2e13 rad/s
out = runs/mz-gaussian
)"},
      {"path-oracle",
       R"(# Path-sum vs permanent/determinant equivalence over random matrices.
name = path-oracle
experiment = path-oracle-check
mode = analytic
samples = 200
seed = 73
out = runs/path-oracle
)"},
      {"degeneracy-factors",
       R"(# Photons per coherence volume for sunlight and a He-Ne laser.
name = degeneracy-factors
experiment = degeneracy
mode = analytic
out = runs/degeneracy-factors
)"},
  };
  return presets;
}

}  // namespace feyncoh
