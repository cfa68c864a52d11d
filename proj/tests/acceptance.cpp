// Acceptance suite: runs every gate criterion at its stated tolerance and
// prints one PASS/FAIL line per criterion. Exits non-zero if any fail.

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "feyncoh/coherence.hpp"
#include "feyncoh/constants.hpp"
#include "feyncoh/experiment.hpp"
#include "feyncoh/montecarlo.hpp"
#include "feyncoh/paths.hpp"
#include "feyncoh/patterns.hpp"
#include "feyncoh/propagators.hpp"
#include "feyncoh/rng.hpp"

#ifndef FEYNCOH_CLI_PATH
#define FEYNCOH_CLI_PATH "feyncoh"
#endif

using namespace feyncoh;

namespace {

int failures = 0;

struct Check {
  std::string label;
  std::ostringstream detail;
  bool ok = true;

  explicit Check(std::string l) : label(std::move(l)) {}

  void expect(bool condition, const std::string& what) {
    if (!condition) {
      ok = false;
      detail << (detail.tellp() > 0 ? "; " : "") << what;
    }
  }
  void finish() {
    if (ok) {
      std::cout << "PASS " << label << "\n";
    } else {
      std::cout << "FAIL " << label << " [" << detail.str() << "]\n";
      ++failures;
    }
  }
};

const double kOmega = 2.9767e15;
const double kLambda = two_pi * constants.c / kOmega;
const Spectrum kMono = Spectrum::monochromatic(kOmega);
const Spectrum kBand = Spectrum::rectangular(kOmega, 2e9);

std::string fmt(double v) {
  std::ostringstream out;
  out.precision(6);
  out << v;
  return out.str();
}

std::vector<std::vector<double>> load_csv(const std::filesystem::path& path,
                                          std::vector<std::string>* header = nullptr) {
  std::ifstream in(path);
  std::vector<std::vector<double>> rows;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    if (first) {
      first = false;
      if (header) {
        while (std::getline(ss, cell, ',')) header->push_back(cell);
      }
      continue;
    }
    std::vector<double> row;
    while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
    rows.push_back(std::move(row));
  }
  return rows;
}

// --- criteria ----------------------------------------------------------------

void criterion_1_thermal_hbt() {
  Check c("criterion 1: thermal HBT g2(0) = 2 (analytic exact, MC within 3 SE and 0.05)");
  HbtParams params;
  params.bandwidth = kBand.width();
  const std::vector<double> zero = {0.0};
  const auto analytic =
      hbt_second_order(SourceKind::Thermal, Statistics::Boson, Domain::Temporal, params, zero);
  c.expect(analytic.values[0] == 2.0, "analytic g2(0) != 2 exactly");

  // 1e6 events per detector
  EventConfig ec;
  ec.source = SourceSpec::thermal(Spectrum::rectangular(kOmega, two_pi * 1e6));
  ec.mean_rate = 1e6;
  ec.duration = 1.0;
  ec.seed = 2024;
  const auto streams = generate_events(ec);
  const auto corr = correlate(streams.streams, 2, 2e-8, 16, streams.coherence_time);
  const double g0 = corr.g[8];
  const double se =
      g0 / std::sqrt(std::max(1.0, static_cast<double>(corr.coincidences[8])));
  c.expect(std::abs(g0 - 2.0) < 0.05, "event-stream g2(0) = " + fmt(g0));
  c.expect(std::abs(g0 - 2.0) < 3.0 * se + 0.01, "beyond 3 standard errors");

  // 1e5 phase samples through the path engine
  CoincidenceSetup setup;
  setup.sources = {SourceSpec::thermal(kBand)};
  setup.domain = Domain::Temporal;
  const auto ways = enumerate_ways(setup.sources, 2);
  const auto est = ensemble_probability(ways, setup, std::vector<double>{0.0, 0.0}, 100000, 7);
  c.expect(std::abs(est.value - 2.0) < 0.05, "ensemble g2(0) = " + fmt(est.value));
  c.finish();
}

void criterion_2_cascade() {
  Check c("criterion 2: superbunching cascade g2(0) = 2^N, N = 1..4");
  for (int stages = 1; stages <= 4; ++stages) {
    HbtParams params;
    params.bandwidth = kBand.width();
    params.stages = stages;
    const std::vector<double> zero = {0.0};
    const auto analytic = hbt_second_order(SourceKind::SuperbunchingCascade, Statistics::Boson,
                                           Domain::Temporal, params, zero);
    const double expected = std::pow(2.0, stages);
    c.expect(analytic.values[0] == expected,
             "analytic cascade " + std::to_string(stages) + " != 2^N exactly");

    CoincidenceSetup setup;
    setup.sources = {SourceSpec::cascade(kBand, stages)};
    setup.domain = Domain::Temporal;
    const auto ways = enumerate_ways(setup.sources, 2);
    const auto est =
        ensemble_probability(ways, setup, std::vector<double>{0.0, 0.0}, 1000, 11);
    c.expect(std::abs(est.value - expected) < 1e-9,
             "path engine cascade " + std::to_string(stages) + " = " + fmt(est.value));
  }
  c.finish();
}

void criterion_3_hom_dip() {
  Check c("criterion 3: HOM dip (0 at tau=0; MC residual < 0.05; width halves)");
  HomParams params;
  params.bandwidth = kBand.width();
  const std::vector<double> zero = {0.0};
  const auto analytic = hom_second_order(HomPair::EntangledPair, Domain::Temporal, params, zero);
  c.expect(analytic.values[0] == 0.0, "analytic minimum != 0");

  CoincidenceSetup setup;
  setup.sources = {SourceSpec::entangled_pair(kBand)};
  setup.domain = Domain::Temporal;
  setup.reflections = {{0, 1}, {1, 0}};
  const auto ways = enumerate_ways(setup.sources, 2);
  const auto est =
      ensemble_probability(ways, setup, std::vector<double>{0.0, 0.0}, 100000, 13);
  c.expect(std::abs(est.value) < 0.05, "MC residual at tau=0 is " + fmt(est.value));

  const auto grid = symmetric_grid(40e-9, 8001);
  auto half_width = [&](double bandwidth) {
    HomParams p;
    p.bandwidth = bandwidth;
    const auto pattern = hom_second_order(HomPair::EntangledPair, Domain::Temporal, p, grid);
    for (std::size_t i = 4000; i < grid.size(); ++i)
      if (pattern.values[i] >= 0.5) return grid[i];
    return grid.back();
  };
  const double ratio = half_width(2.0 * kBand.width()) / half_width(kBand.width());
  c.expect(std::abs(ratio - 0.5) < 0.05, "width ratio on doubling = " + fmt(ratio));
  c.finish();
}

void criterion_4_two_laser_beating() {
  Check c("criterion 4: two-laser beating 1 - cos(dw tau)/2, MC visibility 0.5 +- 0.02");
  const double detuning = 1e9;
  HomParams params;
  params.bandwidth = detuning;
  const auto grid = symmetric_grid(2.0 * two_pi / detuning, 33);
  const auto analytic = hom_second_order(HomPair::TwoLasers, Domain::Temporal, params, grid);
  const double hi = *std::max_element(analytic.values.begin(), analytic.values.end());
  const double lo = *std::min_element(analytic.values.begin(), analytic.values.end());
  c.expect(std::abs(hi - 1.5) < 1e-9, "analytic maximum " + fmt(hi));
  c.expect(std::abs(lo - 0.5) < 1e-9, "analytic minimum " + fmt(lo));

  CoincidenceSetup setup;
  setup.sources = {SourceSpec::laser(Spectrum::monochromatic(kOmega)),
                   SourceSpec::laser(Spectrum::monochromatic(kOmega + detuning))};
  setup.domain = Domain::Temporal;
  setup.reflections = {{0, 1}, {1, 0}};
  const auto ways = enumerate_ways(setup.sources, 2);
  std::vector<double> mc;
  for (double tau : grid) {
    const auto est = ensemble_probability(
        ways, setup, std::vector<double>{tau / 2.0, -tau / 2.0}, 100000, 17);
    mc.push_back(est.value);
  }
  const auto fit = fit_cosine(grid, mc, detuning);
  c.expect(fit.ok, "fit failed");
  c.expect(std::abs(fit.visibility - 0.5) < 0.02, "fitted visibility " + fmt(fit.visibility));
  c.finish();
}

void criterion_5_visibility_decay() {
  Check c("criterion 5: thermal two-beam visibility decays as 1/sqrt(N)");
  const Geometry geometry(1.0, true, kLambda);
  const auto grid = symmetric_grid(3.0 * kLambda / 1e-3, 256);
  std::vector<double> log_n, log_v;
  for (long n : {100L, 1000L, 10000L}) {
    std::vector<double> vs;
    for (int s = 0; s < 100; ++s) {
      SimulationConfig sim;
      sim.sources = {SourceSpec::thermal(kMono, 5e-4), SourceSpec::thermal(kMono, -5e-4)};
      sim.geometry = geometry;
      sim.order = 1;
      sim.n_photons = n;
      sim.seed = 4000 + static_cast<std::uint64_t>(s);
      vs.push_back(simulate_first_order(sim, grid).visibility_fit);
    }
    std::sort(vs.begin(), vs.end());
    const double median = vs[vs.size() / 2];
    const double theory = 1.0 / std::sqrt(static_cast<double>(n));
    c.expect(median > 0.7 * theory && median < 1.3 * theory,
             "median V(" + std::to_string(n) + ") = " + fmt(median) + " vs " + fmt(theory));
    log_n.push_back(std::log10(static_cast<double>(n)));
    log_v.push_back(std::log10(median));
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double m = static_cast<double>(log_n.size());
  for (std::size_t i = 0; i < log_n.size(); ++i) {
    sx += log_n[i];
    sy += log_v[i];
    sxx += log_n[i] * log_n[i];
    sxy += log_n[i] * log_v[i];
  }
  const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  c.expect(std::abs(slope + 0.5) < 0.05, "log-log slope " + fmt(slope));
  c.finish();
}

void criterion_6_third_order() {
  Check c("criterion 6: g3 thermal 6 / fermion 0; g4(0) = 24 via the path engine");
  c.expect(thermal_g3(0.0, 0.0, 0.0) == 6.0, "analytic thermal g3(0) != 6 exactly");
  c.expect(std::abs(fermion_g3(0.0, 0.0, 0.0)) < 1e-9,
           "analytic fermion g3(0) = " + fmt(fermion_g3(0, 0, 0)));

  EventConfig ec;
  ec.source = SourceSpec::thermal(Spectrum::rectangular(kOmega, two_pi * 1e6));
  ec.mean_rate = 1e6;
  ec.duration = 2.0;
  ec.n_detectors = 3;
  ec.seed = 2025;
  const auto streams = generate_events(ec);
  const auto corr = correlate(streams.streams, 3, 4e-8, 8, streams.coherence_time);
  c.expect(std::abs(corr.g[4] - 6.0) < 0.5, "event-stream g3(0) = " + fmt(corr.g[4]));

  CoincidenceSetup setup;
  setup.sources = {SourceSpec::thermal(kBand)};
  setup.domain = Domain::Temporal;
  const auto ways = enumerate_ways(setup.sources, 4);
  const auto est = ensemble_probability(
      ways, setup, std::vector<double>{0.0, 0.0, 0.0, 0.0}, 200, 19);
  c.expect(std::abs(est.value - 24.0) < 1e-9, "g4(0) = " + fmt(est.value));
  c.finish();
}

void criterion_7_burt_ratio() {
  Check c("criterion 7: thermal-boson/BEC third-order ratio 6 inside [4.8, 10.0]");
  const Spectrum matter = Spectrum::rectangular(6.3e10, 1e9);
  const double thermal_zero = thermal_g3(0.0, 0.0, 0.0);

  CoincidenceSetup setup;
  setup.sources = {SourceSpec::bec(matter, 1.44e-25, 10.0)};
  setup.domain = Domain::Temporal;
  const auto ways = enumerate_ways(setup.sources, 3);
  const auto bec = ensemble_probability(
      ways, setup, std::vector<double>{0.0, 0.0, 0.0}, 1000, 23);
  const double ratio = thermal_zero / bec.value;
  c.expect(std::abs(bec.value - 1.0) < 1e-9, "BEC g3(0) = " + fmt(bec.value));
  c.expect(ratio >= 4.8 && ratio <= 10.0, "ratio = " + fmt(ratio));
  c.finish();
}

void criterion_8_oracle_equivalence() {
  Check c("criterion 8: path sums equal permanents/determinants over 200 random matrices");
  const std::vector<SourceSpec> boson = {SourceSpec::thermal(kBand)};
  const std::vector<SourceSpec> fermion = {
      SourceSpec::cold_atoms(Spectrum::rectangular(6.3e10, 1e9), 6.64e-26, 10.0,
                             Statistics::Fermion)};
  double worst = 0.0;
  for (int n = 2; n <= 4; ++n) {
    const auto boson_ways = enumerate_ways(boson, n);
    const auto fermion_ways = enumerate_ways(fermion, n);
    const std::vector<double> no_phases_b(boson_ways.symbols.size(), 0.0);
    const std::vector<double> no_phases_f(fermion_ways.symbols.size(), 0.0);
    for (long m = 0; m < 200; ++m) {
      AmplitudeMatrix matrix(static_cast<std::size_t>(n),
                             std::vector<Amplitude>(static_cast<std::size_t>(n)));
      for (int r = 0; r < n; ++r)
        for (int col = 0; col < n; ++col) {
          const auto idx = static_cast<std::uint64_t>(m * 64 + r * 8 + col);
          matrix[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)] =
              Amplitude(2.0 * rng::u01(31337, rng::kModeStream, idx,
                                       static_cast<std::uint64_t>(n)) -
                            1.0,
                        2.0 * rng::u01(31337, rng::kModeStream, idx,
                                       static_cast<std::uint64_t>(n) + 10) -
                            1.0);
        }
      auto leg = [&](const PathLeg& l) {
        return matrix[static_cast<std::size_t>(l.emission)]
                     [static_cast<std::size_t>(l.detector)];
      };
      const double norm = std::sqrt(static_cast<double>(boson_ways.ways[0].paths.size()));
      worst = std::max(worst,
                       std::abs(way_amplitude(boson_ways.ways[0], no_phases_b, 0.0, leg) * norm -
                                matrix_permanent(matrix)));
      worst = std::max(worst,
                       std::abs(way_amplitude(fermion_ways.ways[0], no_phases_f, 0.0, leg) * norm -
                                matrix_determinant(matrix)));
    }
  }
  c.expect(worst < 1e-12, "worst deviation " + fmt(worst));
  c.finish();
}

void criterion_9_subwavelength() {
  Check c("criterion 9: subwavelength periods 800/400 um; random-phase visibility 0.5");
  const Geometry geometry(1.0, true, 632.8e-9);
  const double d = geometry.wavelength * geometry.L / 800e-6;
  const auto fix_one = subwavelength_decomposition(
      SubwavelengthScan::FixOne, SubwavelengthPhase::RandomRelative, d, geometry);
  const auto opposite = subwavelength_decomposition(
      SubwavelengthScan::OppositeDirections, SubwavelengthPhase::RandomRelative, d, geometry);
  c.expect(fix_one.effective_period && opposite.effective_period, "missing periods");
  c.expect(std::abs(*fix_one.effective_period - 800e-6) < 1e-12,
           "FixOne period " + fmt(*fix_one.effective_period));
  c.expect(std::abs(*opposite.effective_period - 400e-6) < 1e-12,
           "Opposite period " + fmt(*opposite.effective_period));
  c.expect(std::abs(*opposite.effective_period / *fix_one.effective_period - 0.5) < 1e-12,
           "period ratio not exactly one half");
  c.expect(std::abs(fix_one.visibility - 0.5) < 1e-6,
           "analytic visibility " + fmt(fix_one.visibility));

  CoincidenceSetup setup;
  setup.sources = {SourceSpec::laser(kMono, d / 2.0), SourceSpec::laser(kMono, -d / 2.0)};
  setup.domain = Domain::Spatial;
  setup.geometry = geometry;
  const auto ways = enumerate_ways(setup.sources, 2);
  const auto grid = symmetric_grid(400e-6, 17);
  std::vector<double> mc;
  for (double x : grid) {
    const auto est = ensemble_probability(ways, setup, std::vector<double>{x, -x}, 30000, 29);
    mc.push_back(est.value);
  }
  const auto fit = fit_cosine(grid, mc, two_pi / 400e-6);
  c.expect(fit.ok && std::abs(fit.visibility - 0.5) < 0.05,
           "MC visibility " + fmt(fit.visibility));
  c.finish();
}

void criterion_10_degeneracy() {
  Check c("criterion 10: degeneracy factors (sunlight 0.0073, He-Ne 3e9)");
  const double sun = degeneracy_factor_blackbody(5.635e14, 5500.0);
  c.expect(std::abs(sun - 0.0073) < 0.05 * 0.0073, "blackbody delta = " + fmt(sun));
  const double laser = degeneracy_factor_laser(1e-3, 4.74e14, 1.06e6);
  c.expect(std::abs(laser - 3e9) < 0.10 * 3e9, "laser delta = " + fmt(laser));
  c.finish();
}

void criterion_11_fermion() {
  Check c("criterion 11: fermion antibunching 0 and fermion HOM peak 2");
  HbtParams hbt;
  hbt.bandwidth = 1e9;
  const std::vector<double> zero = {0.0};
  const auto anti = hbt_second_order(SourceKind::ColdAtomCloud, Statistics::Fermion,
                                     Domain::Temporal, hbt, zero);
  c.expect(std::abs(anti.values[0]) < 1e-9, "fermion g2(0) = " + fmt(anti.values[0]));
  HomParams hom;
  hom.bandwidth = 1e9;
  const auto peak = hom_second_order(HomPair::FermionPair, Domain::Temporal, hom, zero);
  c.expect(std::abs(peak.values[0] - 2.0) < 1e-9, "fermion HOM g2(0) = " + fmt(peak.values[0]));
  c.finish();
}

void criterion_12_rule_iii() {
  Check c("criterion 12: forced distinguishability flattens thermal g2 to 1");
  CoincidenceSetup setup;
  setup.sources = {SourceSpec::thermal(kBand)};
  setup.domain = Domain::Temporal;
  setup.force_distinguishable = true;
  const auto ways = enumerate_ways(setup.sources, 2);
  for (double tau : {0.0, 0.5e-9, 1.5e-9, 3e-9, 8e-9}) {
    const auto est = ensemble_probability(
        ways, setup, std::vector<double>{tau / 2.0, -tau / 2.0}, 2000, 31);
    c.expect(std::abs(est.value - 1.0) < 1e-12,
             "g2(" + fmt(tau) + ") = " + fmt(est.value));
  }
  c.finish();
}

void criterion_13_reproduction() {
  Check c("criterion 13: reproduce emits all figure datasets with valid shapes");
  const std::string out_dir = "acceptance_runs/figures";
  std::filesystem::create_directories(out_dir);
  const std::string cli = FEYNCOH_CLI_PATH;

  for (const auto& id : figure_ids()) {
    const std::string command = cli + " reproduce " + id + " --out-dir " + out_dir +
                                " > /dev/null 2>&1";
    const int rc = std::system(command.c_str());
    c.expect(rc == 0, id + " exited with " + std::to_string(rc));
  }

  auto path = [&](const std::string& id) { return std::filesystem::path(out_dir) / (id + ".csv"); };

  {  // fig4: MZ pattern peaks at 2, decays to 1, symmetric
    const auto rows = load_csv(path("fig4"));
    c.expect(!rows.empty(), "fig4 empty");
    double peak = 0.0;
    for (const auto& r : rows) peak = std::max(peak, r[1]);
    c.expect(std::abs(peak - 2.0) < 1e-3, "fig4 peak " + fmt(peak));
    c.expect(std::abs(rows.front()[1] - 1.0) < 1e-3, "fig4 tail");
    const auto& mirror = rows[rows.size() - 1];
    c.expect(std::abs(rows[0][1] - mirror[1]) < 1e-6, "fig4 asymmetric");
  }
  {  // fig6: medians track 1/sqrt(N)
    const auto rows = load_csv(path("fig6"));
    c.expect(rows.size() >= 5, "fig6 too short");
    for (const auto& r : rows)
      c.expect(r[1] > 0.65 * r[2] && r[1] < 1.35 * r[2],
               "fig6 N=" + fmt(r[0]) + " median " + fmt(r[1]));
    for (std::size_t i = 1; i < rows.size(); ++i)
      c.expect(rows[i][1] < rows[i - 1][1], "fig6 medians not decreasing");
  }
  {  // fig9: equal spacing reaches ~4.5 peak and ~0 minimum, unequal does not
    const auto rows = load_csv(path("fig9"));
    double min_a = 1e300, min_b = 1e300, max_b = -1e300;
    for (const auto& r : rows) {
      min_a = std::min(min_a, r[1]);
      min_b = std::min(min_b, r[2]);
      max_b = std::max(max_b, r[2]);
    }
    c.expect(min_b < 1e-2, "fig9 equal-spacing minimum " + fmt(min_b));
    c.expect(std::abs(max_b - 4.5) < 1e-2, "fig9 equal-spacing maximum " + fmt(max_b));
    c.expect(min_a > 1e-2, "fig9 unequal-spacing minimum " + fmt(min_a));
  }
  {  // fig12 and fig19: peaks/dips at the centre, baseline 1, width ordering
    for (const char* id_cstr : {"fig12", "fig19"}) {
      const std::string id = id_cstr;
      const auto rows = load_csv(path(id));
      const bool dip = id == "fig19";
      const auto& centre = rows[rows.size() / 2];
      for (int k = 1; k <= 3; ++k) {
        c.expect(std::abs(centre[static_cast<std::size_t>(k)] - (dip ? 0.0 : 2.0)) < 1e-6,
                 id + " centre value");
        c.expect(std::abs(rows.front()[static_cast<std::size_t>(k)] - 1.0) < 2e-2,
                 id + " baseline");
      }
      // wider bandwidth decays faster: compare the fixed-tau envelope
      const auto& probe = rows[rows.size() / 2 + rows.size() / 16];
      const double excess1 = std::abs(probe[1] - 1.0);
      const double excess3 = std::abs(probe[3] - 1.0);
      c.expect(excess3 < excess1 + 1e-9, id + " width ordering");
      // even symmetry
      for (std::size_t i = 0; i < rows.size(); ++i)
        c.expect(std::abs(rows[i][1] - rows[rows.size() - 1 - i][1]) < 1e-9,
                 id + " asymmetric");
    }
  }
  {  // fig23: baseline 3, first configuration peaks at 6 at dx = 0
    const auto rows = load_csv(path("fig23"));
    const auto& centre = rows[rows.size() / 2];
    c.expect(std::abs(centre[1] - 6.0) < 1e-3, "fig23 peak " + fmt(centre[1]));
    for (int k = 1; k <= 3; ++k) {
      double mean = 0.0;
      for (const auto& r : rows) mean += r[static_cast<std::size_t>(k)];
      mean /= static_cast<double>(rows.size());
      c.expect(std::abs(mean - 3.0) < 0.1, "fig23 baseline " + fmt(mean));
    }
    for (std::size_t i = 0; i < rows.size(); ++i)
      c.expect(std::abs(rows[i][1] - rows[rows.size() - 1 - i][1]) < 1e-9,
               "fig23 asymmetric");
  }
  {  // fig29a: 6 at the centre, ~2 on the double-coincidence ridge, 1 far away
    const auto rows = load_csv(path("fig29a"));
    double centre = 0.0, ridge = 0.0, far = 0.0;
    double best_centre = 1e300, best_ridge = 1e300, best_far = 1e300;
    double span = 0.0;
    for (const auto& r : rows) span = std::max(span, std::abs(r[0]));
    for (const auto& r : rows) {
      const double d_centre = std::hypot(r[0], r[1]);
      if (d_centre < best_centre) {
        best_centre = d_centre;
        centre = r[2];
      }
      const double d_ridge = std::hypot(r[0] - span, r[1] - span);
      if (d_ridge < best_ridge) {
        best_ridge = d_ridge;
        ridge = r[2];
      }
      const double d_far = std::hypot(r[0] - span, r[1] - span / 2.0);
      if (d_far < best_far) {
        best_far = d_far;
        far = r[2];
      }
    }
    c.expect(std::abs(centre - 6.0) < 1e-6, "fig29a centre " + fmt(centre));
    c.expect(std::abs(ridge - 2.0) < 0.05, "fig29a ridge " + fmt(ridge));
    c.expect(std::abs(far - 1.0) < 0.05, "fig29a far value " + fmt(far));
  }
  {  // fig32: slice pattern peaks at 3 at the origin
    const auto rows = load_csv(path("fig32"));
    double centre = 0.0, best = 1e300, peak = -1e300;
    for (const auto& r : rows) {
      const double d0 = std::hypot(r[0], r[1]);
      if (d0 < best) {
        best = d0;
        centre = r[2];
      }
      peak = std::max(peak, r[2]);
    }
    c.expect(std::abs(centre - 3.0) < 1e-3, "fig32 centre " + fmt(centre));
    c.expect(peak <= 3.0 + 1e-9, "fig32 exceeds its bound");
  }
  {  // fig35: fermion third order: 0 at the centre, within [0, 1 + eps]
    const auto rows = load_csv(path("fig35"));
    double centre = 1e300, best = 1e300;
    std::map<std::pair<double, double>, double> lookup;
    for (const auto& r : rows) {
      const double d0 = std::hypot(r[0], r[1]);
      if (d0 < best) {
        best = d0;
        centre = r[2];
      }
      c.expect(r[2] > -1e-9 && r[2] < 1.0 + 1e-9, "fig35 out of [0,1]");
      lookup[{r[0], r[1]}] = r[2];
    }
    c.expect(std::abs(centre) < 1e-9, "fig35 centre " + fmt(centre));
    // symmetric under swapping the two time differences
    for (const auto& [key, value] : lookup) {
      const auto swapped = lookup.find({key.second, key.first});
      if (swapped != lookup.end())
        c.expect(std::abs(swapped->second - value) < 1e-9, "fig35 asymmetric");
    }
  }
  c.finish();
}

}  // namespace

int main() {
  std::cout << "acceptance suite\n";
  criterion_1_thermal_hbt();
  criterion_2_cascade();
  criterion_3_hom_dip();
  criterion_4_two_laser_beating();
  criterion_5_visibility_decay();
  criterion_6_third_order();
  criterion_7_burt_ratio();
  criterion_8_oracle_equivalence();
  criterion_9_subwavelength();
  criterion_10_degeneracy();
  criterion_11_fermion();
  criterion_12_rule_iii();
  criterion_13_reproduction();
  if (failures == 0)
    std::cout << "all criteria passed\n";
  else
    std::cout << failures << " criteria failed\n";
  return failures == 0 ? 0 : 1;
}
