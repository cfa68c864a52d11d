#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "feyncoh/constants.hpp"
#include "feyncoh/errors.hpp"
#include "feyncoh/paths.hpp"
#include "feyncoh/patterns.hpp"
#include "feyncoh/propagators.hpp"

using namespace feyncoh;

namespace {

const double kOmega = 2.9767e15;
const double kLambda = two_pi * constants.c / kOmega;
const Spectrum kMono = Spectrum::monochromatic(kOmega);
const Spectrum kBand = Spectrum::rectangular(kOmega, 2e9);

// MC oracle agreement: the path-enumeration ensemble engine must match the
// closed form at the given difference coordinates within 3 standard errors.
void check_engine_agreement(const CoincidenceSetup& setup, int order,
                            const std::vector<double>& diffs,
                            const std::vector<double>& expected, long samples,
                            std::uint64_t seed, double rescale = 1.0,
                            bool fix_one_scan = false) {
  const auto ways = enumerate_ways(setup.sources, order);
  for (std::size_t i = 0; i < diffs.size(); ++i) {
    std::vector<double> coords;
    if (fix_one_scan)
      coords = {diffs[i], 0.0};
    else
      coords = {diffs[i] / 2.0, -diffs[i] / 2.0};
    const auto est = ensemble_probability(ways, setup, coords, samples, seed);
    const double got = est.value * rescale;
    const double se = est.std_error * rescale;
    INFO("diff = ", diffs[i], " expected ", expected[i], " got ", got, " +- ", se);
    CHECK(std::abs(got - expected[i]) < 3.0 * se + 2e-3);
  }
}

}  // namespace

TEST_SUITE_BEGIN("patterns");

TEST_CASE("mz first order") {
  const std::vector<double> taus = {0.0, pi / kOmega, 2.0 * pi / kOmega};
  const auto mono = mz_first_order(kMono, taus);
  CHECK(mono.values[0] == doctest::Approx(2.0));                // constructive
  CHECK(mono.values[1] == doctest::Approx(0.0).epsilon(1e-9));  // destructive
  CHECK(mono.values[2] == doctest::Approx(2.0));

  const auto gauss = Spectrum::gaussian(kOmega, 1e12);
  const std::vector<double> long_tau = {50.0 / 1e12};
  const auto faded = mz_first_order(gauss, long_tau);
  CHECK(faded.values[0] == doctest::Approx(1.0).epsilon(1e-6));  // fringes gone

  // The published Gaussian envelope never exceeds visibility 1/2; the
  // standard envelope reaches 1 at zero delay.
  const std::vector<double> zero = {0.0};
  const auto paper = mz_first_order(gauss, zero, MzGaussianVariant::PaperVerbatim);
  CHECK(paper.values[0] == doctest::Approx(1.5));
  const auto standard = mz_first_order(gauss, zero, MzGaussianVariant::StandardEnvelope);
  CHECK(standard.values[0] == doctest::Approx(2.0));
}

TEST_CASE("multi-beam first order visibilities") {
  const Geometry geometry(1.0, true, kLambda);
  const auto grid = symmetric_grid(3.0 * kLambda * geometry.L / 1e-3, 2048);

  const std::vector<SourceSpec> thermals = {SourceSpec::thermal(kMono, 5e-4),
                                            SourceSpec::thermal(kMono, -5e-4)};
  MultiBeamOptions options;
  options.n_detected = 100;
  auto result = multi_beam_first_order(thermals, geometry, grid, options);
  CHECK(result.visibility == doctest::Approx(0.1).epsilon(1e-12));

  const std::vector<SourceSpec> lasers = {SourceSpec::laser(kMono, 5e-4),
                                          SourceSpec::laser(kMono, -5e-4)};
  options = {};
  result = multi_beam_first_order(lasers, geometry, grid, options);
  CHECK(result.visibility == doctest::Approx(1.0));
  // fringe period lambda L / d: neighbouring maxima sit one period apart
  const double period = kLambda * geometry.L / 1e-3;
  std::vector<double> peak_positions;
  for (std::size_t i = 1; i + 1 < grid.size(); ++i)
    if (result.pattern.values[i] >= result.pattern.values[i - 1] &&
        result.pattern.values[i] >= result.pattern.values[i + 1] &&
        result.pattern.values[i] > 1.99)
      peak_positions.push_back(grid[i]);
  REQUIRE(peak_positions.size() >= 2);
  CHECK(peak_positions[1] - peak_positions[0] == doctest::Approx(period).epsilon(0.02));

  options.long_average = true;
  result = multi_beam_first_order(lasers, geometry, grid, options);
  CHECK(result.visibility == doctest::Approx(0.0));

  const std::vector<SourceSpec> singles = {SourceSpec::single_photon(kMono, 5e-4),
                                           SourceSpec::single_photon(kMono, -5e-4)};
  options = {};
  options.n_detected = 100;
  options.n_simultaneous = 4;
  result = multi_beam_first_order(singles, geometry, grid, options);
  CHECK(result.visibility == doctest::Approx(0.02).epsilon(1e-12));
}

TEST_CASE("three lasers: equal spacing reaches full visibility") {
  const Geometry geometry(1.0, true, kLambda);
  // d^2 = 2 lambda L puts all three cosines in phase at x = 0.
  const double d = std::sqrt(2.0 * kLambda * geometry.L);
  const auto grid = symmetric_grid(3e-3, 8192);
  const std::vector<SourceSpec> equal = {SourceSpec::laser(kMono, d),
                                         SourceSpec::laser(kMono, 0.0),
                                         SourceSpec::laser(kMono, -d)};
  MultiBeamOptions options;
  options.phases = {0.0, 0.0, 0.0};
  const auto result = multi_beam_first_order(equal, geometry, grid, options);
  const double min =
      *std::min_element(result.pattern.values.begin(), result.pattern.values.end());
  CHECK(min < 1e-3);  // numerically scanned minimum ~ 0
  CHECK(result.visibility > 0.999);

  const std::vector<SourceSpec> unequal = {SourceSpec::laser(kMono, d),
                                           SourceSpec::laser(kMono, 0.0),
                                           SourceSpec::laser(kMono, -1.5 * d)};
  const auto worse = multi_beam_first_order(unequal, geometry, grid, options);
  CHECK(worse.visibility < 0.999);
}

TEST_CASE("hbt second order peaks") {
  const auto grid = symmetric_grid(40e-9, 257);
  HbtParams params;
  params.bandwidth = 1e9;

  const auto thermal = hbt_second_order(SourceKind::Thermal, Statistics::Boson,
                                        Domain::Temporal, params, grid);
  CHECK(thermal.values[128] == doctest::Approx(2.0));  // tau = 0

  for (int stages = 1; stages <= 4; ++stages) {
    params.stages = stages;
    const auto c = hbt_second_order(SourceKind::SuperbunchingCascade, Statistics::Boson,
                                    Domain::Temporal, params, grid);
    CHECK(c.values[128] == doctest::Approx(std::pow(2.0, stages)).epsilon(1e-12));
  }
  params.stages = 1;

  const auto fermion = hbt_second_order(SourceKind::ColdAtomCloud, Statistics::Fermion,
                                        Domain::Temporal, params, grid);
  CHECK(fermion.values[128] == doctest::Approx(0.0).epsilon(1e-9));

  const auto laser =
      hbt_second_order(SourceKind::Laser, Statistics::Boson, Domain::Temporal, params, grid);
  for (double v : laser.values) CHECK(v == doctest::Approx(1.0));

  GammaTable gamma{{0.0, 5e-9, 1e-8}, {3.0, 1.5, 1.0}};
  params.gamma = gamma;
  const auto modulated = hbt_second_order(SourceKind::SuperbunchingModulated,
                                          Statistics::Boson, Domain::Temporal, params, grid);
  CHECK(modulated.values[128] == doctest::Approx(6.0));  // gamma(0) * 2

  CHECK_THROWS_AS(hbt_second_order(SourceKind::EntangledPairEmitter, Statistics::Boson,
                                   Domain::Temporal, params, grid),
                  UsageError);
}

TEST_CASE("hom second order values") {
  const auto grid = symmetric_grid(40e-9, 257);
  HomParams params;
  params.bandwidth = 1e9;

  const auto entangled =
      hom_second_order(HomPair::EntangledPair, Domain::Temporal, params, grid);
  CHECK(entangled.values[128] == doctest::Approx(0.0).epsilon(1e-9));

  const auto lasers = hom_second_order(HomPair::TwoLasers, Domain::Temporal, params, grid);
  CHECK(lasers.values[128] == doctest::Approx(0.5));
  CHECK(*std::max_element(lasers.values.begin(), lasers.values.end()) ==
        doctest::Approx(1.5).epsilon(1e-4));
  CHECK(*std::min_element(lasers.values.begin(), lasers.values.end()) ==
        doctest::Approx(0.5).epsilon(1e-4));

  const auto becs = hom_second_order(HomPair::TwoBec, Domain::Temporal, params, grid);
  CHECK(becs.values[128] == doctest::Approx(0.5));

  const auto fermions =
      hom_second_order(HomPair::FermionPair, Domain::Temporal, params, grid);
  CHECK(fermions.values[128] == doctest::Approx(2.0));

  // laser + thermal at x1 = x2: 1 + (1/4)(1 - 2) = 0.75
  HomParams spatial;
  spatial.source_size = 1e-4;
  spatial.separation = 1e-3;
  spatial.wavelength = kLambda;
  spatial.L = 1.0;
  const auto spatial_grid = symmetric_grid(2e-3, 257);
  const auto mixed =
      hom_second_order(HomPair::LaserThermal, Domain::Spatial, spatial, spatial_grid);
  CHECK(mixed.values[128] == doctest::Approx(0.75));

  CHECK_THROWS_AS(hom_second_order(HomPair::TwoLasers, Domain::Spatial, params, grid),
                  UsageError);
}

TEST_CASE("hom dip width scales as 1/bandwidth") {
  const auto grid = symmetric_grid(40e-9, 4001);
  auto half_width = [&](double bandwidth) {
    HomParams p;
    p.bandwidth = bandwidth;
    const auto pattern = hom_second_order(HomPair::EntangledPair, Domain::Temporal, p, grid);
    for (std::size_t i = 2000; i < grid.size(); ++i)
      if (pattern.values[i] >= 0.5) return grid[i];
    return grid.back();
  };
  const double w1 = half_width(1e9);
  const double w2 = half_width(2e9);
  CHECK(w2 / w1 == doctest::Approx(0.5).epsilon(0.02));
}

TEST_CASE("multi-source second order") {
  const Geometry geometry(1.0, true, kLambda);
  const double d = 1e-3;
  const auto grid = symmetric_grid(2e-3, 257);
  const auto sp = multi_source_second_order(SourceKind::SinglePhoton, d, d, geometry, grid);
  const auto laser = multi_source_second_order(SourceKind::Laser, d, d, geometry, grid);

  // at dx = 0: baseline + 1 + 2 cos(pi d^2 / (L lambda))
  const double expected_sp = 4.0 + 2.0 * std::cos(pi * d * d / (geometry.L * kLambda));
  CHECK(sp.values[128] == doctest::Approx(expected_sp).epsilon(1e-9));
  CHECK(laser.values[128] == doctest::Approx(expected_sp + 1.5).epsilon(1e-9));

  // far-separation average over one period returns to the baseline
  const double period = kLambda * geometry.L / d;
  const auto far_grid = symmetric_grid(period / 2.0, 4096);
  const auto far =
      multi_source_second_order(SourceKind::SinglePhoton, d, d, geometry, far_grid);
  double mean = 0.0;
  for (double v : far.values) mean += v;
  mean /= static_cast<double>(far.values.size());
  CHECK(mean == doctest::Approx(3.0).epsilon(0.01));

  CHECK_THROWS_AS(multi_source_second_order(SourceKind::Thermal, d, d, geometry, grid),
                  UsageError);
}

TEST_CASE("subwavelength decomposition") {
  const Geometry geometry(1.0, true, 632.8e-9);
  const double d = geometry.wavelength * geometry.L / 800e-6;  // FixOne period 800 um

  const auto fix_one = subwavelength_decomposition(
      SubwavelengthScan::FixOne, SubwavelengthPhase::RandomRelative, d, geometry);
  REQUIRE(fix_one.effective_period.has_value());
  CHECK(*fix_one.effective_period == doctest::Approx(800e-6).epsilon(1e-9));
  CHECK(fix_one.terms.size() == 2);  // constant + difference term only
  CHECK(fix_one.visibility == doctest::Approx(0.5).epsilon(1e-6));

  const auto opposite = subwavelength_decomposition(
      SubwavelengthScan::OppositeDirections, SubwavelengthPhase::RandomRelative, d, geometry);
  REQUIRE(opposite.effective_period.has_value());
  CHECK(*opposite.effective_period == doctest::Approx(400e-6).epsilon(1e-9));
  CHECK(*opposite.effective_period ==
        doctest::Approx(*fix_one.effective_period / 2.0).epsilon(1e-12));

  const auto same = subwavelength_decomposition(
      SubwavelengthScan::SameDirection, SubwavelengthPhase::EqualFixed, d, geometry);
  REQUIRE(same.effective_period.has_value());
  CHECK(*same.effective_period == doctest::Approx(400e-6).epsilon(1e-9));
  CHECK(same.terms.size() == 5);

  // same-direction scan with random relative phase: nothing oscillates
  const auto flat = subwavelength_decomposition(
      SubwavelengthScan::SameDirection, SubwavelengthPhase::RandomRelative, d, geometry);
  CHECK_FALSE(flat.effective_period.has_value());
}

TEST_CASE("third order closed forms") {
  CHECK(thermal_g3(0.0, 0.0, 0.0) == doctest::Approx(6.0));
  CHECK(fermion_g3(0.0, 0.0, 0.0) == doctest::Approx(0.0).epsilon(1e-12));

  ThirdOrderParams params;
  params.bandwidth = 1e9;
  const auto grid = symmetric_grid(30e-9, 41);
  const auto thermal =
      third_order_pattern(ThirdOrderConfig::ThermalHbt3Temporal, params, grid, grid);
  CHECK(thermal.at(20, 20) == doctest::Approx(6.0));
  const auto fermion =
      third_order_pattern(ThirdOrderConfig::FermionHbt3, params, grid, grid);
  CHECK(fermion.at(20, 20) == doctest::Approx(0.0).epsilon(1e-9));
  // fermion pattern stays within [0, 1]; boson pattern stays >= 1
  for (double v : fermion.values) {
    CHECK(v >= -1e-12);
    CHECK(v <= 1.0 + 1e-12);
  }
  for (double v : thermal.values) CHECK(v >= 1.0 - 1e-12);

  // single photon + laser: coincident vs far-separated ratio at I1 = I2
  params.d = 1e-3;
  params.wavelength = kLambda;
  params.L = 1.0;
  const std::vector<double> slice = {0.0};
  const auto coincident =
      third_order_pattern(ThirdOrderConfig::SinglePhotonPlusLaser, params, slice, {});
  CHECK(coincident.values[0] == doctest::Approx(28.0));
  const double baseline = 3.0 * 1.0 * 3.0 + 1.0;  // cosines averaged out
  CHECK(coincident.values[0] / baseline == doctest::Approx(2.8).epsilon(1e-12));
}

TEST_CASE("three single-photon sources, full third-order pattern") {
  ThirdOrderParams params;
  params.d12 = 1e-3;
  params.d23 = 1.3e-3;
  params.wavelength = kLambda;
  params.L = 1.0;
  params.x3 = 2e-4;
  params.x3 = 0.0;
  const auto grid = symmetric_grid(1.5e-3, 21);
  const auto p = third_order_pattern(ThirdOrderConfig::ThreeSinglePhoton, params, grid, grid);

  // all detectors coincident at the origin: the pairwise terms reach 24 and
  // the six triple terms collapse to 12 cos(pi d12 d23 / (lambda L))^2
  const double c = std::cos(pi * params.d12 * params.d23 / (kLambda * params.L));
  const double expected_origin = 24.0 + 12.0 * c * c;
  CHECK(p.at(10, 10) == doctest::Approx(expected_origin).epsilon(1e-9));

  // the oscillating terms average out to the baseline of 6
  double mean = 0.0;
  for (double v : p.values) mean += v;
  mean /= static_cast<double>(p.values.size());
  CHECK(mean == doctest::Approx(6.0).epsilon(0.12));
}

TEST_CASE("pattern invariants: baseline, symmetry, bounds") {
  const auto grid = symmetric_grid(12.0 * two_pi / 1e9, 513);  // +- 12 coherence units
  HbtParams hbt;
  hbt.bandwidth = 1e9;
  HomParams hom;
  hom.bandwidth = 1e9;

  const std::vector<PatternSamples> patterns = {
      hbt_second_order(SourceKind::Thermal, Statistics::Boson, Domain::Temporal, hbt, grid),
      hbt_second_order(SourceKind::ColdAtomCloud, Statistics::Fermion, Domain::Temporal, hbt,
                       grid),
      hom_second_order(HomPair::EntangledPair, Domain::Temporal, hom, grid),
      hom_second_order(HomPair::TwoBec, Domain::Temporal, hom, grid),
      hom_second_order(HomPair::FermionPair, Domain::Temporal, hom, grid),
  };
  for (const auto& p : patterns) {
    REQUIRE(p.normalization == Normalization::UncorrelatedBaselineOne);
    CHECK(p.values.front() == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(p.values.back() == doctest::Approx(1.0).epsilon(1e-3));
    for (std::size_t i = 0; i < p.values.size(); ++i) {
      CHECK(p.values[i] >= -1e-12);
      // evenness in the difference coordinate
      CHECK(p.values[i] ==
            doctest::Approx(p.values[p.values.size() - 1 - i]).epsilon(1e-9));
    }
  }

  const auto fermion_hbt = hbt_second_order(SourceKind::ColdAtomCloud, Statistics::Fermion,
                                            Domain::Temporal, hbt, grid);
  for (double v : fermion_hbt.values) CHECK(v <= 1.0 + 1e-12);
  const auto dip = hom_second_order(HomPair::EntangledPair, Domain::Temporal, hom, grid);
  for (double v : dip.values) CHECK(v <= 1.0 + 1e-12);
}

// ---------------------------------------------------------------------------
// Oracle agreement: ensemble engine vs closed forms, 5 grid points each.
// ---------------------------------------------------------------------------

TEST_CASE("oracle agreement: thermal HBT temporal") {
  CoincidenceSetup setup;
  setup.sources = {SourceSpec::thermal(kBand)};
  setup.domain = Domain::Temporal;
  const std::vector<double> diffs = {0.0, 0.8e-9, 1.6e-9, 3.0e-9, 6.0e-9};
  std::vector<double> expected;
  for (double tau : diffs) {
    const double s = sinc(kBand.width() * tau / 2.0);
    expected.push_back(1.0 + s * s);
  }
  check_engine_agreement(setup, 2, diffs, expected, 100000, 21);
}

TEST_CASE("oracle agreement: thermal HBT spatial") {
  CoincidenceSetup setup;
  setup.sources = {SourceSpec::thermal(kMono, 0.0, 1e-3)};
  setup.domain = Domain::Spatial;
  setup.geometry = Geometry(1.0, true, kLambda);
  const double unit = kLambda * 1.0 / 1e-3;
  const std::vector<double> diffs = {0.0, 0.4 * unit, 0.9 * unit, 1.7 * unit, 3.0 * unit};
  std::vector<double> expected;
  for (double dx : diffs) {
    const double s = sinc(pi * 1e-3 * dx / (1.0 * kLambda));
    expected.push_back(1.0 + s * s);
  }
  check_engine_agreement(setup, 2, diffs, expected, 100000, 22);
}

TEST_CASE("oracle agreement: HOM dip of an entangled pair") {
  CoincidenceSetup setup;
  setup.sources = {SourceSpec::entangled_pair(kBand)};
  setup.domain = Domain::Temporal;
  setup.reflections = {{0, 1}, {1, 0}};
  const std::vector<double> diffs = {0.0, 0.8e-9, 1.6e-9, 3.0e-9, 6.0e-9};
  std::vector<double> expected;
  for (double tau : diffs) {
    const double s = sinc(kBand.width() * tau / 2.0);
    expected.push_back(1.0 - s * s);
  }
  check_engine_agreement(setup, 2, diffs, expected, 100000, 23);
}

TEST_CASE("oracle agreement: two detuned lasers") {
  const double detuning = 1e9;
  CoincidenceSetup setup;
  setup.sources = {SourceSpec::laser(Spectrum::monochromatic(kOmega)),
                   SourceSpec::laser(Spectrum::monochromatic(kOmega + detuning))};
  setup.domain = Domain::Temporal;
  setup.reflections = {{0, 1}, {1, 0}};
  const std::vector<double> diffs = {0.0, 0.5e-9, pi / detuning, 4.5e-9, 7.0e-9};
  std::vector<double> expected;
  for (double tau : diffs) expected.push_back(1.0 - 0.5 * std::cos(detuning * tau));
  check_engine_agreement(setup, 2, diffs, expected, 100000, 24);
}

TEST_CASE("oracle agreement: laser plus point thermal source") {
  CoincidenceSetup setup;
  const double separation = 1e-3;
  setup.sources = {SourceSpec::laser(kMono, 0.0),
                   SourceSpec::thermal(kMono, separation, 1e-6)};
  setup.domain = Domain::Spatial;
  setup.geometry = Geometry(1.0, true, kLambda);
  setup.reflections = {{0, 1}, {1, 0}};
  const double period = kLambda * 1.0 / separation;
  const std::vector<double> diffs = {0.0, period / 4.0, period / 2.0, period, 1.5 * period};
  std::vector<double> expected;
  for (double dx : diffs) {
    const double s = sinc(pi * 1e-6 * dx / kLambda);
    expected.push_back(1.0 + 0.25 * s * s *
                                 (1.0 - 2.0 * std::cos(two_pi * separation * dx / kLambda)));
  }
  check_engine_agreement(setup, 2, diffs, expected, 100000, 25);
}

TEST_CASE("oracle agreement: fermion HBT and fermion HOM") {
  const Spectrum matter = Spectrum::rectangular(6.3e10, 1e9);
  {
    CoincidenceSetup setup;
    setup.sources = {SourceSpec::cold_atoms(matter, 6.64e-26, 10.0, Statistics::Fermion)};
    setup.domain = Domain::Temporal;
    const std::vector<double> diffs = {0.0, 1e-9, 2.5e-9, 5e-9, 1e-8};
    std::vector<double> expected;
    for (double tau : diffs) {
      const double s = sinc(matter.width() * tau / 2.0);
      expected.push_back(1.0 - s * s);
    }
    check_engine_agreement(setup, 2, diffs, expected, 100000, 26);
  }
  {
    CoincidenceSetup setup;
    setup.sources = {SourceSpec::single_photon(matter, 0, 1, Statistics::Fermion),
                     SourceSpec::single_photon(matter, 0, 1, Statistics::Fermion)};
    setup.domain = Domain::Temporal;
    setup.reflections = {{0, 1}, {1, 0}};
    const std::vector<double> diffs = {0.0, 1e-9, 2.5e-9, 5e-9, 1e-8};
    std::vector<double> expected;
    for (double tau : diffs) {
      const double s = sinc(matter.width() * tau / 2.0);
      expected.push_back(1.0 + s * s);
    }
    check_engine_agreement(setup, 2, diffs, expected, 100000, 27);
  }
}

TEST_CASE("oracle agreement: two condensates") {
  const Spectrum matter = Spectrum::rectangular(6.3e10, 1e9);
  CoincidenceSetup setup;
  setup.sources = {SourceSpec::bec(matter, 1.44e-25, 10.0),
                   SourceSpec::bec(matter, 1.44e-25, 10.0)};
  setup.domain = Domain::Temporal;
  setup.reflections = {{0, 1}, {1, 0}};
  const std::vector<double> diffs = {0.0, 1e-9, 2.5e-9, 5e-9, 1e-8};
  std::vector<double> expected;
  for (double tau : diffs) {
    const double s = sinc(matter.width() * tau / 2.0);
    expected.push_back(1.0 - 0.5 * s * s);
  }
  check_engine_agreement(setup, 2, diffs, expected, 100000, 28);
}

TEST_CASE("oracle agreement: three sources, second order") {
  // The printed three-source closed form carries +-d/2 offsets in the cosine
  // arguments; in the paraxial path product those constants cancel and the
  // cross terms depend on x1 - x2 alone. The engine is checked against the
  // offset-free sum; the analytic evaluator keeps the printed form.
  const Geometry geometry(1.0, true, kLambda);
  const double d = 1e-3;
  const std::vector<double> grid = {0.0, 2e-4, 4e-4, 7e-4, 1e-3};
  auto offset_free = [&](double baseline, double dx) {
    const double ll = geometry.wavelength * geometry.L;
    return baseline + std::cos(two_pi * d / ll * dx) + std::cos(two_pi * (2.0 * d) / ll * dx) +
           std::cos(two_pi * d / ll * dx);
  };

  // three single-photon sources: engine baseline 1 scales to the printed 3
  CoincidenceSetup sp;
  sp.sources = {SourceSpec::single_photon(kMono, d), SourceSpec::single_photon(kMono, 0.0),
                SourceSpec::single_photon(kMono, -d)};
  sp.domain = Domain::Spatial;
  sp.geometry = geometry;
  std::vector<double> expected_sp, expected_laser;
  for (double dx : grid) {
    expected_sp.push_back(offset_free(3.0, dx));
    expected_laser.push_back(offset_free(4.5, dx));
  }
  check_engine_agreement(sp, 2, grid, expected_sp, 60000, 29, 3.0);

  // three lasers: baseline 4.5
  CoincidenceSetup lasers = sp;
  lasers.sources = {SourceSpec::laser(kMono, d), SourceSpec::laser(kMono, 0.0),
                    SourceSpec::laser(kMono, -d)};
  check_engine_agreement(lasers, 2, grid, expected_laser, 60000, 30, 4.5);
}

TEST_CASE("oracle agreement: subwavelength random-phase pattern") {
  const Geometry geometry(1.0, true, 632.8e-9);
  const double d = geometry.wavelength * geometry.L / 800e-6;
  CoincidenceSetup setup;
  setup.sources = {SourceSpec::laser(Spectrum::monochromatic(kOmega), d / 2.0),
                   SourceSpec::laser(Spectrum::monochromatic(kOmega), -d / 2.0)};
  setup.domain = Domain::Spatial;
  setup.geometry = geometry;
  // FixOne scan: detector 2 parked at 0; pattern 1 + cos(2 pi d x / (lambda L)) / 2
  const std::vector<double> xs = {0.0, 2e-4, 4e-4, 6e-4, 8e-4};
  std::vector<double> expected;
  for (double x : xs)
    expected.push_back(1.0 +
                       0.5 * std::cos(two_pi * d * x / (geometry.wavelength * geometry.L)));
  check_engine_agreement(setup, 2, xs, expected, 60000, 31, 1.0, /*fix_one_scan=*/true);
}

TEST_CASE("oracle agreement: thermal third order") {
  CoincidenceSetup thermal;
  thermal.sources = {SourceSpec::thermal(kBand)};
  thermal.domain = Domain::Temporal;
  const auto ways = enumerate_ways(thermal.sources, 3);
  const std::vector<double> zero = {0.0, 0.0, 0.0};
  const auto est = ensemble_probability(ways, thermal, zero, 50000, 32);
  CHECK(std::abs(est.value - 6.0) < 3.0 * est.std_error + 1e-9);

  // off-coincidence check against the closed form
  const std::vector<double> coords = {1e-9, 0.0, -1e-9};
  const double u12 = kBand.width() * 1e-9 / 2.0;
  const double u23 = kBand.width() * 1e-9 / 2.0;
  const double u31 = kBand.width() * 2e-9 / 2.0;
  const auto est_off = ensemble_probability(ways, thermal, coords, 100000, 33);
  CHECK(std::abs(est_off.value - thermal_g3(u12, u23, u31)) <
        3.0 * est_off.std_error + 2e-3);
}

TEST_SUITE_END();
