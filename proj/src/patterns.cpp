#include "feyncoh/patterns.hpp"

#include <algorithm>
#include <cmath>

#include "feyncoh/constants.hpp"
#include "feyncoh/errors.hpp"
#include "feyncoh/propagators.hpp"

namespace feyncoh {

double fringe_visibility(std::span<const double> values) {
  if (values.empty()) throw UsageError("visibility: empty pattern");
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  const double sum = *hi + *lo;
  if (sum == 0.0) return 0.0;
  return (*hi - *lo) / sum;
}

double fringe_visibility(const PatternSamples& p) { return fringe_visibility(p.values); }

std::vector<double> symmetric_grid(double span, int n) {
  if (n < 2) throw UsageError("grid: need at least 2 points");
  std::vector<double> grid(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    grid[static_cast<std::size_t>(i)] = -span + 2.0 * span * i / (n - 1);
  return grid;
}

PatternSamples mz_first_order(const Spectrum& spectrum, std::span<const double> tau_grid,
                              MzGaussianVariant variant) {
  PatternSamples out;
  out.axis = PatternAxis::TimeDifference;
  out.grid.assign(tau_grid.begin(), tau_grid.end());
  out.normalization = Normalization::Raw;
  out.values.reserve(tau_grid.size());
  const double w0 = spectrum.omega0();
  const double width = spectrum.width();
  for (double tau : tau_grid) {
    double envelope = 1.0;
    switch (spectrum.shape()) {
      case SpectrumShape::Monochromatic:
        envelope = 1.0;
        break;
      case SpectrumShape::Rectangular:
        envelope = sinc(width * tau / 2.0);
        break;
      case SpectrumShape::Gaussian:
        if (variant == MzGaussianVariant::PaperVerbatim) {
          // Slice t1 = tau, t2 = 0 of the published two-time envelope.
          const double s2 = width * width;
          envelope = std::exp(-0.5 * s2 * tau * tau) / (std::exp(-s2 * tau * tau) + 1.0);
        } else {
          envelope = std::exp(-0.5 * width * width * tau * tau);
        }
        break;
      case SpectrumShape::Lorentzian:
        envelope = std::exp(-0.5 * width * std::abs(tau));
        break;
    }
    out.values.push_back(1.0 + envelope * std::cos(w0 * tau));
  }
  return out;
}

namespace {

double phase_or_zero(const std::vector<double>& phases, std::size_t i) {
  return i < phases.size() ? phases[i] : 0.0;
}

}  // namespace

MultiBeamResult multi_beam_first_order(const std::vector<SourceSpec>& sources,
                                       const Geometry& geometry,
                                       std::span<const double> x_grid,
                                       const MultiBeamOptions& options) {
  if (sources.size() != 2 && sources.size() != 3)
    throw UsageError("multi-beam first order: 2 or 3 sources are supported");
  if (options.n_detected < 1)
    throw UsageError("multi-beam first order: n_detected must be >= 1");

  MultiBeamResult result;
  result.pattern.axis = PatternAxis::Position;
  result.pattern.grid.assign(x_grid.begin(), x_grid.end());
  result.pattern.normalization = Normalization::Raw;
  auto& values = result.pattern.values;
  values.reserve(x_grid.size());

  const double lambda_L = geometry.wavelength * geometry.L;

  if (sources.size() == 2) {
    const double d = std::abs(sources[0].position() - sources[1].position());
    const double a = two_pi * d / lambda_L;
    const auto kind0 = sources[0].kind();
    const auto kind1 = sources[1].kind();
    const bool coherent = sources[0].coherent_phase() && sources[1].coherent_phase();
    const bool thermal_like = (kind0 == SourceKind::Thermal || kind0 == SourceKind::ColdAtomCloud) &&
                              (kind1 == SourceKind::Thermal || kind1 == SourceKind::ColdAtomCloud);
    const bool single = kind0 == SourceKind::SinglePhoton && kind1 == SourceKind::SinglePhoton;

    double amplitude = 0.0;
    double phi = 0.0;
    if (coherent) {
      amplitude = options.long_average ? 0.0 : 1.0;
      phi = phase_or_zero(options.phases, 0) - phase_or_zero(options.phases, 1);
    } else if (thermal_like) {
      amplitude = 1.0 / std::sqrt(static_cast<double>(options.n_detected));
      phi = phase_or_zero(options.phases, 0);
    } else if (single) {
      const long n2 = options.n_simultaneous;
      if (n2 < 0 || n2 > options.n_detected)
        throw UsageError("multi-beam first order: need 0 <= n_simultaneous <= n_detected");
      amplitude = n2 == 0 ? 0.0
                          : std::sqrt(static_cast<double>(n2)) /
                                static_cast<double>(options.n_detected);
      phi = phase_or_zero(options.phases, 0);
    } else {
      throw UsageError("multi-beam first order: unsupported source combination");
    }
    for (double x : x_grid) values.push_back(1.0 + amplitude * std::cos(a * x + phi));
    result.visibility = std::abs(amplitude);
    return result;
  }

  // Three independent lasers, exact three-source form.
  for (const auto& s : sources)
    if (!s.coherent_phase())
      throw UsageError("multi-beam first order: three-source patterns need laser/BEC sources");
  std::vector<double> pos = {sources[0].position(), sources[1].position(),
                             sources[2].position()};
  std::sort(pos.rbegin(), pos.rend());
  const double d12 = pos[0] - pos[1];
  const double d23 = pos[1] - pos[2];
  const double d13 = pos[0] - pos[2];
  const double a12 = two_pi * d12 / lambda_L;
  const double a23 = two_pi * d23 / lambda_L;
  const double a13 = two_pi * d13 / lambda_L;
  const double p12 = phase_or_zero(options.phases, 0) - phase_or_zero(options.phases, 1);
  const double p23 = phase_or_zero(options.phases, 1) - phase_or_zero(options.phases, 2);
  const double p13 = phase_or_zero(options.phases, 0) - phase_or_zero(options.phases, 2);
  if (options.long_average) {
    for (std::size_t i = 0; i < x_grid.size(); ++i) values.push_back(1.0);
    result.visibility = 0.0;
    return result;
  }
  for (double x : x_grid) {
    double v = 1.5;
    v += std::cos(a12 * (x - d23 / 2.0) + p12);
    v += std::cos(a23 * (x + d12 / 2.0) + p23);
    v += std::cos(a13 * x + p13);
    values.push_back(v);
  }
  result.visibility = fringe_visibility(values);
  return result;
}

namespace {

double hbt_argument(Domain domain, const HbtParams& p, double coord) {
  if (domain == Domain::Temporal) {
    if (!(p.bandwidth > 0.0))
      throw UsageError("hbt: temporal patterns need a positive bandwidth");
    return p.bandwidth * coord / 2.0;
  }
  if (!(p.source_size > 0.0) || !(p.wavelength > 0.0) || !(p.L > 0.0))
    throw UsageError("hbt: spatial patterns need source size, wavelength and L");
  return pi * p.source_size * coord / (p.L * p.wavelength);
}

}  // namespace

PatternSamples hbt_second_order(SourceKind kind, Statistics statistics, Domain domain,
                                const HbtParams& params, std::span<const double> grid) {
  PatternSamples out;
  out.axis = domain == Domain::Temporal ? PatternAxis::TimeDifference : PatternAxis::Position;
  out.grid.assign(grid.begin(), grid.end());
  out.normalization = Normalization::UncorrelatedBaselineOne;
  out.values.reserve(grid.size());

  const bool fermion = statistics == Statistics::Fermion;
  if (fermion && kind != SourceKind::ColdAtomCloud)
    throw UsageError("hbt: fermionic patterns are defined for cold-atom beams");

  for (double coord : grid) {
    double value = 1.0;
    switch (kind) {
      case SourceKind::Thermal:
      case SourceKind::ColdAtomCloud: {
        const double s = sinc(hbt_argument(domain, params, coord));
        value = fermion ? 1.0 - s * s : 1.0 + s * s;
        break;
      }
      case SourceKind::Laser:
      case SourceKind::Bec:
        value = 1.0;
        break;
      case SourceKind::SuperbunchingCascade: {
        if (params.stages < 1) throw UsageError("hbt: cascade needs stages >= 1");
        const double s = sinc(hbt_argument(domain, params, coord));
        value = std::pow(1.0 + s * s, params.stages);
        break;
      }
      case SourceKind::SuperbunchingModulated: {
        if (domain != Domain::Temporal)
          throw UsageError("hbt: modulated superbunching is a temporal configuration");
        const double s = sinc(hbt_argument(domain, params, coord));
        value = params.gamma(coord) * (1.0 + s * s);
        break;
      }
      default:
        throw UsageError("hbt: unsupported source kind '" + to_string(kind) + "'");
    }
    out.values.push_back(value);
  }
  return out;
}

PatternSamples hom_second_order(HomPair pair, Domain domain, const HomParams& params,
                                std::span<const double> grid) {
  PatternSamples out;
  out.axis = domain == Domain::Temporal ? PatternAxis::TimeDifference : PatternAxis::Position;
  out.grid.assign(grid.begin(), grid.end());
  out.normalization = Normalization::UncorrelatedBaselineOne;
  out.values.reserve(grid.size());

  auto matched_argument = [&](double coord) {
    if (domain == Domain::Temporal) {
      if (!(params.bandwidth > 0.0)) throw UsageError("hom: needs a positive bandwidth");
      return params.bandwidth * coord / 2.0;
    }
    if (!(params.source_size > 0.0) || !(params.wavelength > 0.0) || !(params.L > 0.0))
      throw UsageError("hom: spatial patterns need source size, wavelength and L");
    return pi * params.source_size * coord / (params.L * params.wavelength);
  };

  for (double coord : grid) {
    double value;
    switch (pair) {
      case HomPair::EntangledPair:
      case HomPair::TwoSinglePhoton: {
        const double s = sinc(matched_argument(coord));
        value = 1.0 - s * s;
        break;
      }
      case HomPair::TwoLasers: {
        if (domain != Domain::Temporal)
          throw UsageError("hom: the two-laser beating pattern is temporal");
        if (!(params.bandwidth > 0.0)) throw UsageError("hom: needs a positive detuning");
        value = 1.0 - 0.5 * std::cos(params.bandwidth * coord);
        out.normalization = Normalization::Raw;
        break;
      }
      case HomPair::LaserThermal: {
        if (domain != Domain::Spatial)
          throw UsageError("hom: the laser+thermal pattern is spatial");
        if (!(params.wavelength > 0.0) || !(params.L > 0.0))
          throw UsageError("hom: spatial patterns need wavelength and L");
        const double ll = params.L * params.wavelength;
        const double s = sinc(pi * params.source_size * coord / ll);
        value = 1.0 + 0.25 * s * s * (1.0 - 2.0 * std::cos(two_pi * params.separation * coord / ll));
        break;
      }
      case HomPair::TwoBec: {
        if (domain != Domain::Temporal)
          throw UsageError("hom: the two-BEC pattern is temporal");
        const double s = sinc(matched_argument(coord));
        value = 1.0 - 0.5 * s * s;
        break;
      }
      case HomPair::FermionPair: {
        if (domain != Domain::Temporal)
          throw UsageError("hom: the fermion-pair pattern is temporal");
        const double s = sinc(matched_argument(coord));
        value = 1.0 + s * s;
        break;
      }
      default:
        throw UsageError("hom: unsupported source pair");
    }
    out.values.push_back(value);
  }
  return out;
}

PatternSamples multi_source_second_order(SourceKind kind, double d12, double d23,
                                         const Geometry& geometry,
                                         std::span<const double> dx_grid) {
  double baseline;
  if (kind == SourceKind::SinglePhoton)
    baseline = 3.0;
  else if (kind == SourceKind::Laser)
    baseline = 4.5;
  else
    throw UsageError("multi-source second order: single-photon or laser sources only");
  if (!(d12 > 0.0) || !(d23 > 0.0))
    throw UsageError("multi-source second order: source separations must be > 0");

  const double ll = geometry.L * geometry.wavelength;
  const double d13 = d12 + d23;
  PatternSamples out;
  out.axis = PatternAxis::Position;
  out.grid.assign(dx_grid.begin(), dx_grid.end());
  out.normalization = Normalization::Raw;
  out.values.reserve(dx_grid.size());
  for (double dx : dx_grid) {
    double v = baseline;
    v += std::cos(two_pi * d12 / ll * (dx - d23 / 2.0));
    v += std::cos(two_pi * d13 / ll * dx);
    v += std::cos(two_pi * d23 / ll * (dx + d12 / 2.0));
    out.values.push_back(v);
  }
  return out;
}

SubwavelengthResult subwavelength_decomposition(SubwavelengthScan scan,
                                                SubwavelengthPhase phase_mode, double d,
                                                const Geometry& geometry) {
  if (!(d > 0.0)) throw UsageError("subwavelength: source separation must be > 0");
  const double a = two_pi * d / (geometry.wavelength * geometry.L);

  // Spatial frequency along the scan for a term cos(a (c1 x1 + c2 x2)).
  auto scan_frequency = [&](double c1, double c2) {
    switch (scan) {
      case SubwavelengthScan::FixOne: return std::abs(a * c1);
      case SubwavelengthScan::SameDirection: return std::abs(a * (c1 + c2));
      case SubwavelengthScan::OppositeDirections: return std::abs(a * (c1 - c2));
    }
    return 0.0;
  };

  using Kind = SubwavelengthTerm::Kind;
  SubwavelengthResult result;
  result.terms.push_back({Kind::Constant, 1.0, 0.0});
  if (phase_mode == SubwavelengthPhase::EqualFixed) {
    result.terms.push_back({Kind::Detector1, 1.0, scan_frequency(1.0, 0.0)});
    result.terms.push_back({Kind::Detector2, 1.0, scan_frequency(0.0, 1.0)});
    result.terms.push_back({Kind::SumCoordinate, 0.5, scan_frequency(1.0, 1.0)});
  }
  result.terms.push_back({Kind::DifferenceCoordinate, 0.5, scan_frequency(1.0, -1.0)});

  double fastest = 0.0;
  for (const auto& term : result.terms) fastest = std::max(fastest, term.scan_frequency);
  if (fastest > 0.0) result.effective_period = two_pi / fastest;

  // Visibility of the surviving pattern along the scan, by dense evaluation
  // over whole periods of every oscillating term.
  double slowest = fastest;
  for (const auto& term : result.terms)
    if (term.scan_frequency > 0.0) slowest = std::min(slowest, term.scan_frequency);
  if (fastest > 0.0) {
    const double window = two_pi / slowest;
    double lo = 1e300, hi = -1e300;
    const int n = 4096;
    for (int i = 0; i < n; ++i) {
      const double x = window * i / n;
      double v = 0.0;
      for (const auto& term : result.terms)
        v += term.kind == Kind::Constant ? term.coefficient
                                         : term.coefficient * std::cos(term.scan_frequency * x);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    result.visibility = (hi - lo) / (hi + lo);
  }
  return result;
}

double thermal_g3(double u12, double u23, double u31) {
  const double s12 = sinc(u12), s23 = sinc(u23), s31 = sinc(u31);
  return 1.0 + s12 * s12 + s23 * s23 + s31 * s31 + 2.0 * s12 * s23 * s31;
}

double fermion_g3(double u12, double u23, double u31) {
  const double s12 = sinc(u12), s23 = sinc(u23), s31 = sinc(u31);
  return 1.0 - s12 * s12 - s23 * s23 - s31 * s31 + 2.0 * s12 * s23 * s31;
}

double single_photon_plus_laser_p3(double a_x12, double a_x23, double a_x13, double i1,
                                   double i2) {
  return 3.0 * i1 * i1 *
             (3.0 + 2.0 * std::cos(a_x12) + 2.0 * std::cos(a_x23) + 2.0 * std::cos(a_x13)) +
         i2 * i2;
}

PatternSamples third_order_pattern(ThirdOrderConfig config, const ThirdOrderParams& params,
                                   std::span<const double> grid1,
                                   std::span<const double> grid2) {
  PatternSamples out;
  out.grid.assign(grid1.begin(), grid1.end());

  switch (config) {
    case ThirdOrderConfig::ThermalHbt3Temporal:
    case ThirdOrderConfig::ThermalHbt3Spatial:
    case ThirdOrderConfig::FermionHbt3: {
      if (grid2.empty()) throw UsageError("third order: this configuration needs a 2-D grid");
      out.grid2.assign(grid2.begin(), grid2.end());
      out.normalization = Normalization::UncorrelatedBaselineOne;
      const bool spatial = config == ThirdOrderConfig::ThermalHbt3Spatial;
      out.axis = spatial ? PatternAxis::PositionPair : PatternAxis::TimePair;
      double scale;
      if (spatial) {
        if (!(params.source_size > 0.0) || !(params.wavelength > 0.0) || !(params.L > 0.0))
          throw UsageError("third order: spatial patterns need source size, wavelength, L");
        scale = pi * params.source_size / (params.L * params.wavelength);
      } else {
        if (!(params.bandwidth > 0.0))
          throw UsageError("third order: temporal patterns need a bandwidth");
        scale = params.bandwidth / 2.0;
      }
      out.values.reserve(grid1.size() * grid2.size());
      for (double g1 : grid1) {
        for (double g2 : grid2) {
          double u12, u23, u31;
          if (config == ThirdOrderConfig::FermionHbt3) {
            // axes: (t1 - t2, t2 - t3)
            u12 = scale * g1;
            u23 = scale * g2;
            u31 = scale * (-g1 - g2);
          } else {
            // axes: (delta12, delta13)
            u12 = scale * g1;
            u31 = scale * (-g2);
            u23 = scale * (g2 - g1);
          }
          out.values.push_back(config == ThirdOrderConfig::FermionHbt3
                                   ? fermion_g3(u12, u23, u31)
                                   : thermal_g3(u12, u23, u31));
        }
      }
      return out;
    }

    case ThirdOrderConfig::SinglePhotonPlusLaser: {
      // Slice x1 = s, x2 = 0, x3 = -s.
      if (!(params.d > 0.0) || !(params.wavelength > 0.0) || !(params.L > 0.0))
        throw UsageError("third order: needs source separation d, wavelength and L");
      out.axis = PatternAxis::Position;
      out.normalization = Normalization::Raw;
      const double a = two_pi * params.d / (params.L * params.wavelength);
      out.values.reserve(grid1.size());
      for (double s : grid1)
        out.values.push_back(single_photon_plus_laser_p3(a * s, a * s, 2.0 * a * s,
                                                         params.intensity1,
                                                         params.intensity2));
      return out;
    }

    case ThirdOrderConfig::ThreeSinglePhoton: {
      if (grid2.empty()) throw UsageError("third order: this configuration needs a 2-D grid");
      if (!(params.d12 > 0.0) || !(params.d23 > 0.0) || !(params.wavelength > 0.0) ||
          !(params.L > 0.0))
        throw UsageError("third order: needs d12, d23, wavelength and L");
      out.grid2.assign(grid2.begin(), grid2.end());
      out.axis = PatternAxis::PositionPair;
      out.normalization = Normalization::Raw;
      const double ll = params.L * params.wavelength;
      const double a12 = two_pi * params.d12 / ll;
      const double a23 = two_pi * params.d23 / ll;
      const double a13 = two_pi * (params.d12 + params.d23) / ll;
      const double x3 = params.x3;
      const double h12 = params.d12 / 2.0, h23 = params.d23 / 2.0;
      out.values.reserve(grid1.size() * grid2.size());
      auto c = [](double x) { return std::cos(x); };
      for (double x1 : grid1) {
        for (double x2 : grid2) {
          double v = 6.0;
          v += 6.0 * c(a12 * (x1 - x2));
          v += 6.0 * c(a13 * (x1 - x3));
          v += 6.0 * c(a23 * (x2 - x3));
          v += 2.0 * c(a13 * x1) * c(a12 * (x2 - h23)) * c(a23 * (x3 + h12));
          v += 2.0 * c(a13 * x1) * c(a12 * (x3 - h23)) * c(a23 * (x2 + h12));
          v += 2.0 * c(a13 * x2) * c(a12 * (x1 - h23)) * c(a23 * (x3 + h12));
          v += 2.0 * c(a13 * x2) * c(a12 * (x3 - h23)) * c(a23 * (x1 + h12));
          v += 2.0 * c(a13 * x3) * c(a12 * (x1 - h23)) * c(a23 * (x2 + h12));
          v += 2.0 * c(a13 * x3) * c(a12 * (x2 - h23)) * c(a23 * (x1 + h12));
          out.values.push_back(v);
        }
      }
      return out;
    }

    case ThirdOrderConfig::ThreeSinglePhotonSlice: {
      if (grid2.empty()) throw UsageError("third order: this configuration needs a 2-D grid");
      if (!(params.d > 0.0) || !(params.wavelength > 0.0) || !(params.L > 0.0))
        throw UsageError("third order: needs d, wavelength and L");
      out.grid2.assign(grid2.begin(), grid2.end());
      out.axis = PatternAxis::PositionPair;
      out.normalization = Normalization::Raw;
      const double a = two_pi * params.d / (params.L * params.wavelength);
      const double h = params.d / 2.0;
      out.values.reserve(grid1.size() * grid2.size());
      auto c = [](double x) { return std::cos(x); };
      for (double x1 : grid1) {
        for (double x2 : grid2) {
          double v = 1.0 + c(a * (x1 - x2));
          v += (1.0 / 3.0) * c(2.0 * a * x1) * c(a * (x2 - h)) * c(a * (x2 + h));
          v += (1.0 / 3.0) * c(2.0 * a * x2) * c(a * (x1 - h)) * c(a * (x2 + h));
          v += (1.0 / 3.0) * c(2.0 * a * x2) * c(a * (x2 - h)) * c(a * (x1 + h));
          out.values.push_back(v);
        }
      }
      return out;
    }
  }
  throw UsageError("third order: unknown configuration");
}

}  // namespace feyncoh
