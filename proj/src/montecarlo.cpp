#include "feyncoh/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "feyncoh/constants.hpp"
#include "feyncoh/errors.hpp"
#include "feyncoh/propagators.hpp"
#include "feyncoh/rng.hpp"

namespace feyncoh {

CosineFit fit_cosine(std::span<const double> x, std::span<const double> y, double k) {
  CosineFit fit;
  if (x.size() != y.size() || x.size() < 3)
    throw UsageError("fit_cosine: need matching x/y with at least 3 points");
  // Normal equations for y = a + b cos(kx) + c sin(kx).
  double s[3][3] = {{0, 0, 0}, {0, 0, 0}, {0, 0, 0}};
  double r[3] = {0, 0, 0};
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double base[3] = {1.0, std::cos(k * x[i]), std::sin(k * x[i])};
    for (int a = 0; a < 3; ++a) {
      r[a] += base[a] * y[i];
      for (int b = 0; b < 3; ++b) s[a][b] += base[a] * base[b];
    }
  }
  const double det = s[0][0] * (s[1][1] * s[2][2] - s[1][2] * s[2][1]) -
                     s[0][1] * (s[1][0] * s[2][2] - s[1][2] * s[2][0]) +
                     s[0][2] * (s[1][0] * s[2][1] - s[1][1] * s[2][0]);
  const double scale = s[0][0] * s[1][1] * s[2][2] + 1e-300;
  if (!(std::abs(det) > 1e-9 * scale)) {
    fit.ok = false;
    return fit;
  }
  auto solve = [&](int col) {
    double m[3][3];
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) m[a][b] = (b == col) ? r[a] : s[a][b];
    return (m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
            m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
            m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])) /
           det;
  };
  const double a = solve(0);
  const double b = solve(1);
  const double c = solve(2);
  if (!(a > 0.0)) {
    fit.ok = false;
    return fit;
  }
  fit.baseline = a;
  fit.visibility = std::hypot(b, c) / a;
  fit.phase = std::atan2(-c, b);
  fit.ok = true;
  return fit;
}

FirstOrderSim simulate_first_order(const SimulationConfig& config,
                                   std::span<const double> x_grid) {
  if (config.sources.size() != 2)
    throw UsageError("simulate_first_order: exactly two sources are required");
  if (config.n_photons < 1) throw UsageError("simulate_first_order: n_photons must be >= 1");
  if (config.bins < 8) throw UsageError("simulate_first_order: bins must be >= 8");
  if (x_grid.size() < 2) throw UsageError("simulate_first_order: grid too small");

  const auto& s0 = config.sources[0];
  const auto& s1 = config.sources[1];
  const double d = std::abs(s0.position() - s1.position());
  if (!(d > 0.0)) throw UsageError("simulate_first_order: sources must be separated");
  const double k = two_pi * d / (config.geometry.wavelength * config.geometry.L);

  const double x_lo = x_grid.front();
  const double x_hi = x_grid.back();
  const long n = config.n_photons;
  const std::uint64_t seed = config.seed;

  auto interval_of = [&](long j) -> std::uint64_t {
    if (config.duration <= 0.0) return 0;
    const double tau0 = s0.phase_coherence_time();
    const double tau1 = s1.phase_coherence_time();
    const double tau_c = std::min(tau0, tau1);
    if (!std::isfinite(tau_c) || tau_c <= 0.0) return 0;
    const double t = (static_cast<double>(j) + 0.5) * config.duration / static_cast<double>(n);
    return static_cast<std::uint64_t>(t / tau_c);
  };
  auto initial_phase = [&](const SourceSpec& src, int index, long j) {
    if (src.coherent_phase())
      return rng::phase(seed, rng::kPhotonStream, interval_of(j),
                        static_cast<std::uint64_t>(index), 100);
    return rng::phase(seed, rng::kPhotonStream, static_cast<std::uint64_t>(j),
                      static_cast<std::uint64_t>(index), 101);
  };

  std::vector<long> counts(static_cast<std::size_t>(config.bins), 0);
  std::complex<double> phasor{0.0, 0.0};
  for (long j = 0; j < n; ++j) {
    const double dphi = initial_phase(s0, 0, j) - initial_phase(s1, 1, j);
    phasor += std::polar(1.0, dphi);
    // Rejection sampling from 1 + cos(k x + dphi) over [x_lo, x_hi].
    double x = x_lo;
    for (int attempt = 0; attempt < 1024; ++attempt) {
      const double cand =
          x_lo + (x_hi - x_lo) * rng::u01(seed, rng::kPhotonStream,
                                          static_cast<std::uint64_t>(j), 200,
                                          static_cast<std::uint64_t>(2 * attempt));
      const double accept = rng::u01(seed, rng::kPhotonStream, static_cast<std::uint64_t>(j),
                                     200, static_cast<std::uint64_t>(2 * attempt + 1));
      if (accept * 2.0 <= 1.0 + std::cos(k * cand + dphi)) {
        x = cand;
        break;
      }
    }
    auto bin = static_cast<long>((x - x_lo) / (x_hi - x_lo) * config.bins);
    bin = std::clamp<long>(bin, 0, config.bins - 1);
    ++counts[static_cast<std::size_t>(bin)];
  }

  FirstOrderSim sim;
  sim.histogram.axis = PatternAxis::Position;
  sim.histogram.normalization = Normalization::Raw;
  sim.histogram.grid.resize(static_cast<std::size_t>(config.bins));
  sim.histogram.values.resize(static_cast<std::size_t>(config.bins));
  const double bin_width = (x_hi - x_lo) / config.bins;
  for (int b = 0; b < config.bins; ++b) {
    sim.histogram.grid[static_cast<std::size_t>(b)] = x_lo + (b + 0.5) * bin_width;
    sim.histogram.values[static_cast<std::size_t>(b)] =
        static_cast<double>(counts[static_cast<std::size_t>(b)]);
  }

  // Accumulated per-photon probability patterns:
  //   sum_j (1 + cos(k x + dphi_j)) = N + Re(e^{ikx} sum_j e^{i dphi_j}).
  sim.accumulated.resize(x_grid.size());
  for (std::size_t i = 0; i < x_grid.size(); ++i)
    sim.accumulated[i] =
        static_cast<double>(n) + (phasor * std::polar(1.0, k * x_grid[i])).real();

  const CosineFit fit = fit_cosine(x_grid, sim.accumulated, k);
  sim.fit_ok = fit.ok;
  sim.visibility_fit = fit.visibility;
  sim.phase_fit = fit.phase;
  sim.visibility_extrema = fringe_visibility(sim.accumulated);
  const CosineFit hist_fit =
      fit_cosine(sim.histogram.grid, sim.histogram.values, k);
  // binning attenuates the fitted fringe amplitude by sinc(k * width / 2)
  const double attenuation = sinc(k * bin_width / 2.0);
  sim.visibility_hist_fit = hist_fit.ok ? hist_fit.visibility / attenuation : 0.0;
  sim.fit_ok = sim.fit_ok && hist_fit.ok;
  return sim;
}

EventStreams generate_events(const EventConfig& config) {
  if (config.n_detectors < 1) throw UsageError("generate_events: need at least one detector");
  if (!(config.duration > 0.0)) throw UsageError("generate_events: duration must be > 0");
  if (!(config.mean_rate > 0.0)) throw UsageError("generate_events: rate must be > 0");

  const SourceKind kind = config.source.kind();
  const bool thermal_like = kind == SourceKind::Thermal || kind == SourceKind::ColdAtomCloud ||
                            kind == SourceKind::SuperbunchingCascade;
  const bool laser_like = kind == SourceKind::Laser || kind == SourceKind::Bec;
  const bool single = kind == SourceKind::SinglePhoton;
  if (!thermal_like && !laser_like && !single)
    throw UsageError("generate_events: unsupported source kind '" + to_string(kind) + "'");
  if (config.source.statistics() == Statistics::Fermion)
    throw UsageError("generate_events: fermionic streams are not modeled");

  double tau_c = config.coherence_time;
  if (tau_c <= 0.0) tau_c = config.source.phase_coherence_time();
  if (!(tau_c > 0.0) || !std::isfinite(tau_c))
    throw UsageError("generate_events: a finite coherence time is required");

  EventStreams out;
  out.duration = config.duration;
  out.coherence_time = tau_c;
  out.low_rate_warning =
      config.mean_rate * config.duration * config.n_detectors < 100.0;
  out.streams.resize(static_cast<std::size_t>(config.n_detectors));

  const auto intervals =
      static_cast<std::uint64_t>(std::ceil(config.duration / tau_c));
  const std::uint64_t seed = config.seed;
  const int stages =
      kind == SourceKind::SuperbunchingCascade ? config.source.cascade_stages() : 1;

  for (std::uint64_t i = 0; i < intervals; ++i) {
    double weight = 1.0;
    if (thermal_like)
      for (int s = 0; s < stages; ++s)
        weight *= rng::exponential(seed, rng::kWeightStream, 0, i,
                                   static_cast<std::uint64_t>(s));

    if (single) {
      const double p_emit =
          std::min(1.0, config.mean_rate * tau_c * config.n_detectors);
      if (rng::u01(seed, rng::kEventStream, 0, i, 0) < p_emit) {
        const int det = static_cast<int>(rng::u01(seed, rng::kEventStream, 0, i, 1) *
                                         config.n_detectors);
        const double t =
            tau_c * (static_cast<double>(i) + rng::u01(seed, rng::kEventStream, 0, i, 2));
        if (t <= config.duration)
          out.streams[static_cast<std::size_t>(std::min(det, config.n_detectors - 1))]
              .push_back({det, t});
      }
      continue;
    }

    for (int d = 0; d < config.n_detectors; ++d) {
      const double mean = config.mean_rate * tau_c * weight;
      const long count = rng::poisson(mean, seed, rng::kEventStream,
                                      static_cast<std::uint64_t>(d), i, 0);
      for (long j = 0; j < count; ++j) {
        const double t =
            tau_c * (static_cast<double>(i) +
                     rng::u01(seed, rng::kEventStream, static_cast<std::uint64_t>(d), i,
                              static_cast<std::uint64_t>(3 + j)));
        if (t <= config.duration)
          out.streams[static_cast<std::size_t>(d)].push_back({d, t});
      }
    }
  }

  for (auto& stream : out.streams)
    std::sort(stream.begin(), stream.end(),
              [](const DetectionEvent& a, const DetectionEvent& b) {
                return a.timestamp < b.timestamp;
              });
  return out;
}

CorrelationResult correlate(const std::vector<std::vector<DetectionEvent>>& streams,
                            int order, double window, int n_bins,
                            double coherence_time_hint) {
  if (order != 2 && order != 3)
    throw UsageError("correlate: order must be 2 or 3");
  if (static_cast<int>(streams.size()) < order)
    throw UsageError("correlate: need one stream per detector");
  if (!(window > 0.0)) throw UsageError("correlate: window must be > 0");
  if (n_bins < 1) throw UsageError("correlate: need at least one bin");

  CorrelationResult result;
  result.order = order;
  result.window = window;
  result.window_warning =
      coherence_time_hint > 0.0 && !(window < coherence_time_hint);
  result.tau_edges.resize(static_cast<std::size_t>(n_bins) + 1);
  const double bin_width = 2.0 * window / n_bins;
  for (int b = 0; b <= n_bins; ++b)
    result.tau_edges[static_cast<std::size_t>(b)] = -window + b * bin_width;
  result.coincidences.assign(static_cast<std::size_t>(n_bins), 0);
  result.g.assign(static_cast<std::size_t>(n_bins), 0.0);
  for (int d = 0; d < order; ++d)
    result.singles.push_back(static_cast<long>(streams[static_cast<std::size_t>(d)].size()));

  bool any_events = false;
  double t_min = 0.0, t_max = 0.0;
  for (int d = 0; d < order; ++d) {
    const auto& s = streams[static_cast<std::size_t>(d)];
    if (s.empty()) continue;
    if (!any_events) {
      t_min = s.front().timestamp;
      t_max = s.back().timestamp;
      any_events = true;
    } else {
      t_min = std::min(t_min, s.front().timestamp);
      t_max = std::max(t_max, s.back().timestamp);
    }
  }
  if (!any_events || t_max <= t_min) return result;  // empty result, zero counts
  result.duration = t_max - t_min;

  auto bin_of = [&](double tau) -> long {
    const auto b = static_cast<long>(std::floor((tau + window) / bin_width));
    return std::clamp<long>(b, 0, n_bins - 1);
  };

  const auto& s1 = streams[0];
  const auto& s2 = streams[1];
  if (order == 2) {
    std::size_t lo = 0;
    for (const auto& e1 : s1) {
      while (lo < s2.size() && s2[lo].timestamp < e1.timestamp - window) ++lo;
      for (std::size_t j = lo; j < s2.size() && s2[j].timestamp <= e1.timestamp + window; ++j)
        ++result.coincidences[static_cast<std::size_t>(bin_of(e1.timestamp - s2[j].timestamp))];
    }
  } else {
    const auto& s3 = streams[2];
    std::size_t lo2 = 0, lo3 = 0;
    for (const auto& e1 : s1) {
      while (lo2 < s2.size() && s2[lo2].timestamp < e1.timestamp - window) ++lo2;
      while (lo3 < s3.size() && s3[lo3].timestamp < e1.timestamp - window) ++lo3;
      for (std::size_t j = lo2; j < s2.size() && s2[j].timestamp <= e1.timestamp + window;
           ++j) {
        const double tau12 = e1.timestamp - s2[j].timestamp;
        const long b12 = bin_of(tau12);
        for (std::size_t k = lo3; k < s3.size() && s3[k].timestamp <= e1.timestamp + window;
             ++k) {
          if (std::abs(s2[j].timestamp - s3[k].timestamp) > window) continue;
          const double tau13 = e1.timestamp - s3[k].timestamp;
          if (bin_of(tau13) != b12) continue;
          ++result.coincidences[static_cast<std::size_t>(b12)];
        }
      }
    }
  }

  // Normalize by singles rates: independent streams give 1 per bin.
  double expected = 1.0;
  for (int d = 0; d < order; ++d)
    expected *= static_cast<double>(result.singles[static_cast<std::size_t>(d)]);
  expected *= std::pow(bin_width / result.duration, order - 1);
  if (expected > 0.0)
    for (int b = 0; b < n_bins; ++b)
      result.g[static_cast<std::size_t>(b)] =
          static_cast<double>(result.coincidences[static_cast<std::size_t>(b)]) / expected;
  return result;
}

CorrelationResult intensity_correlation(std::span<const double> trace1,
                                        std::span<const double> trace2, int max_lag,
                                        double dt, std::span<const double> trace3) {
  if (trace1.size() != trace2.size() || (!trace3.empty() && trace3.size() != trace1.size()))
    throw UsageError("intensity_correlation: traces must have equal length");
  if (trace1.size() < 2) throw UsageError("intensity_correlation: traces too short");
  if (max_lag < 0 || static_cast<std::size_t>(max_lag) >= trace1.size())
    throw UsageError("intensity_correlation: max_lag out of range");

  const std::size_t n = trace1.size();
  auto mean = [&](std::span<const double> t) {
    double s = 0.0;
    for (double v : t) s += v;
    return s / static_cast<double>(t.size());
  };
  const double m1 = mean(trace1);
  const double m2 = mean(trace2);
  const double m3 = trace3.empty() ? 1.0 : mean(trace3);

  CorrelationResult result;
  result.order = trace3.empty() ? 2 : 3;
  result.window = max_lag * dt;
  result.duration = static_cast<double>(n) * dt;
  result.singles = {static_cast<long>(n), static_cast<long>(n)};
  if (!trace3.empty()) result.singles.push_back(static_cast<long>(n));

  for (int lag = -max_lag; lag <= max_lag; ++lag) {
    result.tau_edges.push_back((lag - 0.5) * dt);
    double sum = 0.0;
    long count = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const long j = static_cast<long>(i) + lag;
      if (j < 0 || j >= static_cast<long>(n)) continue;
      double v = trace1[i] * trace2[static_cast<std::size_t>(j)];
      if (!trace3.empty()) v *= trace3[static_cast<std::size_t>(j)];
      sum += v;
      ++count;
    }
    const double denominator = m1 * m2 * m3;
    result.g.push_back(count > 0 && denominator > 0.0
                           ? sum / static_cast<double>(count) / denominator
                           : 0.0);
    result.coincidences.push_back(count);
  }
  result.tau_edges.push_back((max_lag + 0.5) * dt);
  return result;
}

}  // namespace feyncoh
