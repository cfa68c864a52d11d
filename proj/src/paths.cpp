#include "feyncoh/paths.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <string>
#include <thread>
#include <tuple>

#include "feyncoh/errors.hpp"
#include "feyncoh/rng.hpp"

namespace feyncoh {

namespace {

constexpr int kMaxOrder = 4;

long factorial(int n) {
  long f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

int permutation_parity(const std::vector<int>& seq) {
  int inversions = 0;
  for (std::size_t i = 0; i < seq.size(); ++i)
    for (std::size_t j = i + 1; j < seq.size(); ++j)
      if (seq[i] > seq[j]) ++inversions;
  return (inversions % 2 == 0) ? +1 : -1;
}

struct SymbolTable {
  std::vector<PhaseSymbolInfo> infos;
  std::map<std::tuple<int, int, int, int>, int> index;

  int id(PhaseSymbolInfo::Kind kind, int source, int label, int node) {
    auto key = std::make_tuple(static_cast<int>(kind), source, label, node);
    auto it = index.find(key);
    if (it != index.end()) return it->second;
    int id = static_cast<int>(infos.size());
    infos.push_back({kind, source, label, node});
    index.emplace(key, id);
    return id;
  }
};

void emission_counts_rec(const std::vector<SourceSpec>& sources, int source, int remaining,
                         std::vector<int>& current, std::vector<std::vector<int>>& out) {
  if (source == static_cast<int>(sources.size())) {
    if (remaining == 0) out.push_back(current);
    return;
  }
  const int cap = sources[source].emission_cap();
  const int arity = sources[source].emission_arity();
  int max_count = (cap < 0) ? remaining : std::min(cap, remaining);
  for (int m = 0; m <= max_count; ++m) {
    if (m % arity != 0) continue;
    current[source] = m;
    emission_counts_rec(sources, source + 1, remaining - m, current, out);
  }
  current[source] = 0;
}

}  // namespace

WaySet enumerate_ways(const std::vector<SourceSpec>& sources, int order) {
  if (sources.empty()) throw UsageError("enumerate_ways: at least one source is required");
  if (order < 1) throw UsageError("enumerate_ways: order must be >= 1");
  if (order > kMaxOrder)
    throw UsageError("enumerate_ways: orders beyond " + std::to_string(kMaxOrder) +
                     " are not supported (factorial path growth)");

  const bool any_fermion = std::any_of(sources.begin(), sources.end(), [](const SourceSpec& s) {
    return s.statistics() == Statistics::Fermion;
  });
  if (any_fermion)
    for (const auto& s : sources)
      if (s.statistics() != Statistics::Fermion)
        throw UsageError("enumerate_ways: bosonic and fermionic sources cannot feed the same "
                         "coincidence configuration");

  int cascades = 0;
  for (const auto& s : sources)
    if (s.kind() == SourceKind::SuperbunchingCascade && s.cascade_stages() >= 2) ++cascades;
  if (cascades > 0 && (sources.size() != 1 || order != 2))
    throw UsageError("enumerate_ways: multi-stage cascade sources are supported only as a "
                     "single source at order 2");
  const bool any_pair = std::any_of(sources.begin(), sources.end(), [](const SourceSpec& s) {
    return s.kind() == SourceKind::EntangledPairEmitter;
  });
  if (any_pair && (sources.size() != 1 || order != 2))
    throw UsageError("enumerate_ways: an entangled-pair emitter is supported only as a "
                     "single source at order 2");

  std::vector<std::vector<int>> counts;
  std::vector<int> scratch(sources.size(), 0);
  emission_counts_rec(sources, 0, order, scratch, counts);
  if (counts.empty())
    throw UsageError("enumerate_ways: the given sources cannot emit " + std::to_string(order) +
                     " particles in one coherence interval");

  // Multinomial intensity weights over the feasible emission multisets.
  std::vector<double> weights(counts.size());
  double total = 0.0;
  for (std::size_t w = 0; w < counts.size(); ++w) {
    double value = static_cast<double>(factorial(order));
    for (std::size_t i = 0; i < sources.size(); ++i) {
      value /= static_cast<double>(factorial(counts[w][i]));
      for (int k = 0; k < counts[w][i]; ++k) value *= sources[i].intensity_weight();
    }
    weights[w] = value;
    total += value;
  }
  if (!(total > 0.0))
    throw DomainError("enumerate_ways: all feasible ways have zero intensity weight");
  for (auto& w : weights) w /= total;

  WaySet result;
  result.order = order;
  result.n_sources = static_cast<int>(sources.size());
  SymbolTable symbols;

  for (std::size_t w = 0; w < counts.size(); ++w) {
    Way way;
    way.probability_weight = weights[w];
    way.emissions_per_source = counts[w];

    // Emission slots in canonical order; coherent-phase emissions share label 0.
    std::vector<std::pair<int, int>> slots;
    for (std::size_t i = 0; i < sources.size(); ++i)
      for (int e = 0; e < counts[w][i]; ++e)
        slots.emplace_back(static_cast<int>(i), sources[i].coherent_phase() ? 0 : e);
    std::sort(slots.begin(), slots.end());

    const bool fermionic = any_fermion;
    // Slot ranks for permutation parity (all slots distinct for fermions).
    std::vector<std::pair<int, int>> sorted_slots = slots;

    int cascade_layers = 0;
    int cascade_source = -1;
    if (cascades > 0 && counts[w][0] == 2) {
      cascade_source = 0;
      cascade_layers = sources[0].cascade_stages() - 1;
    }

    std::vector<std::pair<int, int>> perm = slots;
    do {
      Path base;
      base.legs.resize(order);
      for (int d = 0; d < order; ++d)
        base.legs[d] = PathLeg{perm[d].first, perm[d].second, d, {}};
      if (fermionic) {
        std::vector<int> ranks(order);
        for (int d = 0; d < order; ++d) {
          auto it = std::lower_bound(sorted_slots.begin(), sorted_slots.end(), perm[d]);
          ranks[d] = static_cast<int>(it - sorted_slots.begin());
        }
        base.sign = permutation_parity(ranks);
      }

      // Expand cascade node routings: per intermediate stage the pair passes
      // the two nodes in one of two ways.
      const int routings = 1 << cascade_layers;
      for (int r = 0; r < routings; ++r) {
        Path path = base;
        for (int layer = 0; layer < cascade_layers; ++layer) {
          const int first = (r >> layer) & 1;
          path.legs[0].nodes.push_back(first);
          path.legs[1].nodes.push_back(1 - first);
        }
        for (int d = 0; d < order; ++d) {
          const auto& leg = path.legs[d];
          path.phase_symbols.push_back(
              symbols.id(PhaseSymbolInfo::Kind::Emission, leg.source, leg.emission, -1));
          for (std::size_t layer = 0; layer < leg.nodes.size(); ++layer)
            path.phase_symbols.push_back(symbols.id(PhaseSymbolInfo::Kind::CascadeNode,
                                                    cascade_source, static_cast<int>(layer),
                                                    leg.nodes[layer]));
        }
        std::sort(path.phase_symbols.begin(), path.phase_symbols.end());
        way.paths.push_back(std::move(path));
      }
    } while (std::next_permutation(perm.begin(), perm.end()));

    // next_permutation over the sorted slot multiset already yields each
    // distinct assignment once, so coherent-mode collapse is complete here.
    result.ways.push_back(std::move(way));
  }

  // A way whose single-photon (or pair) source usage differs from another
  // way's is distinguishable: the source status can be measured.
  auto signature = [&](const Way& way) {
    std::vector<int> sig;
    for (std::size_t i = 0; i < sources.size(); ++i)
      if (sources[i].emission_cap() >= 0) sig.push_back(way.emissions_per_source[i]);
    return sig;
  };
  for (auto& way : result.ways) {
    const auto sig = signature(way);
    way.distinguishable_from_other_ways =
        std::any_of(result.ways.begin(), result.ways.end(),
                    [&](const Way& other) { return signature(other) != sig; });
  }

  result.symbols = std::move(symbols.infos);
  return result;
}

void assign_reflections(WaySet& ways, const std::vector<SourceSpec>& sources,
                        const std::vector<std::vector<int>>& reflections) {
  if (reflections.empty()) {
    for (auto& way : ways.ways)
      for (auto& path : way.paths) path.reflection_count = 0;
    return;
  }
  std::vector<int> port_base(sources.size());
  int ports = 0;
  for (std::size_t i = 0; i < sources.size(); ++i) {
    port_base[i] = ports;
    ports += sources[i].emission_arity();
  }
  if (static_cast<int>(reflections.size()) != ports)
    throw UsageError("assign_reflections: reflection table must have one row per input port");

  for (auto& way : ways.ways) {
    for (auto& path : way.paths) {
      int count = 0;
      for (const auto& leg : path.legs) {
        int port = port_base[leg.source];
        if (sources[leg.source].emission_arity() == 2) port += leg.emission;
        const auto& row = reflections[port];
        if (leg.detector >= static_cast<int>(row.size()))
          throw UsageError("assign_reflections: reflection table has too few detector columns");
        count += row[leg.detector];
      }
      path.reflection_count = count;
    }
  }
}

DistinguishabilityVerdict classify(const Path& a, const Path& b, const ClassifyContext& ctx) {
  const int n = static_cast<int>(ctx.detectors.size());
  if (static_cast<int>(a.legs.size()) != n || static_cast<int>(b.legs.size()) != n)
    throw UsageError("classify: paths do not belong to this detector configuration");
  auto check_leg = [&](const PathLeg& leg) {
    if (leg.source < 0 || leg.source >= static_cast<int>(ctx.sources.size()) ||
        leg.detector < 0 || leg.detector >= n)
      throw UsageError("classify: path references sources or detectors outside the "
                       "configuration");
  };
  for (const auto& leg : a.legs) check_leg(leg);
  for (const auto& leg : b.legs) check_leg(leg);

  auto emission_time = [&](int source, int emission) -> double {
    if (ctx.emission_times.empty()) return 0.0;
    const auto& row = ctx.emission_times[static_cast<std::size_t>(source)];
    if (emission >= static_cast<int>(row.size())) return 0.0;
    return row[static_cast<std::size_t>(emission)];
  };

  // Momentum resolution: paths routed through sources farther apart than
  // lambda L / dx give the detected particle a resolvable momentum kick.
  for (int d = 0; d < n; ++d) {
    const int s1 = a.legs[d].source;
    const int s2 = b.legs[d].source;
    if (s1 == s2) continue;
    const double separation =
        std::abs(ctx.sources[s1].position() - ctx.sources[s2].position());
    const double threshold = ctx.geometry.wavelength * ctx.geometry.L /
                             ctx.detectors[static_cast<std::size_t>(d)].position_uncertainty;
    if (separation > threshold)
      return {true, DistinguishabilityReason::MomentumResolvable};
  }

  // Coherence volume: emissions separated in time by more than the coherence
  // time belong to different coherence volumes.
  double t_min = 0.0, t_max = 0.0, tau_c = std::numeric_limits<double>::infinity();
  bool first = true;
  for (const Path* p : {&a, &b}) {
    for (const auto& leg : p->legs) {
      const double t = emission_time(leg.source, leg.emission);
      if (first) {
        t_min = t_max = t;
        first = false;
      } else {
        t_min = std::min(t_min, t);
        t_max = std::max(t_max, t);
      }
      tau_c = std::min(tau_c, ctx.sources[leg.source].phase_coherence_time());
    }
  }
  if (t_max - t_min > tau_c)
    return {true, DistinguishabilityReason::OutsideCoherenceVolume};

  // Source status: single-photon sources that fired in one alternative but
  // not the other can be interrogated without disturbing the detection,
  // unless the candidate emissions happened simultaneously.
  auto sp_multiset = [&](const Path& p) {
    std::vector<std::pair<int, int>> used;
    for (const auto& leg : p.legs)
      if (ctx.sources[leg.source].emission_cap() >= 0)
        used.emplace_back(leg.source, leg.emission);
    std::sort(used.begin(), used.end());
    return used;
  };
  const auto sp_a = sp_multiset(a);
  const auto sp_b = sp_multiset(b);
  if (sp_a != sp_b) {
    bool simultaneous = true;
    double reference = 0.0;
    bool have_reference = false;
    for (const auto& used : {sp_a, sp_b}) {
      for (const auto& [src, em] : used) {
        const double t = emission_time(src, em);
        if (!have_reference) {
          reference = t;
          have_reference = true;
        } else if (t != reference) {
          simultaneous = false;
        }
      }
    }
    if (!simultaneous) return {true, DistinguishabilityReason::SourceStatusMeasurable};
  }

  return {false, std::nullopt};
}

Amplitude way_amplitude(const Way& way, std::span<const double> phase_by_symbol,
                        double bs_reflection_phase, const LegAmplitudeFn& leg_amplitude) {
  if (way.paths.empty()) throw UsageError("way_amplitude: way has no paths");
  Amplitude sum{0.0, 0.0};
  for (const auto& path : way.paths) {
    double phase = path.reflection_count * bs_reflection_phase;
    for (int symbol : path.phase_symbols) {
      if (symbol < 0 || symbol >= static_cast<int>(phase_by_symbol.size()))
        throw UsageError("way_amplitude: missing phase assignment for symbol " +
                         std::to_string(symbol));
      phase += phase_by_symbol[static_cast<std::size_t>(symbol)];
    }
    Amplitude product = std::polar(1.0, phase);
    for (const auto& leg : path.legs) product *= leg_amplitude(leg);
    sum += static_cast<double>(path.sign) * product;
  }
  return sum / std::sqrt(static_cast<double>(way.paths.size()));
}

namespace {

struct EngineLayout {
  std::vector<int> label_count;  // per source
  std::vector<int> label_base;   // per source
  int total_labels = 0;
  std::vector<int> phase_rep;    // per source: representative for phase locking
};

EngineLayout build_layout(const WaySet& ways, const CoincidenceSetup& setup) {
  EngineLayout layout;
  const std::size_t n_sources = setup.sources.size();
  layout.label_count.assign(n_sources, 0);
  for (const auto& way : ways.ways)
    for (const auto& path : way.paths)
      for (const auto& leg : path.legs)
        layout.label_count[static_cast<std::size_t>(leg.source)] =
            std::max(layout.label_count[static_cast<std::size_t>(leg.source)],
                     leg.emission + 1);
  layout.label_base.resize(n_sources);
  for (std::size_t i = 0; i < n_sources; ++i) {
    layout.label_base[i] = layout.total_labels;
    layout.total_labels += layout.label_count[i];
  }
  layout.phase_rep.resize(n_sources);
  std::iota(layout.phase_rep.begin(), layout.phase_rep.end(), 0);
  for (const auto& group : setup.phase_lock_groups) {
    if (group.empty()) continue;
    const int rep = *std::min_element(group.begin(), group.end());
    for (int s : group) {
      if (s < 0 || s >= static_cast<int>(n_sources))
        throw UsageError("ensemble: phase lock group references an unknown source");
      layout.phase_rep[static_cast<std::size_t>(s)] = rep;
    }
  }
  return layout;
}

double sample_omega(const SourceSpec& source, std::uint64_t seed, std::uint64_t sample,
                    std::uint64_t counter) {
  const Spectrum& sp = source.spectrum();
  switch (sp.shape()) {
    case SpectrumShape::Monochromatic:
      return sp.omega0();
    case SpectrumShape::Rectangular:
      return sp.omega0() +
             sp.width() * (rng::u01(seed, rng::kModeStream, sample, counter, 0) - 0.5);
    case SpectrumShape::Gaussian:
      return sp.omega0() + sp.width() * rng::normal(seed, rng::kModeStream, sample, counter, 1);
    case SpectrumShape::Lorentzian:
      return sp.omega0() +
             0.5 * sp.width() * rng::cauchy(seed, rng::kModeStream, sample, counter, 2);
  }
  throw UsageError("ensemble: unknown spectrum shape");
}

struct Accumulator {
  double sum = 0.0;
  double sum_sq = 0.0;
  double baseline = 0.0;
};

}  // namespace

EnsembleEstimate ensemble_probability(const WaySet& input_ways, const CoincidenceSetup& setup,
                                      std::span<const double> detector_coords, long n_samples,
                                      std::uint64_t seed, int workers) {
  if (n_samples < 1) throw UsageError("ensemble: n_samples must be >= 1");
  WaySet reflected;
  const WaySet* active = &input_ways;
  if (!setup.reflections.empty()) {
    reflected = input_ways;
    assign_reflections(reflected, setup.sources, setup.reflections);
    active = &reflected;
  }
  const WaySet& ways = *active;
  const int n_det = ways.order;
  if (static_cast<int>(detector_coords.size()) != n_det)
    throw UsageError("ensemble: expected one coordinate per detector");
  if (static_cast<int>(setup.sources.size()) != ways.n_sources)
    throw UsageError("ensemble: setup sources do not match the enumerated ways");

  const EngineLayout layout = build_layout(ways, setup);
  const double k_spatial =
      setup.domain == Domain::Spatial ? two_pi / setup.geometry.wavelength : 0.0;
  if (setup.domain == Domain::Spatial && !(setup.geometry.wavelength > 0.0))
    throw UsageError("ensemble: spatial domain requires a geometry wavelength");

  // Ways in one group superpose coherently (rule II); groups add by
  // probability (rule III). Grouping follows the distinguishability flags
  // set during enumeration.
  std::vector<std::vector<int>> groups;
  if (setup.force_distinguishable) {
    // handled per path below
  } else {
    std::map<std::vector<int>, int> group_index;
    for (std::size_t w = 0; w < ways.ways.size(); ++w) {
      std::vector<int> sig;
      for (std::size_t i = 0; i < setup.sources.size(); ++i)
        if (setup.sources[i].emission_cap() >= 0)
          sig.push_back(ways.ways[w].emissions_per_source[i]);
      auto [it, inserted] = group_index.emplace(sig, static_cast<int>(groups.size()));
      if (inserted) groups.emplace_back();
      groups[static_cast<std::size_t>(it->second)].push_back(static_cast<int>(w));
    }
  }

  auto run_chunk = [&](long begin, long end) {
    Accumulator acc;
    std::vector<double> phases(ways.symbols.size());
    std::vector<Amplitude> leg_amp(static_cast<std::size_t>(layout.total_labels) *
                                   static_cast<std::size_t>(n_det));
    std::vector<double> mode(static_cast<std::size_t>(layout.total_labels));

    for (long s = begin; s < end; ++s) {
      const auto us = static_cast<std::uint64_t>(s);
      // Latent draws: one mode and phase per coherent source per sample, one
      // per emission for random-phase sources.
      for (std::size_t i = 0; i < setup.sources.size(); ++i) {
        const auto& src = setup.sources[i];
        const int base = layout.label_base[i];
        const int count = layout.label_count[i];
        if (count == 0) continue;
        if (src.coherent_phase()) {
          double value;
          if (setup.domain == Domain::Temporal)
            value = sample_omega(src, seed, us, (static_cast<std::uint64_t>(i) << 32) | 0xC0u);
          else
            value = src.position();
          for (int e = 0; e < count; ++e) mode[static_cast<std::size_t>(base + e)] = value;
        } else {
          for (int e = 0; e < count; ++e) {
            const std::uint64_t c =
                (static_cast<std::uint64_t>(i) << 32) | static_cast<std::uint64_t>(e);
            double value;
            if (setup.domain == Domain::Temporal) {
              value = sample_omega(src, seed, us, c);
            } else {
              value = src.position();
              if (src.extent() > 0.0)
                value += src.extent() * (rng::u01(seed, rng::kModeStream, us, c, 9) - 0.5);
            }
            mode[static_cast<std::size_t>(base + e)] = value;
          }
        }
      }
      for (std::size_t sym = 0; sym < ways.symbols.size(); ++sym) {
        const auto& info = ways.symbols[sym];
        if (info.kind == PhaseSymbolInfo::Kind::CascadeNode) {
          phases[sym] = rng::phase(seed, rng::kPhaseStream, us,
                                   (static_cast<std::uint64_t>(info.label) << 32) |
                                       static_cast<std::uint64_t>(info.node),
                                   2);
        } else if (setup.sources[static_cast<std::size_t>(info.source)].coherent_phase()) {
          const int rep = layout.phase_rep[static_cast<std::size_t>(info.source)];
          phases[sym] =
              rng::phase(seed, rng::kPhaseStream, us, static_cast<std::uint64_t>(rep), 1);
        } else {
          phases[sym] = rng::phase(seed, rng::kPhaseStream, us,
                                   (static_cast<std::uint64_t>(info.source) << 32) |
                                       static_cast<std::uint64_t>(info.label),
                                   0);
        }
      }

      // Unit-magnitude leg amplitudes for this sample.
      for (std::size_t i = 0; i < setup.sources.size(); ++i) {
        const int base = layout.label_base[i];
        for (int e = 0; e < layout.label_count[i]; ++e) {
          const double m = mode[static_cast<std::size_t>(base + e)];
          for (int d = 0; d < n_det; ++d) {
            double phase;
            if (setup.domain == Domain::Temporal) {
              phase = -m * detector_coords[static_cast<std::size_t>(d)];
            } else {
              const double dx = detector_coords[static_cast<std::size_t>(d)] - m;
              phase = k_spatial * dx * dx / (2.0 * setup.geometry.L);
            }
            leg_amp[static_cast<std::size_t>((base + e) * n_det + d)] = std::polar(1.0, phase);
          }
        }
      }

      auto path_amplitude = [&](const Path& path) {
        double phase = path.reflection_count * setup.bs_reflection_phase;
        for (int sym : path.phase_symbols) phase += phases[static_cast<std::size_t>(sym)];
        Amplitude product = std::polar(1.0, phase);
        for (const auto& leg : path.legs)
          product *= leg_amp[static_cast<std::size_t>(
              (layout.label_base[static_cast<std::size_t>(leg.source)] + leg.emission) * n_det +
              leg.detector)];
        return static_cast<double>(path.sign) * product;
      };

      double p = 0.0;
      double baseline = 0.0;
      if (setup.force_distinguishable) {
        for (const auto& way : ways.ways) {
          double sum = 0.0;
          for (const auto& path : way.paths) sum += std::norm(path_amplitude(path));
          p += way.probability_weight * sum / static_cast<double>(way.paths.size());
          baseline += way.probability_weight;
        }
      } else {
        for (const auto& group : groups) {
          Amplitude amp{0.0, 0.0};
          for (int w : group) {
            const auto& way = ways.ways[static_cast<std::size_t>(w)];
            Amplitude way_sum{0.0, 0.0};
            for (const auto& path : way.paths) way_sum += path_amplitude(path);
            amp += std::sqrt(way.probability_weight /
                             static_cast<double>(way.paths.size())) *
                   way_sum;
          }
          p += std::norm(amp);
        }
        for (const auto& way : ways.ways) baseline += way.probability_weight;
      }
      acc.sum += p;
      acc.sum_sq += p * p;
      acc.baseline += baseline;
    }
    return acc;
  };

  int n_workers = std::max(1, workers);
  n_workers = static_cast<int>(std::min<long>(n_workers, n_samples));
  std::vector<Accumulator> partial(static_cast<std::size_t>(n_workers));
  if (n_workers == 1) {
    partial[0] = run_chunk(0, n_samples);
  } else {
    std::vector<std::thread> pool;
    const long chunk = (n_samples + n_workers - 1) / n_workers;
    for (int w = 0; w < n_workers; ++w) {
      const long begin = w * chunk;
      const long end = std::min<long>(begin + chunk, n_samples);
      pool.emplace_back([&, w, begin, end] { partial[static_cast<std::size_t>(w)] =
                                                 run_chunk(begin, end); });
    }
    for (auto& t : pool) t.join();
  }

  Accumulator total;
  for (const auto& acc : partial) {
    total.sum += acc.sum;
    total.sum_sq += acc.sum_sq;
    total.baseline += acc.baseline;
  }
  const double n = static_cast<double>(n_samples);
  const double mean_p = total.sum / n;
  const double mean_b = total.baseline / n;
  const double var = std::max(0.0, total.sum_sq / n - mean_p * mean_p);
  EnsembleEstimate estimate;
  estimate.value = mean_p / mean_b;
  estimate.std_error = std::sqrt(var / n) / mean_b;
  estimate.samples = n_samples;
  return estimate;
}

std::vector<EnsembleEstimate> ensemble_scan(const WaySet& ways, const CoincidenceSetup& setup,
                                            const std::vector<std::vector<double>>& coords,
                                            long n_samples, std::uint64_t seed, int workers) {
  std::vector<EnsembleEstimate> out;
  out.reserve(coords.size());
  for (const auto& c : coords)
    out.push_back(ensemble_probability(ways, setup, c, n_samples, seed, workers));
  return out;
}

namespace {

Amplitude permutation_sum(const AmplitudeMatrix& m, bool signed_sum) {
  const std::size_t n = m.size();
  if (n == 0) throw UsageError("path oracle: matrix must be non-empty");
  if (n > 8) throw UsageError("path oracle: matrices beyond 8x8 are not supported");
  for (const auto& row : m)
    if (row.size() != n) throw UsageError("path oracle: matrix must be square");

  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  Amplitude sum{0.0, 0.0};
  do {
    Amplitude product{1.0, 0.0};
    for (std::size_t i = 0; i < n; ++i) product *= m[i][static_cast<std::size_t>(perm[i])];
    if (signed_sum)
      sum += static_cast<double>(permutation_parity(perm)) * product;
    else
      sum += product;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return sum;
}

}  // namespace

Amplitude matrix_permanent(const AmplitudeMatrix& m) { return permutation_sum(m, false); }

Amplitude matrix_determinant(const AmplitudeMatrix& m) { return permutation_sum(m, true); }

}  // namespace feyncoh
