#include "feyncoh/experiment.hpp"

#include <algorithm>
#include <cerrno>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "feyncoh/coherence.hpp"
#include "feyncoh/constants.hpp"
#include "feyncoh/errors.hpp"
#include "feyncoh/rng.hpp"

namespace feyncoh {

std::string to_string(RunMode mode) {
  switch (mode) {
    case RunMode::Analytic: return "analytic";
    case RunMode::MonteCarlo: return "montecarlo";
    case RunMode::Both: return "both";
  }
  return "?";
}

std::string to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::Mz: return "mz";
    case ExperimentKind::FirstOrder: return "first-order";
    case ExperimentKind::VisibilityDecay: return "visibility-decay";
    case ExperimentKind::Hbt: return "hbt";
    case ExperimentKind::Hom: return "hom";
    case ExperimentKind::MultiSourceSecond: return "multi-source-second";
    case ExperimentKind::Subwavelength: return "subwavelength";
    case ExperimentKind::ThirdOrder: return "third-order";
    case ExperimentKind::EventStream: return "event-stream";
    case ExperimentKind::PathOracleCheck: return "path-oracle-check";
    case ExperimentKind::Degeneracy: return "degeneracy";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

namespace {

enum class Dim { Plain, Time, Length, FrequencyHz, AngularFrequency, Temperature, Power, Mass };

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::optional<double> unit_factor(Dim dim, const std::string& unit, bool& to_angular) {
  to_angular = false;
  switch (dim) {
    case Dim::Plain:
      if (unit.empty()) return 1.0;
      return std::nullopt;
    case Dim::Time:
      if (unit.empty() || unit == "s") return 1.0;
      if (unit == "ms") return 1e-3;
      if (unit == "us") return 1e-6;
      if (unit == "ns") return 1e-9;
      return std::nullopt;
    case Dim::Length:
      if (unit.empty() || unit == "m") return 1.0;
      if (unit == "mm") return 1e-3;
      if (unit == "um") return 1e-6;
      if (unit == "nm") return 1e-9;
      return std::nullopt;
    case Dim::FrequencyHz:
      if (unit.empty() || unit == "Hz") return 1.0;
      if (unit == "kHz") return 1e3;
      if (unit == "MHz") return 1e6;
      if (unit == "GHz") return 1e9;
      return std::nullopt;
    case Dim::AngularFrequency:
      if (unit.empty() || unit == "rad/s") return 1.0;
      // Ordinary frequencies convert at this API boundary.
      if (unit == "Hz") { to_angular = true; return 1.0; }
      if (unit == "kHz") { to_angular = true; return 1e3; }
      if (unit == "MHz") { to_angular = true; return 1e6; }
      if (unit == "GHz") { to_angular = true; return 1e9; }
      return std::nullopt;
    case Dim::Temperature:
      if (unit.empty() || unit == "K") return 1.0;
      return std::nullopt;
    case Dim::Power:
      if (unit.empty() || unit == "W") return 1.0;
      return std::nullopt;
    case Dim::Mass:
      if (unit.empty() || unit == "kg") return 1.0;
      return std::nullopt;
  }
  return std::nullopt;
}

struct Entry {
  std::string value;
  int line = 0;
};

class Parser {
 public:
  Parser(std::string_view text, std::string origin) : origin_(std::move(origin)) {
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
      const std::size_t end = text.find('\n', pos);
      std::string_view line =
          text.substr(pos, end == std::string_view::npos ? text.size() - pos : end - pos);
      ++line_no;
      pos = end == std::string_view::npos ? text.size() + 1 : end + 1;
      std::string stripped = trim(line);
      if (stripped.empty() || stripped[0] == '#') continue;
      const std::size_t eq = stripped.find('=');
      if (eq == std::string::npos) {
        errors_.push_back({line_no, stripped, "expected key = value"});
        continue;
      }
      const std::string key = trim(stripped.substr(0, eq));
      const std::string value = trim(stripped.substr(eq + 1));
      if (key.empty()) {
        errors_.push_back({line_no, stripped, "empty key"});
        continue;
      }
      if (entries_.count(key)) {
        errors_.push_back({line_no, key, "duplicate key"});
        continue;
      }
      entries_[key] = Entry{value, line_no};
    }
  }

  bool has(const std::string& key) const { return entries_.count(key) > 0; }

  std::optional<std::string> text(const std::string& key) {
    auto it = entries_.find(key);
    if (it == entries_.end()) return std::nullopt;
    consumed_.insert(key);
    return it->second.value;
  }

  int line_of(const std::string& key) const {
    auto it = entries_.find(key);
    return it == entries_.end() ? 0 : it->second.line;
  }

  void error(const std::string& key, const std::string& message) {
    errors_.push_back({line_of(key), key, message});
  }

  double quantity(const std::string& key, double fallback, Dim dim) {
    auto raw = text(key);
    if (!raw) return fallback;
    const char* start = raw->c_str();
    char* end = nullptr;
    errno = 0;
    const double value = std::strtod(start, &end);
    if (end == start || errno == ERANGE) {
      error(key, "expected a number, got '" + *raw + "'");
      return fallback;
    }
    const std::string unit = trim(std::string_view(end));
    bool to_angular = false;
    const auto factor = unit_factor(dim, unit, to_angular);
    if (!factor) {
      error(key, "unit '" + unit + "' does not fit this key");
      return fallback;
    }
    double v = value * *factor;
    if (to_angular) v *= two_pi;
    return v;
  }

  long integer(const std::string& key, long fallback) {
    const double v = quantity(key, static_cast<double>(fallback), Dim::Plain);
    return static_cast<long>(std::llround(v));
  }

  bool boolean(const std::string& key, bool fallback) {
    auto raw = text(key);
    if (!raw) return fallback;
    std::string v = *raw;
    std::transform(v.begin(), v.end(), v.begin(), ::tolower);
    if (v == "true" || v == "yes" || v == "1") return true;
    if (v == "false" || v == "no" || v == "0") return false;
    error(key, "expected true/false");
    return fallback;
  }

  std::vector<double> number_list(const std::string& key, Dim dim) {
    std::vector<double> out;
    auto raw = text(key);
    if (!raw) return out;
    std::stringstream ss(*raw);
    std::string item;
    while (std::getline(ss, item, ',')) {
      item = trim(item);
      if (item.empty()) continue;
      const char* start = item.c_str();
      char* end = nullptr;
      const double value = std::strtod(start, &end);
      if (end == start) {
        error(key, "expected a comma-separated number list");
        return out;
      }
      const std::string unit = trim(std::string_view(end));
      bool to_angular = false;
      const auto factor = unit_factor(dim, unit, to_angular);
      if (!factor) {
        error(key, "unit '" + unit + "' does not fit this key");
        return out;
      }
      out.push_back(value * *factor * (to_angular ? two_pi : 1.0));
    }
    return out;
  }

  void finish() {
    for (const auto& [key, entry] : entries_)
      if (!consumed_.count(key)) errors_.push_back({entry.line, key, "unknown key"});
  }

  std::vector<ParseError>& errors() { return errors_; }
  const std::string& origin() const { return origin_; }

 private:
  std::string origin_;
  std::map<std::string, Entry> entries_;
  std::set<std::string> consumed_;
  std::vector<ParseError> errors_;
};

std::optional<SourceKind> source_kind_from(const std::string& name) {
  if (name == "thermal") return SourceKind::Thermal;
  if (name == "laser") return SourceKind::Laser;
  if (name == "single-photon") return SourceKind::SinglePhoton;
  if (name == "cascade") return SourceKind::SuperbunchingCascade;
  if (name == "modulated") return SourceKind::SuperbunchingModulated;
  if (name == "entangled-pair") return SourceKind::EntangledPairEmitter;
  if (name == "cold-atom") return SourceKind::ColdAtomCloud;
  if (name == "bec") return SourceKind::Bec;
  return std::nullopt;
}

void parse_sources(Parser& p, ExperimentConfig& cfg) {
  for (int i = 1;; ++i) {
    const std::string prefix = "source." + std::to_string(i) + ".";
    const std::string kind_key = prefix + "kind";
    if (!p.has(kind_key)) break;
    const std::string kind_name = *p.text(kind_key);
    const auto kind = source_kind_from(kind_name);
    if (!kind) {
      p.error(kind_key, "unknown source kind '" + kind_name + "'");
      continue;
    }

    SourceSpec::Fields f;
    f.kind = *kind;
    f.position = p.quantity(prefix + "position", 0.0, Dim::Length);
    f.extent = p.quantity(prefix + "extent", 0.0, Dim::Length);
    f.intensity_weight = p.quantity(prefix + "intensity", 1.0, Dim::Plain);
    f.particle_mass = p.quantity(prefix + "mass", 0.0, Dim::Mass);
    f.particle_speed = p.quantity(prefix + "speed", constants.c, Dim::Plain);
    f.cascade_stages = static_cast<int>(p.integer(prefix + "stages", 1));
    f.phase_coherence_time = p.quantity(prefix + "coherence-time", 0.0, Dim::Time);

    const std::string spectrum_key = prefix + "spectrum";
    std::string shape = p.text(spectrum_key).value_or("monochromatic");
    const double omega0 = p.quantity(prefix + "omega0", 0.0, Dim::AngularFrequency);
    const double bandwidth = p.quantity(prefix + "bandwidth", 0.0, Dim::AngularFrequency);
    try {
      if (shape == "monochromatic")
        f.spectrum = Spectrum::monochromatic(omega0);
      else if (shape == "rectangular")
        f.spectrum = Spectrum::rectangular(omega0, bandwidth);
      else if (shape == "gaussian")
        f.spectrum = Spectrum::gaussian(omega0, bandwidth);
      else if (shape == "lorentzian")
        f.spectrum = Spectrum::lorentzian(omega0, bandwidth);
      else {
        p.error(spectrum_key, "unknown spectrum shape '" + shape + "'");
        continue;
      }
    } catch (const std::exception& e) {
      p.error(p.has(prefix + "bandwidth") ? prefix + "bandwidth" : prefix + "omega0", e.what());
      continue;
    }

    if (auto stats = p.text(prefix + "statistics")) {
      if (*stats == "boson")
        f.statistics = Statistics::Boson;
      else if (*stats == "fermion")
        f.statistics = Statistics::Fermion;
      else
        p.error(prefix + "statistics", "expected boson or fermion");
    }

    f.phase_model = required_phase_model(f.kind);
    const std::string pm_key = prefix + "phase-model";
    if (auto pm = p.text(pm_key)) {
      if (*pm == "coherent")
        f.phase_model = PhaseModelKind::CoherentPhase;
      else if (*pm == "random-per-photon")
        f.phase_model = PhaseModelKind::RandomPerPhoton;
      else
        p.error(pm_key, "expected coherent or random-per-photon");
    }

    const std::string gamma_key = prefix + "gamma";
    if (auto gamma = p.text(gamma_key)) {
      GammaTable table;
      std::stringstream ss(*gamma);
      std::string pair;
      bool bad = false;
      while (std::getline(ss, pair, ',')) {
        const std::size_t colon = pair.find(':');
        if (colon == std::string::npos) {
          bad = true;
          break;
        }
        try {
          table.tau.push_back(std::stod(trim(pair.substr(0, colon))));
          table.value.push_back(std::stod(trim(pair.substr(colon + 1))));
        } catch (const std::exception&) {
          bad = true;
          break;
        }
      }
      if (bad)
        p.error(gamma_key, "expected tau:value pairs, e.g. 0:3.0, 1e-6:1.0");
      else
        f.gamma = std::move(table);
    }

    try {
      cfg.sources.push_back(SourceSpec(f));
    } catch (const std::exception& e) {
      p.error(p.has(pm_key) ? pm_key : kind_key, e.what());
    }
  }
}

void parse_detectors(Parser& p, ExperimentConfig& cfg) {
  for (int i = 1;; ++i) {
    const std::string prefix = "detector." + std::to_string(i) + ".";
    if (!p.has(prefix + "position") && !p.has(prefix + "dx")) break;
    const double pos = p.quantity(prefix + "position", 0.0, Dim::Length);
    const double dx = p.quantity(prefix + "dx", 1e-10, Dim::Length);
    try {
      cfg.detectors.emplace_back(pos, dx, i - 1);
    } catch (const std::exception& e) {
      p.error(prefix + "dx", e.what());
    }
  }
}

}  // namespace

ParseOutcome parse_config_text(std::string_view text, std::string origin) {
  Parser p(text, origin);
  ExperimentConfig cfg;
  cfg.origin = std::move(origin);

  cfg.name = p.text("name").value_or(cfg.name);
  if (auto mode = p.text("mode")) {
    if (*mode == "analytic")
      cfg.mode = RunMode::Analytic;
    else if (*mode == "montecarlo")
      cfg.mode = RunMode::MonteCarlo;
    else if (*mode == "both")
      cfg.mode = RunMode::Both;
    else
      p.error("mode", "expected analytic, montecarlo or both");
  }
  if (auto exp = p.text("experiment")) {
    static const std::map<std::string, ExperimentKind> kinds = {
        {"mz", ExperimentKind::Mz},
        {"first-order", ExperimentKind::FirstOrder},
        {"visibility-decay", ExperimentKind::VisibilityDecay},
        {"hbt", ExperimentKind::Hbt},
        {"hom", ExperimentKind::Hom},
        {"multi-source-second", ExperimentKind::MultiSourceSecond},
        {"subwavelength", ExperimentKind::Subwavelength},
        {"third-order", ExperimentKind::ThirdOrder},
        {"event-stream", ExperimentKind::EventStream},
        {"path-oracle-check", ExperimentKind::PathOracleCheck},
        {"degeneracy", ExperimentKind::Degeneracy},
    };
    auto it = kinds.find(*exp);
    if (it == kinds.end())
      p.error("experiment", "unknown experiment '" + *exp + "'");
    else
      cfg.experiment = it->second;
  }
  if (auto domain = p.text("domain")) {
    if (*domain == "temporal")
      cfg.domain = Domain::Temporal;
    else if (*domain == "spatial")
      cfg.domain = Domain::Spatial;
    else
      p.error("domain", "expected temporal or spatial");
  }

  cfg.order = static_cast<int>(p.integer("order", cfg.order));
  if (cfg.order < 1 || cfg.order > 4) p.error("order", "order must be between 1 and 4");
  cfg.grid_points = static_cast<int>(p.integer("grid.points", cfg.grid_points));
  if (cfg.grid_points < 2) p.error("grid.points", "need at least 2 grid points");
  cfg.grid_span = p.quantity("grid.span", cfg.grid_span,
                             cfg.domain == Domain::Temporal ? Dim::Time : Dim::Length);
  cfg.seed = static_cast<std::uint64_t>(p.integer("seed", static_cast<long>(cfg.seed)));
  cfg.samples = p.integer("samples", cfg.samples);
  if (cfg.samples < 1) p.error("samples", "samples must be >= 1");
  cfg.bins = static_cast<int>(p.integer("bins", cfg.bins));
  if (cfg.bins < 8) p.error("bins", "bins must be >= 8");
  cfg.window = p.quantity("window", cfg.window, Dim::Time);
  cfg.duration = p.quantity("duration", cfg.duration, Dim::Time);
  cfg.rate = p.quantity("rate", cfg.rate, Dim::FrequencyHz);
  cfg.n_detected = p.integer("n-detected", cfg.n_detected);
  cfg.n_simultaneous = p.integer("n-simultaneous", cfg.n_simultaneous);
  cfg.seeds_per_point = static_cast<int>(p.integer("seeds-per-point", cfg.seeds_per_point));
  {
    const auto counts = p.number_list("photon-counts", Dim::Plain);
    if (!counts.empty()) {
      cfg.photon_counts.clear();
      for (double c : counts) cfg.photon_counts.push_back(static_cast<long>(std::llround(c)));
    }
  }
  cfg.force_distinguishable = p.boolean("force-distinguishable", cfg.force_distinguishable);
  cfg.long_average = p.boolean("long-average", cfg.long_average);
  cfg.variant = p.text("variant").value_or(cfg.variant);
  if (cfg.variant != "standard" && cfg.variant != "paper")
    p.error("variant", "expected standard or paper");
  cfg.third_config = p.text("third-config").value_or(cfg.third_config);
  cfg.scan = p.text("scan").value_or(cfg.scan);
  if (cfg.scan != "fix-one" && cfg.scan != "same-direction" && cfg.scan != "opposite")
    p.error("scan", "expected fix-one, same-direction or opposite");
  cfg.phase_mode = p.text("phase-mode").value_or(cfg.phase_mode);
  if (cfg.phase_mode != "equal-fixed" && cfg.phase_mode != "random-relative")
    p.error("phase-mode", "expected equal-fixed or random-relative");
  cfg.d12 = p.quantity("d12", cfg.d12, Dim::Length);
  cfg.d23 = p.quantity("d23", cfg.d23, Dim::Length);
  cfg.d = p.quantity("d", cfg.d, Dim::Length);
  cfg.phases = p.number_list("phases", Dim::Plain);
  cfg.out_dir = p.text("out").value_or(cfg.out_dir);

  parse_sources(p, cfg);
  parse_detectors(p, cfg);

  const double L = p.quantity("geometry.L", 1.0, Dim::Length);
  const bool paraxial = p.boolean("geometry.paraxial", true);
  double wavelength = p.quantity("geometry.wavelength", 0.0, Dim::Length);
  if (wavelength <= 0.0 && !cfg.sources.empty()) wavelength = cfg.sources[0].wavelength();
  if (wavelength <= 0.0) wavelength = 632.8e-9;
  try {
    cfg.geometry = Geometry(L, paraxial, wavelength);
  } catch (const std::exception& e) {
    p.error("geometry.L", e.what());
  }

  p.finish();

  ParseOutcome outcome;
  outcome.errors = p.errors();
  std::sort(outcome.errors.begin(), outcome.errors.end(),
            [](const ParseError& a, const ParseError& b) { return a.line < b.line; });
  if (outcome.errors.empty()) outcome.config = std::move(cfg);
  return outcome;
}

ParseOutcome parse_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    ParseOutcome outcome;
    outcome.errors.push_back({0, path, "cannot open file"});
    return outcome;
  }
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str(), path);
}

namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace

std::string serialize_config(const ExperimentConfig& c) {
  std::ostringstream out;
  out << "name = " << c.name << "\n";
  out << "mode = " << to_string(c.mode) << "\n";
  out << "experiment = " << to_string(c.experiment) << "\n";
  out << "domain = " << (c.domain == Domain::Temporal ? "temporal" : "spatial") << "\n";
  out << "order = " << c.order << "\n";
  out << "grid.points = " << c.grid_points << "\n";
  out << "grid.span = " << fmt(c.grid_span) << "\n";
  out << "seed = " << c.seed << "\n";
  out << "samples = " << c.samples << "\n";
  out << "bins = " << c.bins << "\n";
  out << "window = " << fmt(c.window) << "\n";
  out << "duration = " << fmt(c.duration) << "\n";
  out << "rate = " << fmt(c.rate) << "\n";
  out << "n-detected = " << c.n_detected << "\n";
  out << "n-simultaneous = " << c.n_simultaneous << "\n";
  out << "seeds-per-point = " << c.seeds_per_point << "\n";
  out << "photon-counts = ";
  for (std::size_t i = 0; i < c.photon_counts.size(); ++i)
    out << (i ? ", " : "") << c.photon_counts[i];
  out << "\n";
  out << "force-distinguishable = " << (c.force_distinguishable ? "true" : "false") << "\n";
  out << "long-average = " << (c.long_average ? "true" : "false") << "\n";
  out << "variant = " << c.variant << "\n";
  if (!c.third_config.empty()) out << "third-config = " << c.third_config << "\n";
  out << "scan = " << c.scan << "\n";
  out << "phase-mode = " << c.phase_mode << "\n";
  out << "d12 = " << fmt(c.d12) << "\n";
  out << "d23 = " << fmt(c.d23) << "\n";
  out << "d = " << fmt(c.d) << "\n";
  if (!c.phases.empty()) {
    out << "phases = ";
    for (std::size_t i = 0; i < c.phases.size(); ++i) out << (i ? ", " : "") << fmt(c.phases[i]);
    out << "\n";
  }
  out << "out = " << c.out_dir << "\n";
  out << "geometry.L = " << fmt(c.geometry.L) << "\n";
  out << "geometry.paraxial = " << (c.geometry.paraxial ? "true" : "false") << "\n";
  out << "geometry.wavelength = " << fmt(c.geometry.wavelength) << "\n";

  for (std::size_t i = 0; i < c.sources.size(); ++i) {
    const auto& s = c.sources[i];
    const std::string prefix = "source." + std::to_string(i + 1) + ".";
    out << prefix << "kind = " << to_string(s.kind()) << "\n";
    out << prefix << "position = " << fmt(s.position()) << "\n";
    out << prefix << "extent = " << fmt(s.extent()) << "\n";
    out << prefix << "intensity = " << fmt(s.intensity_weight()) << "\n";
    out << prefix << "spectrum = " << to_string(s.spectrum().shape()) << "\n";
    out << prefix << "omega0 = " << fmt(s.spectrum().omega0()) << "\n";
    if (s.spectrum().shape() != SpectrumShape::Monochromatic)
      out << prefix << "bandwidth = " << fmt(s.spectrum().width()) << "\n";
    out << prefix << "statistics = "
        << (s.statistics() == Statistics::Boson ? "boson" : "fermion") << "\n";
    if (s.particle_mass() > 0.0) {
      out << prefix << "mass = " << fmt(s.particle_mass()) << "\n";
      out << prefix << "speed = " << fmt(s.particle_speed()) << "\n";
    }
    if (s.kind() == SourceKind::SuperbunchingCascade)
      out << prefix << "stages = " << s.cascade_stages() << "\n";
    if (s.kind() == SourceKind::SuperbunchingModulated && !s.gamma().empty()) {
      out << prefix << "gamma = ";
      for (std::size_t k = 0; k < s.gamma().tau.size(); ++k)
        out << (k ? ", " : "") << fmt(s.gamma().tau[k]) << ":" << fmt(s.gamma().value[k]);
      out << "\n";
    }
  }
  for (std::size_t i = 0; i < c.detectors.size(); ++i) {
    const std::string prefix = "detector." + std::to_string(i + 1) + ".";
    out << prefix << "position = " << fmt(c.detectors[i].position) << "\n";
    out << prefix << "dx = " << fmt(c.detectors[i].position_uncertainty) << "\n";
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Running
// ---------------------------------------------------------------------------

namespace {

struct McCurve {
  std::vector<double> mean, se;
};

// Two-detector ensemble scan over a difference-coordinate grid; coordinates
// are split symmetrically except for explicit scan modes.
McCurve engine_curve(const ExperimentConfig& cfg, const CoincidenceSetup& setup,
                     const WaySet& ways, std::span<const double> grid, long samples,
                     int threads, bool opposite_scan = false, bool fix_one_scan = false) {
  std::vector<std::vector<double>> coords;
  coords.reserve(grid.size());
  for (double g : grid) {
    if (fix_one_scan)
      coords.push_back({g, 0.0});
    else if (opposite_scan)
      coords.push_back({g, -g});
    else
      coords.push_back({g / 2.0, -g / 2.0});
  }
  const auto estimates = ensemble_scan(ways, setup, coords, samples, cfg.seed, threads);
  McCurve curve;
  curve.mean.reserve(grid.size());
  curve.se.reserve(grid.size());
  for (const auto& est : estimates) {
    curve.mean.push_back(est.value);
    curve.se.push_back(est.std_error);
  }
  return curve;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw NumericError("cannot write " + path.string());
  out << content;
}

std::string pattern_csv_text(const PatternSamples& pattern, const McCurve* mc,
                             const std::string& axis_name, const std::string& axis2_name) {
  std::ostringstream out;
  if (pattern.grid2.empty()) {
    out << axis_name << ",analytic";
    if (mc) out << ",mc_mean,mc_stderr";
    out << "\n";
    for (std::size_t i = 0; i < pattern.grid.size(); ++i) {
      out << fmt12(pattern.grid[i]) << "," << fmt12(pattern.values[i]);
      if (mc) out << "," << fmt12(mc->mean[i]) << "," << fmt12(mc->se[i]);
      out << "\n";
    }
  } else {
    out << axis_name << "," << axis2_name << ",analytic\n";
    for (std::size_t i = 0; i < pattern.grid.size(); ++i)
      for (std::size_t j = 0; j < pattern.grid2.size(); ++j)
        out << fmt12(pattern.grid[i]) << "," << fmt12(pattern.grid2[j]) << ","
            << fmt12(pattern.at(i, j)) << "\n";
  }
  return out.str();
}

double max_dev_sigma(const PatternSamples& analytic, const McCurve& mc) {
  double worst = 0.0;
  for (std::size_t i = 0; i < analytic.values.size(); ++i) {
    const double se = std::max(mc.se[i], 1e-12);
    worst = std::max(worst, std::abs(mc.mean[i] - analytic.values[i]) / se);
  }
  return worst;
}

double value_at_zero(const PatternSamples& p) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < p.grid.size(); ++i)
    if (std::abs(p.grid[i]) < std::abs(p.grid[best])) best = i;
  return p.values[best];
}

CoincidenceSetup hom_setup(const ExperimentConfig& cfg) {
  CoincidenceSetup setup;
  setup.sources = cfg.sources;
  setup.domain = cfg.domain;
  setup.geometry = cfg.geometry;
  int ports = 0;
  for (const auto& s : cfg.sources) ports += s.emission_arity();
  if (ports != 2) throw UsageError("hom: needs exactly two input ports");
  setup.reflections = {{0, 1}, {1, 0}};
  return setup;
}

struct ReportBuilder {
  std::ostringstream out;
  std::map<std::string, double>* metrics;

  void line(const std::string& text) { out << text << "\n"; }
  void metric(const std::string& key, double value) {
    (*metrics)[key] = value;
    out << key << " = " << fmt12(value) << "\n";
  }
};

}  // namespace

std::string events_to_csv(const std::vector<DetectionEvent>& events) {
  std::ostringstream out;
  out << "detector_id,timestamp_s\n";
  for (const auto& e : events) out << e.detector << "," << fmt12(e.timestamp) << "\n";
  return out.str();
}

std::vector<DetectionEvent> events_from_csv(std::string_view text) {
  std::vector<DetectionEvent> events;
  std::size_t pos = 0;
  bool header = true;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string line = trim(text.substr(pos, end - pos));
    pos = end + 1;
    if (line.empty()) continue;
    if (header) {
      header = false;
      continue;
    }
    const std::size_t comma = line.find(',');
    if (comma == std::string::npos) throw UsageError("event csv: malformed line '" + line + "'");
    events.push_back({std::stoi(line.substr(0, comma)), std::stod(line.substr(comma + 1))});
  }
  return events;
}

namespace {

// --- per-experiment runners -------------------------------------------------

void run_hbt(const ExperimentConfig& cfg, long samples, int threads, ReportBuilder& report,
             RunResult& result) {
  if (cfg.sources.size() != 1) throw UsageError("hbt: exactly one source");
  const auto& src = cfg.sources[0];

  double span = cfg.grid_span;
  HbtParams params;
  params.stages = src.cascade_stages();
  params.gamma = src.gamma();
  if (cfg.domain == Domain::Temporal) {
    params.bandwidth = src.spectrum().width();
    if (span <= 0.0)
      span = params.bandwidth > 0.0 ? 10.0 * two_pi / params.bandwidth : 1e-5;
  } else {
    params.source_size = src.extent();
    params.wavelength = cfg.geometry.wavelength;
    params.L = cfg.geometry.L;
    if (span <= 0.0)
      span = params.source_size > 0.0
                 ? 10.0 * cfg.geometry.wavelength * cfg.geometry.L / params.source_size
                 : 1e-3;
  }
  const auto grid = symmetric_grid(span, cfg.grid_points);
  result.analytic = hbt_second_order(src.kind(), src.statistics(), cfg.domain, params, grid);
  const std::vector<double> zero = {0.0};
  report.metric("g2_zero_analytic",
                hbt_second_order(src.kind(), src.statistics(), cfg.domain, params, zero)
                    .values[0]);

  if (cfg.mode != RunMode::Analytic &&
      src.kind() != SourceKind::SuperbunchingModulated) {
    CoincidenceSetup setup;
    setup.sources = cfg.sources;
    setup.domain = cfg.domain;
    setup.geometry = cfg.geometry;
    setup.force_distinguishable = cfg.force_distinguishable;
    const auto ways = enumerate_ways(cfg.sources, 2);
    const auto mc = engine_curve(cfg, setup, ways, grid, samples, threads);
    result.mc_mean = mc.mean;
    result.mc_stderr = mc.se;
    const auto mc_zero = ensemble_probability(ways, setup, std::vector<double>{0.0, 0.0},
                                              samples, cfg.seed, threads);
    report.metric("g2_zero_mc", mc_zero.value);
    report.metric("mc_max_dev_sigma", max_dev_sigma(result.analytic, mc));
  }
}

void run_hom(const ExperimentConfig& cfg, long samples, int threads, ReportBuilder& report,
             RunResult& result) {
  HomPair pair;
  HomParams params;
  params.wavelength = cfg.geometry.wavelength;
  params.L = cfg.geometry.L;
  double detuning = 0.0;
  if (cfg.sources.size() == 1 && cfg.sources[0].kind() == SourceKind::EntangledPairEmitter) {
    pair = HomPair::EntangledPair;
    params.bandwidth = cfg.sources[0].spectrum().width();
    params.source_size = cfg.sources[0].extent();
  } else if (cfg.sources.size() == 2) {
    const auto k0 = cfg.sources[0].kind();
    const auto k1 = cfg.sources[1].kind();
    if (k0 == SourceKind::Laser && k1 == SourceKind::Laser) {
      pair = HomPair::TwoLasers;
      detuning = std::abs(cfg.sources[0].spectrum().omega0() - cfg.sources[1].spectrum().omega0());
      params.bandwidth = detuning;
    } else if ((k0 == SourceKind::Laser && k1 == SourceKind::Thermal) ||
               (k0 == SourceKind::Thermal && k1 == SourceKind::Laser)) {
      pair = HomPair::LaserThermal;
      const auto& thermal = k0 == SourceKind::Thermal ? cfg.sources[0] : cfg.sources[1];
      params.source_size = thermal.extent();
      params.separation = std::abs(cfg.sources[0].position() - cfg.sources[1].position());
    } else if (k0 == SourceKind::SinglePhoton && k1 == SourceKind::SinglePhoton) {
      pair = cfg.sources[0].statistics() == Statistics::Fermion ? HomPair::FermionPair
                                                                : HomPair::TwoSinglePhoton;
      params.bandwidth = cfg.sources[0].spectrum().width();
    } else if (k0 == SourceKind::Bec && k1 == SourceKind::Bec) {
      pair = HomPair::TwoBec;
      params.bandwidth = cfg.sources[0].spectrum().width();
    } else {
      throw UsageError("hom: unsupported source pair");
    }
  } else {
    throw UsageError("hom: needs two sources or one entangled-pair source");
  }

  double span = cfg.grid_span;
  if (span <= 0.0) {
    if (pair == HomPair::TwoLasers)
      span = detuning > 0.0 ? 2.5 * two_pi / detuning : 1e-6;
    else if (cfg.domain == Domain::Temporal)
      span = params.bandwidth > 0.0 ? 10.0 * two_pi / params.bandwidth : 1e-5;
    else
      span = params.source_size > 0.0
                 ? 10.0 * params.wavelength * params.L / params.source_size
                 : 1e-3;
  }
  const auto grid = symmetric_grid(span, cfg.grid_points);
  result.analytic = hom_second_order(pair, cfg.domain, params, grid);
  const std::vector<double> zero = {0.0};
  report.metric("g2_zero_analytic",
                hom_second_order(pair, cfg.domain, params, zero).values[0]);
  report.metric("g2_min_analytic",
                std::min(*std::min_element(result.analytic.values.begin(),
                                           result.analytic.values.end()),
                         hom_second_order(pair, cfg.domain, params, zero).values[0]));

  if (cfg.mode != RunMode::Analytic) {
    CoincidenceSetup setup = hom_setup(cfg);
    const auto ways = enumerate_ways(cfg.sources, 2);
    const auto mc = engine_curve(cfg, setup, ways, grid, samples, threads);
    result.mc_mean = mc.mean;
    result.mc_stderr = mc.se;
    const auto mc_zero = ensemble_probability(ways, setup, std::vector<double>{0.0, 0.0},
                                              samples, cfg.seed, threads);
    report.metric("g2_zero_mc", mc_zero.value);
    report.metric("mc_max_dev_sigma", max_dev_sigma(result.analytic, mc));
    if (pair == HomPair::TwoLasers && detuning > 0.0) {
      const auto fit = fit_cosine(grid, mc.mean, detuning);
      if (fit.ok) report.metric("visibility_fit_mc", fit.visibility);
    }
  }
}

void run_first_order(const ExperimentConfig& cfg, long /*samples*/, int /*threads*/,
                     ReportBuilder& report, RunResult& result) {
  MultiBeamOptions options;
  options.phases = cfg.phases;
  options.n_detected = cfg.n_detected;
  options.n_simultaneous = cfg.n_simultaneous;
  options.long_average = cfg.long_average;

  double span = cfg.grid_span;
  if (span <= 0.0) {
    double d_min = 0.0;
    for (std::size_t i = 0; i < cfg.sources.size(); ++i)
      for (std::size_t j = i + 1; j < cfg.sources.size(); ++j) {
        const double d = std::abs(cfg.sources[i].position() - cfg.sources[j].position());
        if (d > 0.0) d_min = d_min == 0.0 ? d : std::min(d_min, d);
      }
    if (!(d_min > 0.0)) throw UsageError("first order: sources must be separated");
    span = 10.0 * cfg.geometry.wavelength * cfg.geometry.L / d_min;
  }
  const auto grid = symmetric_grid(span, cfg.grid_points);
  auto mb = multi_beam_first_order(cfg.sources, cfg.geometry, grid, options);
  result.analytic = std::move(mb.pattern);
  report.metric("visibility_analytic", mb.visibility);

  if (cfg.mode != RunMode::Analytic && cfg.sources.size() == 2) {
    SimulationConfig sim;
    sim.sources = cfg.sources;
    sim.detectors = cfg.detectors;
    sim.geometry = cfg.geometry;
    sim.order = 1;
    sim.n_photons = cfg.n_detected;
    sim.duration = cfg.duration;
    sim.seed = cfg.seed;
    sim.bins = cfg.bins;
    const auto fo = simulate_first_order(sim, grid);
    report.metric("visibility_fit_mc", fo.visibility_fit);
    report.metric("visibility_extrema_mc", fo.visibility_extrema);
    report.metric("visibility_hist_fit_mc", fo.visibility_hist_fit);
    report.metric("fit_ok", fo.fit_ok ? 1.0 : 0.0);
    // Histogram overlay, rebinned onto the analytic grid size where possible.
    result.mc_mean.assign(grid.size(), 0.0);
    result.mc_stderr.assign(grid.size(), 0.0);
    const double total =
        std::max(1.0, static_cast<double>(cfg.n_detected) / fo.histogram.grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
      // nearest histogram bin, normalized to mean 1
      std::size_t bin = 0;
      double best = 1e300;
      for (std::size_t b = 0; b < fo.histogram.grid.size(); ++b) {
        const double dist = std::abs(fo.histogram.grid[b] - grid[i]);
        if (dist < best) {
          best = dist;
          bin = b;
        }
      }
      result.mc_mean[i] = fo.histogram.values[bin] / total;
      result.mc_stderr[i] = std::sqrt(std::max(1.0, fo.histogram.values[bin])) / total;
    }
  }
}

void run_visibility_decay(const ExperimentConfig& cfg, long /*samples*/, int /*threads*/,
                          ReportBuilder& report, RunResult& result) {
  if (cfg.sources.size() != 2)
    throw UsageError("visibility decay: exactly two sources");
  const double d = std::abs(cfg.sources[0].position() - cfg.sources[1].position());
  if (!(d > 0.0)) throw UsageError("visibility decay: sources must be separated");
  const double period = cfg.geometry.wavelength * cfg.geometry.L / d;
  const auto grid = symmetric_grid(3.0 * period, 256);

  result.analytic.axis = PatternAxis::Position;
  result.analytic.normalization = Normalization::Raw;
  result.analytic.grid.clear();
  result.analytic.values.clear();

  std::vector<double> log_n, log_v;
  for (long n : cfg.photon_counts) {
    std::vector<double> vs;
    for (int s = 0; s < cfg.seeds_per_point; ++s) {
      SimulationConfig sim;
      sim.sources = cfg.sources;
      sim.geometry = cfg.geometry;
      sim.order = 1;
      sim.n_photons = n;
      sim.duration = cfg.duration;
      sim.seed = cfg.seed + static_cast<std::uint64_t>(s) * 7919u;
      sim.bins = cfg.bins;
      vs.push_back(simulate_first_order(sim, grid).visibility_fit);
    }
    std::sort(vs.begin(), vs.end());
    const double median = vs[vs.size() / 2];
    result.analytic.grid.push_back(static_cast<double>(n));
    result.analytic.values.push_back(median);
    report.metric("median_v_" + std::to_string(n), median);
    log_n.push_back(std::log10(static_cast<double>(n)));
    log_v.push_back(std::log10(std::max(median, 1e-12)));
  }
  // Least-squares slope of log V vs log N.
  const std::size_t m = log_n.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < m; ++i) {
    sx += log_n[i];
    sy += log_v[i];
    sxx += log_n[i] * log_n[i];
    sxy += log_n[i] * log_v[i];
  }
  const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  report.metric("loglog_slope", slope);
}

void run_multi_source_second(const ExperimentConfig& cfg, long samples, int threads,
                             ReportBuilder& report, RunResult& result) {
  if (cfg.sources.size() != 3)
    throw UsageError("multi-source second order: exactly three sources");
  std::vector<double> pos;
  for (const auto& s : cfg.sources) pos.push_back(s.position());
  std::sort(pos.rbegin(), pos.rend());
  const double d12 = pos[0] - pos[1];
  const double d23 = pos[1] - pos[2];
  double span = cfg.grid_span;
  if (span <= 0.0) span = 3.0 * cfg.geometry.wavelength * cfg.geometry.L / std::min(d12, d23);
  const auto grid = symmetric_grid(span, cfg.grid_points);
  result.analytic =
      multi_source_second_order(cfg.sources[0].kind(), d12, d23, cfg.geometry, grid);
  const double baseline = cfg.sources[0].kind() == SourceKind::SinglePhoton ? 3.0 : 4.5;
  report.metric("baseline_analytic", baseline);
  report.metric("p2_zero_analytic", value_at_zero(result.analytic));

  if (cfg.mode != RunMode::Analytic) {
    CoincidenceSetup setup;
    setup.sources = cfg.sources;
    setup.domain = Domain::Spatial;
    setup.geometry = cfg.geometry;
    const auto ways = enumerate_ways(cfg.sources, 2);
    auto mc = engine_curve(cfg, setup, ways, grid, samples, threads);
    // The engine normalizes to baseline 1; rescale to the printed form.
    for (auto& v : mc.mean) v *= baseline;
    for (auto& v : mc.se) v *= baseline;
    result.mc_mean = mc.mean;
    result.mc_stderr = mc.se;
    report.metric("mc_max_dev_sigma", max_dev_sigma(result.analytic, mc));
  }
}

void run_subwavelength(const ExperimentConfig& cfg, long samples, int threads,
                       ReportBuilder& report, RunResult& result) {
  if (cfg.sources.size() != 2) throw UsageError("subwavelength: exactly two sources");
  double d = cfg.d;
  if (d <= 0.0) d = std::abs(cfg.sources[0].position() - cfg.sources[1].position());
  if (!(d > 0.0)) throw UsageError("subwavelength: source separation must be > 0");

  const SubwavelengthScan scan = cfg.scan == "fix-one" ? SubwavelengthScan::FixOne
                                 : cfg.scan == "same-direction"
                                     ? SubwavelengthScan::SameDirection
                                     : SubwavelengthScan::OppositeDirections;
  const SubwavelengthPhase phase_mode = cfg.phase_mode == "equal-fixed"
                                            ? SubwavelengthPhase::EqualFixed
                                            : SubwavelengthPhase::RandomRelative;
  const auto decomposition = subwavelength_decomposition(scan, phase_mode, d, cfg.geometry);
  if (decomposition.effective_period)
    report.metric("effective_period", *decomposition.effective_period);
  report.metric("visibility_analytic", decomposition.visibility);

  const double base_period = cfg.geometry.wavelength * cfg.geometry.L / d;
  double span = cfg.grid_span;
  if (span <= 0.0) span = 2.0 * base_period;
  const auto grid = symmetric_grid(span, cfg.grid_points);

  result.analytic.axis = PatternAxis::Position;
  result.analytic.normalization = Normalization::Raw;
  result.analytic.grid.assign(grid.begin(), grid.end());
  result.analytic.values.clear();
  for (double x : grid) {
    double v = 0.0;
    for (const auto& term : decomposition.terms)
      v += term.kind == SubwavelengthTerm::Kind::Constant
               ? term.coefficient
               : term.coefficient * std::cos(term.scan_frequency * x);
    result.analytic.values.push_back(v);
  }

  if (cfg.mode != RunMode::Analytic) {
    CoincidenceSetup setup;
    setup.sources = cfg.sources;
    setup.domain = Domain::Spatial;
    setup.geometry = cfg.geometry;
    if (phase_mode == SubwavelengthPhase::EqualFixed) setup.phase_lock_groups = {{0, 1}};
    const auto ways = enumerate_ways(cfg.sources, 2);
    const auto mc =
        engine_curve(cfg, setup, ways, grid, samples, threads,
                     scan == SubwavelengthScan::OppositeDirections,
                     scan == SubwavelengthScan::FixOne);
    result.mc_mean = mc.mean;
    result.mc_stderr = mc.se;
    if (decomposition.effective_period) {
      const auto fit = fit_cosine(grid, mc.mean, two_pi / *decomposition.effective_period);
      if (fit.ok) report.metric("visibility_fit_mc", fit.visibility);
    }
  }
}

void run_third_order(const ExperimentConfig& cfg, long samples, int threads,
                     ReportBuilder& report, RunResult& result) {
  ThirdOrderParams params;
  params.wavelength = cfg.geometry.wavelength;
  params.L = cfg.geometry.L;
  params.d12 = cfg.d12;
  params.d23 = cfg.d23;
  params.d = cfg.d;
  if (!cfg.sources.empty()) {
    params.bandwidth = cfg.sources[0].spectrum().width();
    params.source_size = cfg.sources[0].extent();
    params.intensity1 = cfg.sources[0].intensity_weight();
    if (cfg.sources.size() > 1) params.intensity2 = cfg.sources[1].intensity_weight();
  }

  ThirdOrderConfig config;
  if (cfg.third_config == "thermal-temporal")
    config = ThirdOrderConfig::ThermalHbt3Temporal;
  else if (cfg.third_config == "thermal-spatial")
    config = ThirdOrderConfig::ThermalHbt3Spatial;
  else if (cfg.third_config == "fermion")
    config = ThirdOrderConfig::FermionHbt3;
  else if (cfg.third_config == "single-photon-plus-laser")
    config = ThirdOrderConfig::SinglePhotonPlusLaser;
  else if (cfg.third_config == "three-single-photon-slice")
    config = ThirdOrderConfig::ThreeSinglePhotonSlice;
  else
    throw UsageError("third order: unknown third-config '" + cfg.third_config + "'");

  double span = cfg.grid_span;
  const int n2d = std::min(cfg.grid_points, 101);
  switch (config) {
    case ThirdOrderConfig::ThermalHbt3Temporal:
    case ThirdOrderConfig::FermionHbt3: {
      if (span <= 0.0)
        span = params.bandwidth > 0.0 ? 10.0 * two_pi / params.bandwidth : 1e-5;
      const auto grid = symmetric_grid(span, n2d);
      result.analytic = third_order_pattern(config, params, grid, grid);
      break;
    }
    case ThirdOrderConfig::ThermalHbt3Spatial: {
      if (span <= 0.0)
        span = 10.0 * params.wavelength * params.L / std::max(params.source_size, 1e-12);
      const auto grid = symmetric_grid(span, n2d);
      result.analytic = third_order_pattern(config, params, grid, grid);
      break;
    }
    case ThirdOrderConfig::SinglePhotonPlusLaser: {
      if (span <= 0.0) span = 2.0 * params.wavelength * params.L / std::max(params.d, 1e-12);
      const auto grid = symmetric_grid(span, cfg.grid_points);
      result.analytic = third_order_pattern(config, params, grid, {});
      break;
    }
    default: {
      if (span <= 0.0) span = 2.0 * params.wavelength * params.L / std::max(params.d, 1e-12);
      const auto grid = symmetric_grid(span, n2d);
      result.analytic = third_order_pattern(config, params, grid, grid);
      break;
    }
  }
  report.metric("p3_zero_analytic", result.analytic.grid2.empty()
                                        ? value_at_zero(result.analytic)
                                        : result.analytic.at(result.analytic.grid.size() / 2,
                                                             result.analytic.grid2.size() / 2));

  if (cfg.mode != RunMode::Analytic && !cfg.sources.empty() &&
      (config == ThirdOrderConfig::ThermalHbt3Temporal ||
       config == ThirdOrderConfig::FermionHbt3)) {
    CoincidenceSetup setup;
    setup.sources = cfg.sources;
    setup.domain = Domain::Temporal;
    setup.geometry = cfg.geometry;
    const auto ways = enumerate_ways(cfg.sources, 3);
    const std::vector<double> zero = {0.0, 0.0, 0.0};
    const auto est = ensemble_probability(ways, setup, zero, samples, cfg.seed, threads);
    report.metric("g3_zero_mc", est.value);
    report.metric("g3_zero_mc_stderr", est.std_error);
    // Burt-style context: the same engine with a phase-coherent condensate
    // gives the flat reference.
    if (cfg.sources[0].kind() == SourceKind::ColdAtomCloud &&
        cfg.sources[0].statistics() == Statistics::Boson) {
      const auto bec = SourceSpec::bec(cfg.sources[0].spectrum(), cfg.sources[0].particle_mass(),
                                       cfg.sources[0].particle_speed());
      CoincidenceSetup bec_setup;
      bec_setup.sources = {bec};
      bec_setup.domain = Domain::Temporal;
      bec_setup.geometry = cfg.geometry;
      const auto bec_ways = enumerate_ways(bec_setup.sources, 3);
      const auto bec_est = ensemble_probability(bec_ways, bec_setup, zero, 1000, cfg.seed, 1);
      report.metric("g3_zero_bec", bec_est.value);
      if (bec_est.value > 0.0)
        report.metric("burt_ratio", (*report.metrics)["p3_zero_analytic"] / bec_est.value);
    }
  }
}

void run_event_stream(const ExperimentConfig& cfg, long /*samples*/, int /*threads*/,
                      ReportBuilder& report, RunResult& result,
                      const std::filesystem::path& out_dir) {
  if (cfg.sources.size() != 1) throw UsageError("event stream: exactly one source");
  EventConfig ec;
  ec.source = cfg.sources[0];
  ec.n_detectors = cfg.order;
  ec.mean_rate = cfg.rate > 0.0 ? cfg.rate : 1e5;
  ec.duration = cfg.duration > 0.0 ? cfg.duration : 1.0;
  ec.seed = cfg.seed;
  const auto streams = generate_events(ec);
  for (std::size_t d = 0; d < streams.streams.size(); ++d)
    write_file(out_dir / ("events_d" + std::to_string(d) + ".csv"),
               events_to_csv(streams.streams[d]));
  report.metric("coherence_time", streams.coherence_time);
  report.metric("low_rate_warning", streams.low_rate_warning ? 1.0 : 0.0);

  const double window = cfg.window > 0.0 ? cfg.window : streams.coherence_time / 10.0;
  const auto corr =
      correlate(streams.streams, cfg.order, window, cfg.bins, streams.coherence_time);
  result.analytic.axis = PatternAxis::TimeDifference;
  result.analytic.normalization = Normalization::UncorrelatedBaselineOne;
  result.analytic.grid.clear();
  result.analytic.values.clear();
  for (int b = 0; b < cfg.bins; ++b) {
    result.analytic.grid.push_back(
        0.5 * (corr.tau_edges[static_cast<std::size_t>(b)] +
               corr.tau_edges[static_cast<std::size_t>(b) + 1]));
    result.analytic.values.push_back(corr.g[static_cast<std::size_t>(b)]);
  }
  const double g0 = corr.g[corr.g.size() / 2];
  report.metric("g_zero", g0);
  for (std::size_t d = 0; d < corr.singles.size(); ++d)
    report.metric("singles_" + std::to_string(d), static_cast<double>(corr.singles[d]));
  report.metric("window_warning", corr.window_warning ? 1.0 : 0.0);
}

void run_path_oracle_check(const ExperimentConfig& cfg, long samples, int /*threads*/,
                           ReportBuilder& report, RunResult& result) {
  const long n_matrices = std::max<long>(1, samples);
  double worst_perm = 0.0, worst_det = 0.0;
  const auto spectrum = Spectrum::rectangular(1e15, 1e13);
  for (int n = 2; n <= 4; ++n) {
    const std::vector<SourceSpec> boson = {SourceSpec::thermal(spectrum)};
    const std::vector<SourceSpec> fermion = {
        SourceSpec::cold_atoms(spectrum, 1e-26, 100.0, Statistics::Fermion)};
    const auto boson_ways = enumerate_ways(boson, n);
    const auto fermion_ways = enumerate_ways(fermion, n);
    for (long m = 0; m < n_matrices; ++m) {
      AmplitudeMatrix matrix(static_cast<std::size_t>(n),
                             std::vector<Amplitude>(static_cast<std::size_t>(n)));
      for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) {
          const auto idx = static_cast<std::uint64_t>((m * 16 + r * 4 + c) * 2);
          matrix[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] =
              Amplitude(2.0 * rng::u01(cfg.seed, rng::kModeStream, idx,
                                       static_cast<std::uint64_t>(n)) -
                            1.0,
                        2.0 * rng::u01(cfg.seed, rng::kModeStream, idx + 1,
                                       static_cast<std::uint64_t>(n)) -
                            1.0);
        }
      auto leg = [&](const PathLeg& l) {
        return matrix[static_cast<std::size_t>(l.emission)][static_cast<std::size_t>(l.detector)];
      };
      const std::vector<double> no_phases(boson_ways.symbols.size(), 0.0);
      const double norm = std::sqrt(static_cast<double>(boson_ways.ways[0].paths.size()));
      const Amplitude path_perm =
          way_amplitude(boson_ways.ways[0], no_phases, 0.0, leg) * norm;
      const std::vector<double> no_phases_f(fermion_ways.symbols.size(), 0.0);
      const Amplitude path_det =
          way_amplitude(fermion_ways.ways[0], no_phases_f, 0.0, leg) * norm;
      worst_perm = std::max(worst_perm, std::abs(path_perm - matrix_permanent(matrix)));
      worst_det = std::max(worst_det, std::abs(path_det - matrix_determinant(matrix)));
    }
  }
  report.metric("max_dev_permanent", worst_perm);
  report.metric("max_dev_determinant", worst_det);
  result.analytic.axis = PatternAxis::TimeDifference;
  result.analytic.grid = {2, 3, 4};
  result.analytic.values = {worst_perm, worst_det, 0.0};
}

void run_degeneracy(const ExperimentConfig& /*cfg*/, long /*samples*/, int /*threads*/,
                    ReportBuilder& report, RunResult& result) {
  const double nu_sun = constants.c / 532e-9;
  const double delta_sun = degeneracy_factor_blackbody(nu_sun, 5500.0);
  const double delta_laser = degeneracy_factor_laser(1e-3, 4.74e14, 1.06e6);
  report.metric("delta_blackbody_532nm_5500K", delta_sun);
  report.metric("delta_laser_1mW_HeNe", delta_laser);
  report.metric("coherence_time_1MHz", coherence_time(1e6));
  result.analytic.axis = PatternAxis::TimeDifference;
  result.analytic.grid = {0, 1, 2};
  result.analytic.values = {delta_sun, delta_laser, coherence_time(1e6)};
}

void run_mz(const ExperimentConfig& cfg, ReportBuilder& report, RunResult& result) {
  if (cfg.sources.size() != 1) throw UsageError("mz: exactly one source");
  const auto& spectrum = cfg.sources[0].spectrum();
  double span = cfg.grid_span;
  if (span <= 0.0)
    span = spectrum.width() > 0.0 ? 10.0 / spectrum.width()
                                  : 10.0 * two_pi / spectrum.omega0();
  const auto grid = symmetric_grid(span, cfg.grid_points);
  result.analytic = mz_first_order(spectrum, grid,
                                   cfg.variant == "paper" ? MzGaussianVariant::PaperVerbatim
                                                          : MzGaussianVariant::StandardEnvelope);
  report.metric("peak", *std::max_element(result.analytic.values.begin(),
                                          result.analytic.values.end()));
  report.metric("visibility_analytic", fringe_visibility(result.analytic));
}

}  // namespace

RunResult run_experiment(const ExperimentConfig& config, const RunOptions& options) {
  RunResult result;
  ExperimentConfig cfg = config;
  if (options.seed) cfg.seed = *options.seed;
  if (options.samples) cfg.samples = *options.samples;
  if (options.out_dir) cfg.out_dir = *options.out_dir;
  if (options.mode) cfg.mode = *options.mode;

  const auto started = std::chrono::steady_clock::now();
  std::filesystem::path out_dir = cfg.out_dir;
  ReportBuilder report;
  report.metrics = &result.metrics;

  try {
    std::filesystem::create_directories(out_dir);
    report.line("experiment: " + cfg.name);
    report.line("kind: " + to_string(cfg.experiment));
    const long samples = cfg.samples;
    const int threads = options.threads;

    switch (cfg.experiment) {
      case ExperimentKind::Mz: run_mz(cfg, report, result); break;
      case ExperimentKind::FirstOrder:
        run_first_order(cfg, samples, threads, report, result);
        break;
      case ExperimentKind::VisibilityDecay:
        run_visibility_decay(cfg, samples, threads, report, result);
        break;
      case ExperimentKind::Hbt: run_hbt(cfg, samples, threads, report, result); break;
      case ExperimentKind::Hom: run_hom(cfg, samples, threads, report, result); break;
      case ExperimentKind::MultiSourceSecond:
        run_multi_source_second(cfg, samples, threads, report, result);
        break;
      case ExperimentKind::Subwavelength:
        run_subwavelength(cfg, samples, threads, report, result);
        break;
      case ExperimentKind::ThirdOrder:
        run_third_order(cfg, samples, threads, report, result);
        break;
      case ExperimentKind::EventStream:
        run_event_stream(cfg, samples, threads, report, result, out_dir);
        break;
      case ExperimentKind::PathOracleCheck:
        run_path_oracle_check(cfg, samples, threads, report, result);
        break;
      case ExperimentKind::Degeneracy:
        run_degeneracy(cfg, samples, threads, report, result);
        break;
    }
  } catch (const NumericError& e) {
    result.exit_code = 3;
    result.error = e.what();
    return result;
  } catch (const std::exception& e) {
    result.exit_code = 2;
    result.error = e.what();
    return result;
  }

  const auto elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                              std::chrono::steady_clock::now() - started)
                              .count();

  try {
    const bool has_mc = !result.mc_mean.empty();
    McCurve mc{result.mc_mean, result.mc_stderr};
    std::string axis_name = "x";
    std::string axis2_name = "x2";
    switch (result.analytic.axis) {
      case PatternAxis::TimeDifference: axis_name = "tau_s"; break;
      case PatternAxis::Position: axis_name = "x_m"; break;
      case PatternAxis::PositionPair: axis_name = "x1_m"; axis2_name = "x2_m"; break;
      case PatternAxis::TimePair: axis_name = "t1_s"; axis2_name = "t2_s"; break;
    }
    result.pattern_csv = out_dir / "pattern.csv";
    write_file(result.pattern_csv,
               pattern_csv_text(result.analytic, has_mc ? &mc : nullptr, axis_name, axis2_name));

    result.report_txt = out_dir / "report.txt";
    write_file(result.report_txt, report.out.str());

    nlohmann::json manifest;
    manifest["name"] = cfg.name;
    manifest["experiment"] = to_string(cfg.experiment);
    manifest["mode"] = to_string(cfg.mode);
    manifest["seed"] = cfg.seed;
    manifest["samples"] = cfg.samples;
    manifest["threads"] = options.threads;
    manifest["version"] = "0.1.0";
    manifest["elapsed_ms"] = elapsed_ms;
    manifest["config"] = serialize_config(cfg);
    result.manifest_json = out_dir / "run_manifest.json";
    write_file(result.manifest_json, manifest.dump(2) + "\n");
  } catch (const std::exception& e) {
    result.exit_code = 3;
    result.error = e.what();
  }
  return result;
}

// ---------------------------------------------------------------------------
// Figure reproduction
// ---------------------------------------------------------------------------

const std::vector<std::string>& figure_ids() {
  static const std::vector<std::string> ids = {"fig4",  "fig6",  "fig9",   "fig12", "fig19",
                                               "fig23", "fig29a", "fig32", "fig35"};
  return ids;
}

namespace {

std::string curves_csv(const std::string& axis, const std::vector<double>& grid,
                       const std::vector<std::pair<std::string, std::vector<double>>>& curves) {
  std::ostringstream out;
  out << axis;
  for (const auto& [name, _] : curves) out << "," << name;
  out << "\n";
  for (std::size_t i = 0; i < grid.size(); ++i) {
    out << fmt12(grid[i]);
    for (const auto& [_, values] : curves) out << "," << fmt12(values[i]);
    out << "\n";
  }
  return out.str();
}

std::string grid2d_csv(const std::string& axis1, const std::string& axis2,
                       const PatternSamples& p) {
  std::ostringstream out;
  out << axis1 << "," << axis2 << ",value\n";
  for (std::size_t i = 0; i < p.grid.size(); ++i)
    for (std::size_t j = 0; j < p.grid2.size(); ++j)
      out << fmt12(p.grid[i]) << "," << fmt12(p.grid2[j]) << "," << fmt12(p.at(i, j)) << "\n";
  return out.str();
}

}  // namespace

FigureResult reproduce_figure(const std::string& figure_id, const RunOptions& options) {
  FigureResult result;
  std::filesystem::path out_dir = options.out_dir.value_or("runs");
  const std::uint64_t seed = options.seed.value_or(1);

  try {
    std::filesystem::create_directories(out_dir);
    const std::filesystem::path csv = out_dir / (figure_id + ".csv");

    if (figure_id == "fig4") {
      // First-order MZ pattern of a Gaussian single-photon wave packet.
      const auto spectrum = Spectrum::gaussian(2.355e15, 2e13);
      const auto grid = symmetric_grid(10.0 / spectrum.width(), 1025);
      const auto standard = mz_first_order(spectrum, grid, MzGaussianVariant::StandardEnvelope);
      const auto paper = mz_first_order(spectrum, grid, MzGaussianVariant::PaperVerbatim);
      write_file(csv, curves_csv("tau_s", grid,
                                 {{"intensity", standard.values},
                                  {"intensity_published_envelope", paper.values}}));
    } else if (figure_id == "fig6") {
      const auto spectrum = Spectrum::rectangular(2.978e15, 2e12);
      const std::vector<SourceSpec> sources = {
          SourceSpec::thermal(spectrum, 5e-4), SourceSpec::thermal(spectrum, -5e-4)};
      const Geometry geometry(1.0, true, two_pi * constants.c / spectrum.omega0());
      const double period = geometry.wavelength * geometry.L / 1e-3;
      const auto grid = symmetric_grid(3.0 * period, 256);
      std::vector<double> ns = {100, 316, 1000, 3162, 10000};
      std::vector<double> medians, theory;
      for (double n : ns) {
        std::vector<double> vs;
        for (int s = 0; s < 100; ++s) {
          SimulationConfig sim;
          sim.sources = sources;
          sim.geometry = geometry;
          sim.order = 1;
          sim.n_photons = static_cast<long>(n);
          sim.seed = seed + static_cast<std::uint64_t>(s) * 7919u;
          vs.push_back(simulate_first_order(sim, grid).visibility_fit);
        }
        std::sort(vs.begin(), vs.end());
        medians.push_back(vs[vs.size() / 2]);
        theory.push_back(1.0 / std::sqrt(n));
      }
      write_file(csv, curves_csv("n_photons", ns,
                                 {{"median_visibility", medians}, {"theory", theory}}));
    } else if (figure_id == "fig9") {
      const double lambda = 632.8e-9, L = 1.0;
      const Geometry geometry(L, true, lambda);
      const double d_equal = std::sqrt(2.0 * lambda * L);
      const auto grid = symmetric_grid(2.5e-3, 1025);
      auto make = [&](double d12, double d23) {
        const std::vector<SourceSpec> sources = {
            SourceSpec::laser(Spectrum::monochromatic(two_pi * constants.c / lambda),
                              (d12 + d23) / 2.0),
            SourceSpec::laser(Spectrum::monochromatic(two_pi * constants.c / lambda),
                              (d23 - d12) / 2.0),
            SourceSpec::laser(Spectrum::monochromatic(two_pi * constants.c / lambda),
                              -(d12 + d23) / 2.0)};
        MultiBeamOptions options;
        options.phases = {0.0, 0.0, 0.0};
        return multi_beam_first_order(sources, geometry, grid, options).pattern.values;
      };
      write_file(csv, curves_csv("x_m", grid,
                                 {{"unequal_spacing", make(d_equal, 1.5 * d_equal)},
                                  {"equal_spacing", make(d_equal, d_equal)}}));
    } else if (figure_id == "fig12" || figure_id == "fig19") {
      const double bw = 1e9;
      const auto grid = symmetric_grid(40e-9, 1025);
      std::vector<std::pair<std::string, std::vector<double>>> curves;
      for (int mult : {1, 2, 4}) {
        HbtParams hbt{};
        hbt.bandwidth = bw * mult;
        HomParams hom{};
        hom.bandwidth = bw * mult;
        const auto p =
            figure_id == "fig12"
                ? hbt_second_order(SourceKind::Thermal, Statistics::Boson, Domain::Temporal,
                                   hbt, grid)
                : hom_second_order(HomPair::EntangledPair, Domain::Temporal, hom, grid);
        curves.emplace_back("bandwidth_x" + std::to_string(mult), p.values);
      }
      write_file(csv, curves_csv("tau_s", grid, curves));
    } else if (figure_id == "fig23") {
      const double lambda = 632.8e-9, L = 1.0;
      const Geometry geometry(L, true, lambda);
      const double d = std::sqrt(2.0 * lambda * L);
      const auto grid = symmetric_grid(2.0e-3, 1025);
      std::vector<std::pair<std::string, std::vector<double>>> curves;
      const std::vector<std::pair<double, double>> configs = {
          {d, d}, {d, 1.5 * d}, {d, 2.0 * d}};
      int index = 0;
      for (const auto& [d12, d23] : configs) {
        const auto p =
            multi_source_second_order(SourceKind::SinglePhoton, d12, d23, geometry, grid);
        curves.emplace_back("pattern_" + std::to_string(++index), p.values);
      }
      write_file(csv, curves_csv("dx_m", grid, curves));
    } else if (figure_id == "fig29a") {
      ThirdOrderParams params;
      params.source_size = 1e-3;
      params.wavelength = 632.8e-9;
      params.L = 1.0;
      const double unit = params.wavelength * params.L / params.source_size;
      const auto grid = symmetric_grid(5.0 * unit, 101);
      const auto p =
          third_order_pattern(ThirdOrderConfig::ThermalHbt3Spatial, params, grid, grid);
      write_file(csv, grid2d_csv("x12_m", "x13_m", p));
    } else if (figure_id == "fig32") {
      ThirdOrderParams params;
      params.wavelength = 632.8e-9;
      params.L = 1.0;
      params.d = std::sqrt(2.0 * params.wavelength * params.L);
      const double period = params.wavelength * params.L / params.d;
      const auto grid = symmetric_grid(1.5 * period, 101);
      const auto p =
          third_order_pattern(ThirdOrderConfig::ThreeSinglePhotonSlice, params, grid, grid);
      write_file(csv, grid2d_csv("x1_m", "x2_m", p));
    } else if (figure_id == "fig35") {
      ThirdOrderParams params;
      params.bandwidth = 1e9;
      const auto grid = symmetric_grid(30e-9, 101);
      const auto p = third_order_pattern(ThirdOrderConfig::FermionHbt3, params, grid, grid);
      write_file(csv, grid2d_csv("t12_s", "t23_s", p));
    } else {
      std::string known;
      for (const auto& id : figure_ids()) known += (known.empty() ? "" : ", ") + id;
      throw UsageError("unknown figure id '" + figure_id + "'; valid ids: " + known);
    }
    result.files.push_back(csv);
  } catch (const NumericError& e) {
    result.exit_code = 3;
    result.error = e.what();
  } catch (const std::exception& e) {
    result.exit_code = 2;
    result.error = e.what();
  }
  return result;
}

const std::string* find_preset(const std::string& name) {
  for (const auto& [preset_name, text] : bundled_presets())
    if (preset_name == name) return &text;
  return nullptr;
}

}  // namespace feyncoh
