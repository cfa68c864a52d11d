#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "feyncoh/montecarlo.hpp"
#include "feyncoh/paths.hpp"
#include "feyncoh/patterns.hpp"
#include "feyncoh/source.hpp"

namespace feyncoh {

enum class RunMode { Analytic, MonteCarlo, Both };

enum class ExperimentKind {
  Mz,
  FirstOrder,
  VisibilityDecay,
  Hbt,
  Hom,
  MultiSourceSecond,
  Subwavelength,
  ThirdOrder,
  EventStream,
  PathOracleCheck,
  Degeneracy,
};

std::string to_string(RunMode mode);
std::string to_string(ExperimentKind kind);

/// A fully validated experiment description, parsed from a key = value file
/// with unit suffixes (s/ms/us/ns, m/mm/um/nm, Hz/kHz/MHz/GHz, rad/s, K, W, kg).
struct ExperimentConfig {
  std::string name = "experiment";
  RunMode mode = RunMode::Both;
  ExperimentKind experiment = ExperimentKind::Hbt;
  Domain domain = Domain::Temporal;
  int order = 2;

  int grid_points = 512;
  double grid_span = 0.0;  ///< [s] or [m] per domain; 0 selects an automatic span

  std::uint64_t seed = 1;
  long samples = 20000;
  int bins = 64;
  double window = 0.0;    ///< coincidence window [s]
  double duration = 0.0;  ///< [s]
  double rate = 0.0;      ///< singles rate [Hz]

  long n_detected = 10000;
  long n_simultaneous = 0;
  int seeds_per_point = 100;
  std::vector<long> photon_counts = {100, 1000, 10000};

  bool force_distinguishable = false;
  bool long_average = false;
  std::string variant = "standard";        ///< mz: standard | paper
  std::string third_config;                ///< third-order configuration name
  std::string scan = "fix-one";            ///< subwavelength scan
  std::string phase_mode = "random-relative";
  double d12 = 0.0, d23 = 0.0, d = 0.0;    ///< separations [m]
  std::vector<double> phases;              ///< initial phases [rad]

  std::vector<SourceSpec> sources;
  std::vector<DetectorSpec> detectors;
  Geometry geometry = Geometry(1.0, true, 632.8e-9);

  std::string out_dir = "runs";
  std::string origin;  ///< file path or preset name
};

struct ParseError {
  int line = 0;
  std::string key;
  std::string message;
};

struct ParseOutcome {
  std::optional<ExperimentConfig> config;
  std::vector<ParseError> errors;  ///< all errors, not just the first
  bool ok() const { return config.has_value() && errors.empty(); }
};

ParseOutcome parse_config_file(const std::string& path);
ParseOutcome parse_config_text(std::string_view text, std::string origin);

/// Canonical key = value form in SI base units; parsing it reproduces the
/// config exactly.
std::string serialize_config(const ExperimentConfig& config);

struct RunOptions {
  std::optional<std::uint64_t> seed;
  std::optional<long> samples;
  std::optional<std::string> out_dir;
  std::optional<RunMode> mode;
  int threads = 1;
};

struct RunResult {
  int exit_code = 0;
  std::filesystem::path pattern_csv;
  std::filesystem::path report_txt;
  std::filesystem::path manifest_json;
  PatternSamples analytic;
  std::vector<double> mc_mean;
  std::vector<double> mc_stderr;
  std::map<std::string, double> metrics;
  std::string error;
};

/// Run one experiment: writes pattern.csv, report.txt and run_manifest.json
/// into the output directory. Exit codes: 0 success, 2 validation failure,
/// 3 numeric failure.
RunResult run_experiment(const ExperimentConfig& config, const RunOptions& options = {});

/// Known figure datasets for `reproduce`.
const std::vector<std::string>& figure_ids();

struct FigureResult {
  int exit_code = 0;
  std::vector<std::filesystem::path> files;
  std::string error;
};

/// Emit the dataset behind one published figure into the output directory.
FigureResult reproduce_figure(const std::string& figure_id, const RunOptions& options = {});

/// Bundled example configurations, one per acceptance scenario.
const std::vector<std::pair<std::string, std::string>>& bundled_presets();
const std::string* find_preset(const std::string& name);

/// Event streams as CSV lines `detector_id,timestamp_s` (12 significant digits).
std::string events_to_csv(const std::vector<DetectionEvent>& events);
std::vector<DetectionEvent> events_from_csv(std::string_view text);

}  // namespace feyncoh
