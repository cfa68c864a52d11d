#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "feyncoh/errors.hpp"
#include "feyncoh/experiment.hpp"

using namespace feyncoh;

namespace {

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool has_error_mentioning(const ParseOutcome& outcome, const std::string& key,
                          const std::string& fragment) {
  for (const auto& e : outcome.errors)
    if (e.key == key && e.message.find(fragment) != std::string::npos && e.line > 0)
      return true;
  return false;
}

}  // namespace

TEST_SUITE_BEGIN("experiment");

TEST_CASE("golden preset parses") {
  const std::string* preset = find_preset("thermal-hbt-temporal");
  REQUIRE(preset != nullptr);
  const auto outcome = parse_config_text(*preset, "preset");
  REQUIRE(outcome.ok());
  CHECK(outcome.config->experiment == ExperimentKind::Hbt);
  CHECK(outcome.config->sources.size() == 1);
  CHECK(outcome.config->sources[0].kind() == SourceKind::Thermal);
  // 1 GHz ordinary frequency converts to rad/s at the parse boundary
  CHECK(outcome.config->sources[0].spectrum().width() ==
        doctest::Approx(2.0 * 3.14159265358979 * 1e9).epsilon(1e-9));
}

TEST_CASE("all bundled presets parse") {
  for (const auto& [name, text] : bundled_presets()) {
    INFO("preset ", name);
    const auto outcome = parse_config_text(text, name);
    for (const auto& e : outcome.errors)
      MESSAGE("line ", e.line, " ", e.key, ": ", e.message);
    CHECK(outcome.ok());
  }
}

TEST_CASE("negative bandwidth is rejected with the key name") {
  const std::string text = R"(experiment = hbt
source.1.kind = thermal
source.1.spectrum = rectangular
source.1.omega0 = 2.9767e15 rad/s
source.1.bandwidth = -1 GHz
)";
  const auto outcome = parse_config_text(text, "inline");
  CHECK_FALSE(outcome.ok());
  CHECK(has_error_mentioning(outcome, "source.1.bandwidth", "positive"));
}

TEST_CASE("laser with random-per-photon phases is rejected citing the rule") {
  const std::string text = R"(experiment = hbt
source.1.kind = laser
source.1.spectrum = monochromatic
source.1.omega0 = 2.9767e15 rad/s
source.1.phase-model = random-per-photon
)";
  const auto outcome = parse_config_text(text, "inline");
  CHECK_FALSE(outcome.ok());
  CHECK(has_error_mentioning(outcome, "source.1.phase-model", "coherent-phase"));
}

TEST_CASE("all errors are collected, with line numbers") {
  const std::string text = R"(experiment = hbt
bogus-key = 1
mode = wrongmode
window = 5 kg
source.1.kind = thermal
source.1.spectrum = rectangular
source.1.omega0 = 2.9767e15 rad/s
source.1.bandwidth = 1 GHz
)";
  const auto outcome = parse_config_text(text, "inline");
  CHECK_FALSE(outcome.ok());
  CHECK(outcome.errors.size() >= 3);
  CHECK(has_error_mentioning(outcome, "bogus-key", "unknown key"));
  CHECK(has_error_mentioning(outcome, "mode", "expected"));
  CHECK(has_error_mentioning(outcome, "window", "unit"));
  // line numbers point at the offending lines
  for (const auto& e : outcome.errors)
    if (e.key == "bogus-key") CHECK(e.line == 2);
}

TEST_CASE("config round-trips through serialization") {
  for (const std::string name :
       {"thermal-hbt-temporal", "laser-laser-beating", "modulated-hbt", "fermion-hbt3"}) {
    const std::string* preset = find_preset(name);
    REQUIRE(preset != nullptr);
    const auto first = parse_config_text(*preset, name);
    REQUIRE(first.ok());
    const std::string serialized = serialize_config(*first.config);
    const auto second = parse_config_text(serialized, name + "-reparsed");
    REQUIRE(second.ok());
    CHECK(serialize_config(*second.config) == serialized);
  }
}

TEST_CASE("run: thermal HBT preset produces the expected artifacts") {
  const auto outcome = parse_config_text(*find_preset("thermal-hbt-temporal"), "preset");
  REQUIRE(outcome.ok());
  RunOptions options;
  options.samples = 4000;
  options.out_dir = "test_runs/thermal-hbt";
  const auto result = run_experiment(*outcome.config, options);
  REQUIRE(result.exit_code == 0);
  CHECK(std::filesystem::exists(result.pattern_csv));
  CHECK(std::filesystem::exists(result.report_txt));
  CHECK(std::filesystem::exists(result.manifest_json));
  CHECK(result.metrics.at("g2_zero_analytic") == doctest::Approx(2.0));
  // at coincidence the pair phases cancel sample by sample
  CHECK(result.metrics.at("g2_zero_mc") == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(result.metrics.at("mc_max_dev_sigma") < 5.0);
  const std::string report = slurp(result.report_txt);
  CHECK(report.find("g2_zero_analytic") != std::string::npos);
  const std::string csv = slurp(result.pattern_csv);
  CHECK(csv.rfind("tau_s,analytic,mc_mean,mc_stderr", 0) == 0);
}

TEST_CASE("run: cascade preset reports 8") {
  const auto outcome = parse_config_text(*find_preset("cascade-hbt"), "preset");
  REQUIRE(outcome.ok());
  RunOptions options;
  options.samples = 500;
  options.out_dir = "test_runs/cascade";
  const auto result = run_experiment(*outcome.config, options);
  REQUIRE(result.exit_code == 0);
  CHECK(result.metrics.at("g2_zero_analytic") == doctest::Approx(8.0));
  CHECK(result.metrics.at("g2_zero_mc") == doctest::Approx(8.0).epsilon(1e-9));
}

TEST_CASE("run: HOM preset dips to zero at tau = 0") {
  const auto outcome = parse_config_text(*find_preset("hom-entangled"), "preset");
  REQUIRE(outcome.ok());
  RunOptions options;
  options.samples = 2000;
  options.out_dir = "test_runs/hom";
  const auto result = run_experiment(*outcome.config, options);
  REQUIRE(result.exit_code == 0);
  CHECK(result.metrics.at("g2_zero_analytic") == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(result.metrics.at("g2_min_analytic") == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("run: manifests make runs bit-reproducible") {
  const auto outcome = parse_config_text(*find_preset("laser-laser-beating"), "preset");
  REQUIRE(outcome.ok());
  RunOptions options;
  options.samples = 2000;
  options.out_dir = "test_runs/repro-a";
  const auto first = run_experiment(*outcome.config, options);
  REQUIRE(first.exit_code == 0);

  // re-run from the config text embedded in the manifest
  const auto manifest = nlohmann::json::parse(slurp(first.manifest_json));
  const auto replay = parse_config_text(manifest["config"].get<std::string>(), "manifest");
  REQUIRE(replay.ok());
  RunOptions replay_options;
  replay_options.out_dir = "test_runs/repro-b";
  const auto second = run_experiment(*replay.config, replay_options);
  REQUIRE(second.exit_code == 0);
  CHECK(slurp(first.pattern_csv) == slurp(second.pattern_csv));
}

TEST_CASE("run: invalid experiment configurations exit with 2") {
  auto outcome = parse_config_text(*find_preset("thermal-hbt-temporal"), "preset");
  REQUIRE(outcome.ok());
  auto broken = *outcome.config;
  broken.sources.push_back(broken.sources[0]);  // hbt wants exactly one source
  RunOptions options;
  options.out_dir = "test_runs/broken";
  const auto result = run_experiment(broken, options);
  CHECK(result.exit_code == 2);
  CHECK_FALSE(result.error.empty());
}

TEST_CASE("reproduce: figure ids") {
  RunOptions options;
  options.out_dir = "test_runs/figures";
  const auto bad = reproduce_figure("fig999", options);
  CHECK(bad.exit_code == 2);
  CHECK(bad.error.find("fig12") != std::string::npos);  // lists valid ids

  const auto fig12 = reproduce_figure("fig12", options);
  REQUIRE(fig12.exit_code == 0);
  REQUIRE(fig12.files.size() == 1);
  const std::string csv = slurp(fig12.files[0]);
  CHECK(csv.rfind("tau_s,bandwidth_x1,bandwidth_x2,bandwidth_x4", 0) == 0);
}

TEST_CASE("configs parse from files") {
  std::filesystem::create_directories("test_runs");
  const std::filesystem::path path = "test_runs/from-file.cfg";
  {
    std::ofstream out(path);
    out << *find_preset("degeneracy-factors");
  }
  const auto outcome = parse_config_file(path.string());
  REQUIRE(outcome.ok());
  CHECK(outcome.config->experiment == ExperimentKind::Degeneracy);

  const auto missing = parse_config_file("test_runs/does-not-exist.cfg");
  CHECK_FALSE(missing.ok());
  REQUIRE(missing.errors.size() == 1);
  CHECK(missing.errors[0].message.find("cannot open") != std::string::npos);
}

TEST_CASE("event stream CSV round-trips") {
  std::vector<DetectionEvent> events = {{0, 1.25e-6}, {1, 2.5e-6}, {0, 3.125e-6}};
  const std::string csv = events_to_csv(events);
  CHECK(csv.rfind("detector_id,timestamp_s", 0) == 0);
  const auto parsed = events_from_csv(csv);
  REQUIRE(parsed.size() == events.size());
  for (std::size_t i = 0; i < events.size(); ++i) {
    CHECK(parsed[i].detector == events[i].detector);
    CHECK(parsed[i].timestamp == doctest::Approx(events[i].timestamp).epsilon(1e-12));
  }
}

TEST_SUITE_END();
