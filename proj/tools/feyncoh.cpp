#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "feyncoh/experiment.hpp"

namespace {

int threads_from_env() {
  const char* env = std::getenv("FEYNCOH_THREADS");
  if (!env) return 1;
  const int n = std::atoi(env);
  return n < 1 ? 1 : n;
}

feyncoh::ParseOutcome load_config(const std::string& spec) {
  if (std::filesystem::exists(spec)) return feyncoh::parse_config_file(spec);
  if (const std::string* preset = feyncoh::find_preset(spec))
    return feyncoh::parse_config_text(*preset, "preset:" + spec);
  feyncoh::ParseOutcome outcome;
  outcome.errors.push_back({0, spec, "no such file or preset"});
  return outcome;
}

void print_errors(const feyncoh::ParseOutcome& outcome) {
  for (const auto& e : outcome.errors)
    std::cerr << "error: line " << e.line << ": " << e.key << ": " << e.message << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"feyncoh: first-, second- and third-order coherence patterns from Feynman "
               "path sums"};
  app.require_subcommand(1);

  std::string config_spec, figure_id;
  std::uint64_t seed = 0;
  long samples = 0;
  std::string out_dir, mode;

  auto add_overrides = [&](CLI::App* cmd, bool with_mode) {
    cmd->add_option("--seed", seed, "override the RNG seed");
    cmd->add_option("--samples", samples, "override the sample count");
    cmd->add_option("--out-dir", out_dir, "override the output directory");
    if (with_mode)
      cmd->add_option("--mode", mode, "override the run mode (analytic|montecarlo|both)");
  };

  auto* validate = app.add_subcommand("validate", "parse and validate a configuration");
  validate->add_option("file", config_spec, "config file or preset name")->required();

  auto* run = app.add_subcommand("run", "run an experiment configuration");
  run->add_option("file", config_spec, "config file or preset name")->required();
  add_overrides(run, true);

  auto* reproduce = app.add_subcommand("reproduce", "emit a published figure dataset");
  reproduce->add_option("figure", figure_id, "figure id (see list below)")->required();
  add_overrides(reproduce, false);

  app.add_subcommand("list-presets", "list bundled configurations");

  CLI11_PARSE(app, argc, argv);

  feyncoh::RunOptions options;
  options.threads = threads_from_env();
  if (run->count("--seed") || reproduce->count("--seed")) options.seed = seed;
  if (run->count("--samples")) options.samples = samples;
  if (run->count("--out-dir") || reproduce->count("--out-dir")) options.out_dir = out_dir;
  if (run->count("--mode")) {
    if (mode == "analytic")
      options.mode = feyncoh::RunMode::Analytic;
    else if (mode == "montecarlo")
      options.mode = feyncoh::RunMode::MonteCarlo;
    else if (mode == "both")
      options.mode = feyncoh::RunMode::Both;
    else {
      std::cerr << "error: unknown mode '" << mode << "'\n";
      return 2;
    }
  }

  if (app.got_subcommand("list-presets")) {
    for (const auto& [name, text] : feyncoh::bundled_presets()) {
      const std::size_t eol = text.find('\n');
      std::string summary = text.substr(0, eol);
      if (!summary.empty() && summary[0] == '#') summary = summary.substr(1);
      std::cout << name << " -" << summary << "\n";
    }
    return 0;
  }

  if (app.got_subcommand("validate")) {
    const auto outcome = load_config(config_spec);
    if (!outcome.ok()) {
      print_errors(outcome);
      return 2;
    }
    std::cout << "OK: " << outcome.config->name << " ("
              << feyncoh::to_string(outcome.config->experiment) << ")\n";
    return 0;
  }

  if (app.got_subcommand("run")) {
    const auto outcome = load_config(config_spec);
    if (!outcome.ok()) {
      print_errors(outcome);
      return 2;
    }
    const auto result = feyncoh::run_experiment(*outcome.config, options);
    if (result.exit_code != 0) {
      std::cerr << "error: " << result.error << "\n";
      return result.exit_code;
    }
    std::cout << "wrote " << result.pattern_csv.string() << "\n";
    std::cout << "wrote " << result.report_txt.string() << "\n";
    std::cout << "wrote " << result.manifest_json.string() << "\n";
    for (const auto& [key, value] : result.metrics)
      std::cout << "  " << key << " = " << value << "\n";
    return 0;
  }

  if (app.got_subcommand("reproduce")) {
    const auto result = feyncoh::reproduce_figure(figure_id, options);
    if (result.exit_code != 0) {
      std::cerr << "error: " << result.error << "\n";
      return result.exit_code;
    }
    for (const auto& file : result.files) std::cout << "wrote " << file.string() << "\n";
    return 0;
  }

  return 0;
}
