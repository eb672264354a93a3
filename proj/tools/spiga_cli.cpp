// Command-line driver for the p-refinement experiments.
//
//   spiga run --example example1 --strategy reaction-diffusion --eps1 1e-6..1e-16:2 --pivot
//   spiga run --config experiment.cfg --format json
//   spiga knots --example example3 --eps1 1e-10 --eps2 1e-4 --degree 4

#include <CLI11.hpp>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <thread>

#include "spiga/convergence.hpp"
#include "spiga/error.hpp"
#include "spiga/report.hpp"

namespace {

constexpr int kExitCellFailure = 1;
constexpr int kExitConfig = 2;
constexpr int kExitIo = 3;

unsigned thread_cap() {
  unsigned cap = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("SPIGA_THREADS")) {
    const int v = std::atoi(env);
    if (v >= 1) cap = std::min(cap, static_cast<unsigned>(v));
  }
  return cap;
}

int exit_code_for(const spiga::Error& e) {
  return e.kind() == spiga::ErrorKind::IoError ? kExitIo : kExitConfig;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"B-spline Galerkin solver for two-parameter singularly perturbed problems"};
  app.require_subcommand(1);

  spiga::Settings flags;
  std::string config_file;
  auto add_setting = [&flags](CLI::App* cmd, const std::string& flag, const std::string& key,
                              const std::string& help) {
    cmd->add_option_function<std::string>(
        flag, [&flags, key](const std::string& v) { flags[key] = v; }, help);
  };

  auto* run_cmd = app.add_subcommand("run", "Run a p-refinement sweep and write result tables");
  run_cmd->add_option("--config", config_file, "key = value settings file; flags override it")
      ->check(CLI::ExistingFile);
  add_setting(run_cmd, "--example", "example", "example1 | example2 | example3 | custom");
  add_setting(run_cmd, "--strategy", "strategy",
              "uniform | reaction-diffusion | convection-diffusion | "
              "reaction-convection-diffusion | auto");
  add_setting(run_cmd, "--eps1", "eps1", "eps1 values: list and/or decade range, e.g. 1e-6..1e-16:2");
  add_setting(run_cmd, "--eps2", "eps2", "eps2 values, paired with --eps1");
  add_setting(run_cmd, "--p-min", "p_min", "lowest degree of the sweep");
  add_setting(run_cmd, "--p-max", "p_max", "highest degree of the sweep (<= 12)");
  add_setting(run_cmd, "--p-max-knot", "p_max_knot", "layer-width multiplier in the knot recipes");
  add_setting(run_cmd, "--interior-multiplicity", "interior_multiplicity",
              "multiplicity of layer knots: integer or 'p'");
  add_setting(run_cmd, "--quad-order", "quad_order", "Gauss points per span (0 = p + 2)");
  add_setting(run_cmd, "--samples", "samples", "error sample points per region");
  add_setting(run_cmd, "--b", "b", "constant b for the custom example");
  add_setting(run_cmd, "--c", "c", "constant c for the custom example");
  add_setting(run_cmd, "--f", "f", "constant f for the custom example");
  add_setting(run_cmd, "--output,-o", "output", "table file path");
  add_setting(run_cmd, "--format", "format", "csv | json");
  add_setting(run_cmd, "--threads", "threads", "worker threads (capped by SPIGA_THREADS)");
  bool pivot = false;
  run_cmd->add_flag("--pivot", pivot, "also write a DOF x parameter table");

  auto* knots_cmd = app.add_subcommand("knots", "Print the designed knot vector for one cell");
  add_setting(knots_cmd, "--example", "example", "example1 | example2 | example3 | custom");
  add_setting(knots_cmd, "--strategy", "strategy", "knot recipe or auto");
  add_setting(knots_cmd, "--eps1", "eps1", "eps1");
  add_setting(knots_cmd, "--eps2", "eps2", "eps2");
  add_setting(knots_cmd, "--p-max-knot", "p_max_knot", "layer-width multiplier");
  add_setting(knots_cmd, "--interior-multiplicity", "interior_multiplicity", "integer or 'p'");
  add_setting(knots_cmd, "--b", "b", "constant b for the custom example");
  add_setting(knots_cmd, "--c", "c", "constant c for the custom example");
  add_setting(knots_cmd, "--f", "f", "constant f for the custom example");
  int degree = 2;
  knots_cmd->add_option("--degree,-p", degree, "spline degree")->check(CLI::PositiveNumber);

  CLI11_PARSE(app, argc, argv);

  try {
    spiga::Settings settings;
    if (!config_file.empty()) settings = spiga::read_settings_file(config_file);
    for (const auto& [key, value] : flags) settings[key] = value;
    if (pivot) settings["pivot"] = "true";

    spiga::ExperimentConfig config = spiga::config_from_settings(settings);
    const unsigned cap = thread_cap();
    config.threads = settings.count("threads") ? std::min(config.threads, cap) : cap;
    spiga::StudyConfig study = spiga::to_study_config(config);

    if (knots_cmd->parsed()) {
      for (const auto& eps : study.parameters) {
        const auto problem = spiga::make_problem(study.example, eps, study.custom);
        const auto regime = spiga::classify_regime(problem);
        const auto strategy = study.strategy.value_or(spiga::strategy_for(regime.regime));
        const auto design = spiga::design_knots(regime, strategy, degree, study.knots);
        std::printf("eps1=%g eps2=%g regime=%s mu0=%.6g mu1=%.6g strategy=%s\n", eps.eps1,
                    eps.eps2, std::string(spiga::to_string(regime.regime)).c_str(), regime.mu0,
                    regime.mu1, std::string(spiga::to_string(strategy)).c_str());
        std::printf("  breakpoints:");
        for (double t : design.knots.distinct()) std::printf(" %.17g", t);
        std::printf("\n  multiplicities:");
        for (int r : design.knots.multiplicities()) std::printf(" %d", r);
        std::printf("\n  basis_count=%d\n", design.knots.basis_count());
        if (!design.warning.empty()) std::printf("  warning: %s\n", design.warning.c_str());
      }
      return 0;
    }

    const spiga::RunOutcome outcome = spiga::run(config);
    std::size_t failed = 0;
    for (const auto& r : outcome.records) {
      if (!r.ok()) {
        ++failed;
        std::fprintf(stderr, "cell p=%d eps1=%g eps2=%g failed: %s\n", r.p, r.eps1, r.eps2,
                     r.detail.c_str());
      }
    }
    for (const auto& f : outcome.files) std::printf("wrote %s\n", f.string().c_str());
    std::printf("%zu cells, %zu failed\n", outcome.records.size(), failed);
    return failed == 0 ? 0 : kExitCellFailure;
  } catch (const spiga::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return exit_code_for(e);
  }
}
