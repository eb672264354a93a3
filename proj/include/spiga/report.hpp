#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "spiga/convergence.hpp"

namespace spiga {

enum class OutputFormat { Csv, Json };

/// Everything a `run` invocation needs. Built from a key-value file and/or CLI flags.
struct ExperimentConfig {
  Example example = Example::Example1;
  std::optional<KnotStrategy> strategy;
  std::vector<double> eps1_list;
  std::vector<double> eps2_list;
  int p_min = 2;
  int p_max_sweep = 9;
  int p_max_knot = 10;
  std::optional<int> interior_multiplicity = 1;
  int quad_order = 0;
  int samples_per_region = 400;
  ConstantData custom;
  std::filesystem::path output_path;
  OutputFormat format = OutputFormat::Csv;
  bool pivot = false;
  unsigned threads = 1;
};

/// Flag/key names understood by config_from_settings().
using Settings = std::map<std::string, std::string>;

/**
 * Reads `key = value` lines; blank lines and text after '#' are ignored.
 * Throws IoError if the file cannot be opened, ConfigParseError on a line
 * without '='.
 */
Settings read_settings_file(const std::filesystem::path& path);

/**
 * Parses a parameter list: comma-separated numbers and decade ranges.
 * "1e-6..1e-16" walks one decade at a time, "1e-6..1e-16:2" two at a time.
 */
std::vector<double> parse_parameter_list(const std::string& text);

/// Preset defaults for the chosen example, overridden by whatever `settings` holds.
ExperimentConfig config_from_settings(const Settings& settings);

/// Pairs eps1_list with eps2_list elementwise; a list of length one is broadcast.
StudyConfig to_study_config(const ExperimentConfig& config);

inline constexpr const char* kCsvHeader =
    "p,dof_label,basis_count,eps1,eps2,strategy,error_percent,status";

void write_csv(std::ostream& out, const std::vector<ConvergenceRecord>& records);
void write_json(std::ostream& out, const std::vector<ConvergenceRecord>& records);
std::vector<ConvergenceRecord> read_json(std::istream& in);

/// DOF label rows against one column per parameter pair, errors with two decimals.
void write_pivot(std::ostream& out, const std::vector<ConvergenceRecord>& records);

/// (dof_label, log10 error) series per parameter pair, for semi-log plots.
void write_plot_data(std::ostream& out, const std::vector<ConvergenceRecord>& records,
                     OutputFormat format);

struct RunOutcome {
  std::vector<ConvergenceRecord> records;
  std::vector<std::filesystem::path> files;
  int exit_code = 0;
};

/// Runs the sweep and writes the table, plot data and (optionally) pivot files.
RunOutcome run(const ExperimentConfig& config);

}  // namespace spiga
