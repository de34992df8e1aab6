#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "tsmfg/model.hpp"
#include "tsmfg/numerics.hpp"
#include "tsmfg/solvers.hpp"

namespace tsmfg {

inline constexpr const char* kToolName = "tsmfg";
const char* tool_version();

/// Example II leaves kappa and the orientation of f open; these defaults are
/// the smallest swept kappa whose reduced-primal w(., 0) loses monotonicity
/// (see example2_sweep).
inline constexpr double kExample2DefaultKappa = 8.0;
inline constexpr CostPreset kExample2DefaultPreset = CostPreset::example2_gradient;

struct ModelConfig {
  CostPreset preset = CostPreset::example1;
  double kappa = 0.0;
  /// Coefficients in ascending powers of theta1, used by the custom preset.
  std::vector<double> f1;
  std::vector<double> f2;

  bool operator==(const ModelConfig&) const = default;
};

struct GridConfig {
  double a = 0.0;
  double b = 1.0;
  std::size_t n = 200;
  bool operator==(const GridConfig&) const = default;
};

struct TimeConfig {
  double horizon = 5.0;
  double dt = 1e-4;
  bool operator==(const TimeConfig&) const = default;
};

struct TerminalConfig {
  std::string preset = "linear-w";
  std::map<std::string, double> params;
  bool operator==(const TerminalConfig&) const = default;
};

struct OutputConfig {
  /// Empty means $TSMFG_OUTPUT_DIR, falling back to ./tsmfg-out.
  std::string directory;
  std::string name = "run";
  /// Subset of {"csv", "manifest", "svg"}.
  std::vector<std::string> formats{"csv", "manifest"};
  /// CSV headers (or "t=<time>") plotted when "svg" is requested; empty means all.
  std::vector<std::string> plot_columns;
  bool operator==(const OutputConfig&) const = default;
};

struct RunConfig {
  ProblemKind problem = ProblemKind::reduced_primal;
  ModelConfig model;
  GridConfig grid;
  TimeConfig time;
  TerminalConfig terminal;
  BoundarySpec boundary;
  std::vector<double> snapshots;
  OutputConfig output;

  bool operator==(const RunConfig&) const = default;
};

nlohmann::json to_json(const RunConfig& config);
/// Strict parse: unknown keys, wrong types, unknown presets and invalid
/// grid/time values raise ConfigError.
RunConfig run_config_from_json(const nlohmann::json& doc);
RunConfig load_run_config(const std::filesystem::path& path);

CostModel build_model(const ModelConfig& config);
/// Validates every part of the config and builds the solver inputs.
void validate(const RunConfig& config);

struct ExampleOptions {
  double kappa = kExample2DefaultKappa;
  CostPreset orientation = kExample2DefaultPreset;
  /// dt = 1e-5 instead of the default 1e-4.
  bool paper_exact = false;
  std::optional<double> dt;
  std::size_t n = 200;
  /// Dual problems are solved on [-L, L].
  double dual_half_width = 2.0;
};

/// Run configuration reproducing example 1 (shock formation) or 2
/// (monotonicity loss) for the given formulation.
RunConfig preset_example(int id, ProblemKind problem, const ExampleOptions& options = {});

SolutionTrace run_solver(const RunConfig& config);

struct RunManifest {
  nlohmann::json document;
  std::vector<double> realized_times;
  std::filesystem::path csv_path;
  std::filesystem::path manifest_path;
  std::optional<std::filesystem::path> svg_path;
  double wall_clock_seconds = 0.0;
};

std::filesystem::path resolve_output_directory(const OutputConfig& output);

/// Solves and writes the artifacts. Files are written through a temporary and
/// renamed; on failure every artifact of this run is removed. The wall-clock
/// duration goes to <name>.timing.json so that the manifest stays
/// reproducible byte for byte.
RunManifest run_from_config(const RunConfig& config);

/// Reduced-primal example-2 runs over kappa in {1, 2, 4, 8, 16} and both
/// orientations.
struct SweepEntry {
  double kappa;
  CostPreset orientation;
  bool non_monotone;
  std::optional<double> violation_location;
};

struct SweepResult {
  std::vector<SweepEntry> entries;
  std::optional<double> kappa;
  std::optional<CostPreset> orientation;
};

/// Picks the smallest kappa (ties: gradient orientation first) whose w(., 0)
/// is non-monotone.
SweepResult example2_sweep(double dt = 1e-4);

struct CheckResult {
  std::string name;
  bool passed;
  std::string detail;
};

struct CheckReport {
  std::string suite;
  std::vector<CheckResult> results;

  bool passed() const;
};

/// "consistency": coefficient, rate-gradient and brute-force identities.
/// "examples": end-to-end runs of both examples and their predicates.
CheckReport check_suite(const std::string& name);

}  // namespace tsmfg
