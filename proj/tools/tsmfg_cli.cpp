// Command-line front end: solve configs, reproduce the two examples, run the
// check suites and plot CSV snapshots.
//
// Exit codes: 0 success, 1 check failure, 2 configuration error,
// 3 numerical failure.

#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tsmfg/error.hpp"
#include "tsmfg/experiments.hpp"
#include "tsmfg/output.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kCheckFailed = 1;
constexpr int kConfigError = 2;
constexpr int kNumericalError = 3;

void print_manifest(const tsmfg::RunManifest& m) {
  std::cout << "wrote " << m.csv_path.string() << "\n";
  if (m.svg_path) std::cout << "wrote " << m.svg_path->string() << "\n";
  std::cout << "wrote " << m.manifest_path.string() << "\n";
  for (const auto& w : m.document.at("warnings")) std::cout << "warning: " << w.get<std::string>() << "\n";
  std::cout << "solve took " << m.wall_clock_seconds << " s\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-state mean-field game solvers"};
  app.set_version_flag("--version", tsmfg::tool_version());
  app.require_subcommand(1);

  auto* solve = app.add_subcommand("solve", "Run a JSON run configuration (or a previous run manifest)");
  std::string config_path;
  std::string solve_output;
  solve->add_option("--config", config_path, "Run configuration file")->required();
  solve->add_option("--output-dir", solve_output, "Override output.directory");

  auto* example = app.add_subcommand("example", "Reproduce example 1 (shock) or 2 (monotonicity loss)");
  int example_id = 1;
  std::string problem = "reduced-primal";
  tsmfg::ExampleOptions options;
  std::string orientation = std::string(tsmfg::to_string(tsmfg::kExample2DefaultPreset));
  std::string example_output;
  bool svg = false;
  std::vector<std::string> columns;
  example->add_option("--id", example_id, "Example number")->required()->check(CLI::Range(1, 2));
  example->add_option("--problem", problem, "reduced-primal | reduced-dual | potential-primal | potential-dual")
      ->required();
  example->add_option("--kappa", options.kappa, "Example 2 potential strength")->capture_default_str();
  example->add_option("--orientation", orientation, "Example 2 f orientation (example2-gradient | example2-paper)")
      ->capture_default_str();
  example->add_flag("--paper-exact", options.paper_exact, "Use dt = 1e-5 instead of 1e-4");
  example->add_option("--n", options.n, "Grid intervals")->capture_default_str();
  example->add_option("--half-width", options.dual_half_width, "Dual domain is [-L, L]")->capture_default_str();
  example->add_option("--output-dir", example_output, "Output directory");
  example->add_flag("--svg", svg, "Also write an SVG plot");
  example->add_option("--columns", columns, "Columns to plot (e.g. t=0 t=5)");

  auto* check = app.add_subcommand("check", "Run a check suite");
  std::string suite;
  check->add_option("--suite", suite, "consistency | examples")->required();

  auto* plot = app.add_subcommand("plot", "Plot columns of a snapshot CSV as SVG");
  std::string plot_input;
  std::string plot_output;
  tsmfg::PlotOptions plot_options;
  plot->add_option("--input", plot_input, "CSV written by solve/example")->required();
  plot->add_option("--output", plot_output, "SVG file")->required();
  plot->add_option("--columns", plot_options.columns, "Column headers (default: all)");
  plot->add_option("--title", plot_options.title, "Plot title");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  try {
    if (*solve) {
      tsmfg::RunConfig config = tsmfg::load_run_config(config_path);
      if (!solve_output.empty()) config.output.directory = solve_output;
      print_manifest(tsmfg::run_from_config(config));
    } else if (*example) {
      options.orientation = tsmfg::parse_cost_preset(orientation);
      tsmfg::RunConfig config = tsmfg::preset_example(example_id, tsmfg::parse_problem_kind(problem), options);
      config.output.directory = example_output;
      if (svg) config.output.formats.push_back("svg");
      config.output.plot_columns = columns;
      print_manifest(tsmfg::run_from_config(config));
    } else if (*check) {
      const tsmfg::CheckReport report = tsmfg::check_suite(suite);
      for (const auto& r : report.results)
        std::cout << (r.passed ? "[PASS] " : "[FAIL] ") << r.name << ": " << r.detail << "\n";
      std::cout << (report.passed() ? "all checks passed" : "some checks failed") << "\n";
      return report.passed() ? kOk : kCheckFailed;
    } else if (*plot) {
      tsmfg::emit_svg_plot(plot_input, plot_output, plot_options);
      std::cout << "wrote " << plot_output << "\n";
    }
  } catch (const tsmfg::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kConfigError;
  } catch (const tsmfg::DomainError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kConfigError;
  } catch (const tsmfg::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kNumericalError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kNumericalError;
  }
  return kOk;
}
