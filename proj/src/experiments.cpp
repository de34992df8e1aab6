#include "tsmfg/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "tsmfg/analysis.hpp"
#include "tsmfg/checks.hpp"
#include "tsmfg/error.hpp"
#include "tsmfg/output.hpp"

#ifndef TSMFG_VERSION
#define TSMFG_VERSION "dev"
#endif

namespace tsmfg {

using nlohmann::json;

const char* tool_version() { return TSMFG_VERSION; }

namespace {

std::string_view to_string(BoundaryKind kind) {
  switch (kind) {
    case BoundaryKind::outflow: return "outflow";
    case BoundaryKind::dirichlet: return "dirichlet";
    case BoundaryKind::large_dirichlet: return "large-dirichlet";
    case BoundaryKind::asymptotic_slope: return "asymptotic-slope";
  }
  return "unknown";
}

BoundaryKind parse_boundary_kind(const std::string& name) {
  for (BoundaryKind k : {BoundaryKind::outflow, BoundaryKind::dirichlet, BoundaryKind::large_dirichlet,
                         BoundaryKind::asymptotic_slope})
    if (to_string(k) == name) return k;
  throw ConfigError("unknown boundary kind '" + name + "'");
}

void expect_object(const json& j, std::string_view where, std::initializer_list<std::string_view> allowed) {
  if (!j.is_object()) throw ConfigError(std::string(where) + ": expected an object");
  for (const auto& item : j.items()) {
    if (std::find(allowed.begin(), allowed.end(), item.key()) == allowed.end())
      throw ConfigError(std::string(where) + ": unknown key '" + item.key() + "'");
  }
}

double get_number(const json& j, const char* key, std::string_view where) {
  const auto& v = j.at(key);
  if (!v.is_number()) throw ConfigError(std::string(where) + "." + key + ": expected a number");
  return v.get<double>();
}

double get_number_or(const json& j, const char* key, double fallback, std::string_view where) {
  return j.contains(key) ? get_number(j, key, where) : fallback;
}

std::string get_string(const json& j, const char* key, std::string_view where) {
  const auto& v = j.at(key);
  if (!v.is_string()) throw ConfigError(std::string(where) + "." + key + ": expected a string");
  return v.get<std::string>();
}

std::vector<double> get_numbers(const json& j, const char* key, std::string_view where) {
  std::vector<double> out;
  if (!j.contains(key)) return out;
  const auto& v = j.at(key);
  if (!v.is_array()) throw ConfigError(std::string(where) + "." + key + ": expected an array");
  for (const auto& e : v) {
    if (!e.is_number()) throw ConfigError(std::string(where) + "." + key + ": expected numbers");
    out.push_back(e.get<double>());
  }
  return out;
}

std::vector<std::string> get_strings(const json& j, const char* key, std::string_view where) {
  std::vector<std::string> out;
  const auto& v = j.at(key);
  if (!v.is_array()) throw ConfigError(std::string(where) + "." + key + ": expected an array");
  for (const auto& e : v) {
    if (!e.is_string()) throw ConfigError(std::string(where) + "." + key + ": expected strings");
    out.push_back(e.get<std::string>());
  }
  return out;
}

std::vector<double> example_snapshots(double horizon) {
  std::vector<double> times;
  for (int k = 0; k <= 10; ++k) times.push_back(horizon * k / 10.0);
  for (double back : {0.05, 0.1, 0.2})
    if (horizon - back > 0.0) times.push_back(horizon - back);
  std::sort(times.begin(), times.end(), std::greater<>());
  times.erase(std::unique(times.begin(), times.end(), [](double a, double b) { return std::abs(a - b) < 1e-9; }),
              times.end());
  return times;
}

}  // namespace

json to_json(const RunConfig& c) {
  json params = json::object();
  for (const auto& [k, v] : c.terminal.params) params[k] = v;
  return json{
      {"problem", std::string(to_string(c.problem))},
      {"model",
       {{"preset", std::string(to_string(c.model.preset))}, {"kappa", c.model.kappa}, {"f1", c.model.f1},
        {"f2", c.model.f2}}},
      {"grid", {{"a", c.grid.a}, {"b", c.grid.b}, {"n", c.grid.n}}},
      {"time", {{"T", c.time.horizon}, {"dt", c.time.dt}}},
      {"terminal", {{"preset", c.terminal.preset}, {"params", params}}},
      {"boundary",
       {{"kind", std::string(to_string(c.boundary.kind))},
        {"left_value", c.boundary.left_value},
        {"right_value", c.boundary.right_value},
        {"large_value", c.boundary.large_value}}},
      {"snapshots", c.snapshots},
      {"output",
       {{"directory", c.output.directory},
        {"name", c.output.name},
        {"formats", c.output.formats},
        {"plot_columns", c.output.plot_columns}}},
  };
}

RunConfig run_config_from_json(const json& doc) {
  try {
    expect_object(doc, "config", {"problem", "model", "grid", "time", "terminal", "boundary", "snapshots", "output"});
    RunConfig c;
    if (!doc.contains("problem")) throw ConfigError("config: missing 'problem'");
    c.problem = parse_problem_kind(get_string(doc, "problem", "config"));

    if (doc.contains("model")) {
      const auto& m = doc.at("model");
      expect_object(m, "model", {"preset", "kappa", "f1", "f2"});
      if (m.contains("preset")) c.model.preset = parse_cost_preset(get_string(m, "preset", "model"));
      c.model.kappa = get_number_or(m, "kappa", 0.0, "model");
      c.model.f1 = get_numbers(m, "f1", "model");
      c.model.f2 = get_numbers(m, "f2", "model");
    }

    if (!doc.contains("grid")) throw ConfigError("config: missing 'grid'");
    const auto& g = doc.at("grid");
    expect_object(g, "grid", {"a", "b", "n"});
    c.grid.a = get_number(g, "a", "grid");
    c.grid.b = get_number(g, "b", "grid");
    if (!g.contains("n")) throw ConfigError("config: missing 'grid.n'");
    if (!g.at("n").is_number_integer() || g.at("n").get<long long>() < 0)
      throw ConfigError("grid.n: expected a nonnegative integer");
    c.grid.n = g.at("n").get<std::size_t>();

    if (!doc.contains("time")) throw ConfigError("config: missing 'time'");
    const auto& t = doc.at("time");
    expect_object(t, "time", {"T", "dt"});
    c.time.horizon = get_number(t, "T", "time");
    c.time.dt = get_number(t, "dt", "time");

    if (doc.contains("terminal")) {
      const auto& term = doc.at("terminal");
      expect_object(term, "terminal", {"preset", "params"});
      c.terminal.preset = get_string(term, "preset", "terminal");
      if (term.contains("params")) {
        const auto& p = term.at("params");
        if (!p.is_object()) throw ConfigError("terminal.params: expected an object");
        for (const auto& item : p.items()) {
          if (!item.value().is_number()) throw ConfigError("terminal.params." + item.key() + ": expected a number");
          c.terminal.params[item.key()] = item.value().get<double>();
        }
      }
    } else {
      const ExampleOptions defaults;
      c.terminal.preset = preset_example(1, c.problem, defaults).terminal.preset;
    }

    c.boundary = default_boundary(c.problem);
    if (doc.contains("boundary")) {
      const auto& b = doc.at("boundary");
      expect_object(b, "boundary", {"kind", "left_value", "right_value", "large_value"});
      if (b.contains("kind")) c.boundary.kind = parse_boundary_kind(get_string(b, "kind", "boundary"));
      c.boundary.left_value = get_number_or(b, "left_value", c.boundary.left_value, "boundary");
      c.boundary.right_value = get_number_or(b, "right_value", c.boundary.right_value, "boundary");
      c.boundary.large_value = get_number_or(b, "large_value", c.boundary.large_value, "boundary");
    }

    c.snapshots = get_numbers(doc, "snapshots", "config");
    if (!doc.contains("snapshots")) c.snapshots = {c.time.horizon, 0.0};

    if (doc.contains("output")) {
      const auto& o = doc.at("output");
      expect_object(o, "output", {"directory", "name", "formats", "plot_columns"});
      if (o.contains("directory")) c.output.directory = get_string(o, "directory", "output");
      if (o.contains("name")) c.output.name = get_string(o, "name", "output");
      if (o.contains("formats")) c.output.formats = get_strings(o, "formats", "output");
      if (o.contains("plot_columns")) c.output.plot_columns = get_strings(o, "plot_columns", "output");
    }
    validate(c);
    return c;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot open config " + path.string());
  json doc;
  try {
    doc = json::parse(is);
  } catch (const json::parse_error& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
  // A run manifest embeds its resolved config.
  if (doc.is_object() && doc.contains("tool") && doc.contains("config")) return run_config_from_json(doc.at("config"));
  return run_config_from_json(doc);
}

CostModel build_model(const ModelConfig& config) {
  const bool example2 = config.preset == CostPreset::example2_paper || config.preset == CostPreset::example2_gradient;
  if (example2 && !(config.kappa > 0.0 && std::isfinite(config.kappa)))
    throw ConfigError("model.kappa must be positive and finite for example 2 costs");
  switch (config.preset) {
    case CostPreset::example1: return CostModel::example1();
    case CostPreset::example2_paper: return CostModel::example2_paper(config.kappa);
    case CostPreset::example2_gradient: return CostModel::example2_gradient(config.kappa);
    case CostPreset::custom:
      if (config.f1.empty() && config.f2.empty()) throw ConfigError("custom cost model needs f1/f2 coefficients");
      return CostModel::custom(Polynomial(config.f1), Polynomial(config.f2));
  }
  throw ConfigError("unknown cost preset");
}

void validate(const RunConfig& c) {
  try {
    const CostModel model = build_model(c.model);
    if (!std::isfinite(c.model.kappa)) throw ConfigError("model.kappa must be finite");
    const Grid1D grid(c.grid.a, c.grid.b, c.grid.n);
    TimeMarch(c.time.horizon, c.time.dt, c.snapshots);
    if (c.snapshots.empty()) throw ConfigError("at least one snapshot time is required");
    if (c.terminal.preset == "field") throw ConfigError("terminal preset 'field' is not available from a config");
    const auto allowed = TerminalData::parameter_names(c.terminal.preset);
    for (const auto& [key, value] : c.terminal.params) {
      if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
        throw ConfigError("terminal preset '" + c.terminal.preset + "' has no parameter '" + key + "'");
    }
    c.boundary.validate();
    if ((c.problem == ProblemKind::reduced_primal || c.problem == ProblemKind::potential_primal) &&
        (c.grid.a != 0.0 || c.grid.b != 1.0))
      throw ConfigError(std::string(to_string(c.problem)) + " requires grid a=0, b=1");
    if ((c.problem == ProblemKind::potential_primal || c.problem == ProblemKind::potential_dual) &&
        !model.has_potential())
      throw ConfigError("potential formulations need a cost model with a potential");
    for (const auto& f : c.output.formats)
      if (f != "csv" && f != "manifest" && f != "svg") throw ConfigError("unknown output format '" + f + "'");
    const auto& formats = c.output.formats;
    if (std::find(formats.begin(), formats.end(), "svg") != formats.end() &&
        std::find(formats.begin(), formats.end(), "csv") == formats.end())
      throw ConfigError("the svg format plots the CSV output; add \"csv\" to output.formats");
    if (c.output.name.empty() || c.output.name.find('/') != std::string::npos)
      throw ConfigError("output.name must be a plain file stem");
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
}

RunConfig preset_example(int id, ProblemKind problem, const ExampleOptions& options) {
  RunConfig c;
  c.problem = problem;
  switch (id) {
    case 1:
      c.model = {CostPreset::example1, 0.0, {}, {}};
      c.time.horizon = 5.0;
      break;
    case 2:
      c.model = {options.orientation, options.kappa, {}, {}};
      c.time.horizon = 0.25;
      break;
    default: throw ConfigError("unknown example id " + std::to_string(id) + " (expected 1 or 2)");
  }
  c.time.dt = options.dt ? *options.dt : (options.paper_exact ? 1e-5 : 1e-4);
  const bool dual = problem == ProblemKind::reduced_dual || problem == ProblemKind::potential_dual;
  c.grid = dual ? GridConfig{-options.dual_half_width, options.dual_half_width, options.n}
                : GridConfig{0.0, 1.0, options.n};
  switch (problem) {
    case ProblemKind::reduced_primal: c.terminal.preset = "linear-w"; break;
    case ProblemKind::potential_primal: c.terminal.preset = "potential-linear"; break;
    case ProblemKind::reduced_dual: c.terminal.preset = "dual-inverse-linear"; break;
    case ProblemKind::potential_dual: c.terminal.preset = "dual-potential-legendre"; break;
  }
  c.boundary = default_boundary(problem);
  c.snapshots = example_snapshots(c.time.horizon);
  c.output.name = "example" + std::to_string(id) + "-" + std::string(to_string(problem));
  return c;
}

SolutionTrace run_solver(const RunConfig& config) {
  validate(config);
  const CostModel model = build_model(config.model);
  const Grid1D grid(config.grid.a, config.grid.b, config.grid.n);
  const TimeMarch march(config.time.horizon, config.time.dt, config.snapshots);
  TerminalData terminal;
  terminal.preset = config.terminal.preset;
  terminal.params = config.terminal.params;
  return solve(config.problem, model, grid, march, terminal, config.boundary);
}

std::filesystem::path resolve_output_directory(const OutputConfig& output) {
  if (!output.directory.empty()) return output.directory;
  if (const char* env = std::getenv("TSMFG_OUTPUT_DIR"); env && *env) return env;
  return "tsmfg-out";
}

RunManifest run_from_config(const RunConfig& config) {
  validate(config);
  const auto has_format = [&](const char* f) {
    return std::find(config.output.formats.begin(), config.output.formats.end(), f) != config.output.formats.end();
  };

  const auto start = std::chrono::steady_clock::now();
  const SolutionTrace trace = run_solver(config);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  RunManifest manifest;
  const auto dir = resolve_output_directory(config.output);
  std::filesystem::create_directories(dir);
  manifest.csv_path = dir / (config.output.name + ".csv");
  manifest.manifest_path = dir / (config.output.name + ".manifest.json");
  manifest.wall_clock_seconds = seconds;

  std::vector<double> realized;
  for (const auto& s : trace.snapshots) realized.push_back(s.t);
  manifest.realized_times = realized;

  double max_speed = 0.0, max_cfl = 0.0, min_value = INFINITY, max_value = -INFINITY;
  for (const auto& d : trace.diagnostics) {
    max_speed = std::max(max_speed, d.max_speed);
    max_cfl = std::max(max_cfl, d.cfl);
    min_value = std::min(min_value, d.min_value);
    max_value = std::max(max_value, d.max_value);
  }
  json artifacts = json::object();
  if (has_format("csv")) artifacts["csv"] = manifest.csv_path.filename().string();
  if (has_format("svg")) {
    manifest.svg_path = dir / (config.output.name + ".svg");
    artifacts["svg"] = manifest.svg_path->filename().string();
  }
  json diagnostics{{"steps", trace.diagnostics.size()}};
  if (!trace.diagnostics.empty()) {
    diagnostics["max_speed"] = max_speed;
    diagnostics["max_cfl"] = max_cfl;
    diagnostics["min_value"] = min_value;
    diagnostics["max_value"] = max_value;
  }
  manifest.document = json{{"tool", kToolName},
                           {"version", tool_version()},
                           {"config", to_json(config)},
                           {"realized_snapshot_times", realized},
                           {"diagnostics", diagnostics},
                           {"warnings", trace.warnings},
                           {"artifacts", artifacts}};

  const auto timing_path = dir / (config.output.name + ".timing.json");
  std::vector<std::filesystem::path> written;
  try {
    if (has_format("csv")) {
      emit_csv(trace, manifest.csv_path);
      written.push_back(manifest.csv_path);
    }
    if (manifest.svg_path) {
      const PlotOptions options{config.output.plot_columns, std::string(to_string(config.problem)) + ", " +
                                                                std::string(to_string(config.model.preset))};
      emit_svg_plot(manifest.csv_path, *manifest.svg_path, options);
      written.push_back(*manifest.svg_path);
    }
    if (has_format("manifest")) {
      write_atomically(manifest.manifest_path, manifest.document.dump(2) + "\n");
      written.push_back(manifest.manifest_path);
    }
    write_atomically(timing_path, json{{"wall_clock_seconds", seconds}}.dump(2) + "\n");
  } catch (...) {
    std::error_code ec;
    for (const auto& p : written) std::filesystem::remove(p, ec);
    std::filesystem::remove(timing_path, ec);
    throw;
  }
  return manifest;
}

SweepResult example2_sweep(double dt) {
  SweepResult result;
  for (double kappa : {1.0, 2.0, 4.0, 8.0, 16.0}) {
    for (CostPreset orientation : {CostPreset::example2_gradient, CostPreset::example2_paper}) {
      ExampleOptions options;
      options.kappa = kappa;
      options.orientation = orientation;
      options.dt = dt;
      RunConfig config = preset_example(2, ProblemKind::reduced_primal, options);
      config.snapshots = {config.time.horizon, 0.0};
      const SolutionTrace trace = run_solver(config);
      const auto verdict = monotonicity_check(trace.final().field);
      const bool loss = verdict.kind == Monotonicity::non_monotone;
      result.entries.push_back({kappa, orientation, loss, verdict.violation_location});
      if (loss && !result.kappa) {
        result.kappa = kappa;
        result.orientation = orientation;
      }
    }
  }
  return result;
}

bool CheckReport::passed() const {
  return std::all_of(results.begin(), results.end(), [](const CheckResult& r) { return r.passed; });
}

namespace {

std::string number(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

void consistency_checks(CheckReport& report) {
  const CostModel models[] = {CostModel::example1(), CostModel::example2_gradient(kExample2DefaultKappa),
                              CostModel::example2_paper(kExample2DefaultKappa)};
  for (const auto& model : models) {
    const auto errors = coefficient_identity_errors(
        model, [&](double w, double z) { return reduced_q(w, z, model); },
        [](double w, double z) { return reduced_r(w, z); }, 1000, 7);
    report.results.push_back({"coefficient identities (" + model.name() + ")",
                              errors.q_error <= 1e-6 && errors.r_error <= 1e-6,
                              "max |q - dH/dzeta| = " + number(errors.q_error) +
                                  ", max |r + dH/dp| = " + number(errors.r_error)});

    const auto issues = model.check_invariants();
    report.results.push_back({"model invariants (" + model.name() + ")", issues.empty(),
                              issues.empty() ? "f = grad F, Lipschitz bound holds" : issues.front()});
  }

  const CostModel model = CostModel::example1();
  const double rate_error = rate_gradient_error(model, 100, 11);
  report.results.push_back(
      {"rate-gradient identity", rate_error <= 1e-6, "max |alpha* - dh/dz| = " + number(rate_error)});

  const double oracle_error = brute_force_hamiltonian_error(model, 100, 13);
  report.results.push_back(
      {"closed form vs brute-force minimization", oracle_error <= 1e-4, "max gap = " + number(oracle_error)});

  const auto assumptions = validate_assumptions(model, 0.5, 1000);
  report.results.push_back({"strong convexity with gamma = 1/2", assumptions.strongly_convex(),
                            std::to_string(assumptions.violations.size()) + " violations"});
  report.results.push_back({"superlinear growth", assumptions.superlinear,
                            "c/|alpha| at |alpha|=1e4: " + number(assumptions.growth.back().ratio)});
}

void example_checks(CheckReport& report) {
  {
    const SolutionTrace primal = run_solver(preset_example(1, ProblemKind::reduced_primal));
    const auto shocks = shock_indicator(primal);
    const auto& last = shocks.back();
    report.results.push_back({"example 1 reduced-primal shock", last.shock_flag && last.max_slope >= 20.0,
                              "max slope at t=0: " + number(last.max_slope) + " near zeta=" + number(last.location)});

    const SolutionTrace dual = run_solver(preset_example(1, ProblemKind::reduced_dual));
    double excess = 0.0;
    for (const auto& s : dual.snapshots) {
      if (s.step == 0) continue;
      const auto layer = boundary_layer(s.field, 1.0, 0.0);
      excess = std::max({excess, layer.left_excess, layer.right_excess});
    }
    report.results.push_back(
        {"example 1 dual boundary layer", excess > 0.25, "max |Z - boundary value| near the ends: " + number(excess)});

    try {
      const auto inv = inversion_consistency(primal, dual, primal.march.horizon() - 0.1);
      report.results.push_back(
          {"example 1 primal-dual inversion at T-0.1", inv.l_inf <= 5e-2, "L_inf = " + number(inv.l_inf)});
    } catch (const std::exception& e) {
      report.results.push_back({"example 1 primal-dual inversion at T-0.1", false, e.what()});
    }
  }
  {
    const SolutionTrace potential = run_solver(preset_example(1, ProblemKind::potential_primal));
    const SolutionTrace gradient =
        map_trace(potential, [](const Field& f) { return restrict_field(central_gradient(f), 0.1, 0.9); });
    const auto shocks = shock_indicator(gradient);
    report.results.push_back({"example 1 potential-primal shock in w_p",
                              shocks.back().shock_flag && shocks.back().max_slope >= 20.0,
                              "max slope at t=0: " + number(shocks.back().max_slope)});
  }
  {
    const SweepResult sweep = example2_sweep();
    const bool matches = sweep.kappa && *sweep.kappa == kExample2DefaultKappa && sweep.orientation &&
                         *sweep.orientation == kExample2DefaultPreset;
    std::string detail = "selected ";
    detail += sweep.kappa ? "kappa=" + number(*sweep.kappa) + " " + std::string(to_string(*sweep.orientation))
                          : "nothing";
    report.results.push_back({"example 2 default selection sweep", matches, detail});

    const SolutionTrace primal = run_solver(preset_example(2, ProblemKind::reduced_primal));
    const auto final_verdict = monotonicity_check(primal.final().field);
    const auto terminal_verdict = monotonicity_check(primal.terminal().field);
    report.results.push_back({"example 2 monotonicity loss",
                              final_verdict.kind == Monotonicity::non_monotone &&
                                  terminal_verdict.kind == Monotonicity::increasing,
                              final_verdict.violation_location
                                  ? "first violation near zeta=" + number(*final_verdict.violation_location)
                                  : "w(., 0) is monotone"});

    const SolutionTrace dual = run_solver(preset_example(2, ProblemKind::reduced_dual));
    bool raised = false;
    try {
      inversion_consistency(primal, dual, 0.0);
    } catch (const NotInvertibleError&) {
      raised = true;
    }
    report.results.push_back({"example 2 inversion fails at t=0", raised,
                              raised ? "not invertible, as expected" : "inversion unexpectedly succeeded"});
  }
}

}  // namespace

CheckReport check_suite(const std::string& name) {
  CheckReport report{name, {}};
  if (name == "consistency") {
    consistency_checks(report);
  } else if (name == "examples") {
    example_checks(report);
  } else {
    throw ConfigError("unknown check suite '" + name + "' (expected consistency or examples)");
  }
  return report;
}

}  // namespace tsmfg
