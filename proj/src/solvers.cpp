#include "tsmfg/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "tsmfg/analysis.hpp"
#include "tsmfg/error.hpp"

namespace tsmfg {

std::string_view to_string(ProblemKind kind) {
  switch (kind) {
    case ProblemKind::reduced_primal: return "reduced-primal";
    case ProblemKind::reduced_dual: return "reduced-dual";
    case ProblemKind::potential_primal: return "potential-primal";
    case ProblemKind::potential_dual: return "potential-dual";
  }
  return "unknown";
}

ProblemKind parse_problem_kind(std::string_view name) {
  for (ProblemKind k : {ProblemKind::reduced_primal, ProblemKind::reduced_dual, ProblemKind::potential_primal,
                        ProblemKind::potential_dual})
    if (to_string(k) == name) return k;
  throw ConfigError("unknown problem kind '" + std::string(name) + "'");
}

TerminalData TerminalData::from_field(Field f) {
  TerminalData data;
  data.preset = "field";
  data.field = std::move(f);
  return data;
}

std::vector<std::string> TerminalData::parameter_names(std::string_view preset) {
  if (preset == "constant") return {"value"};
  if (preset == "linear-w" || preset == "potential-linear" || preset == "dual-inverse-linear")
    return {"slope", "intercept"};
  if (preset == "dual-potential-legendre") return {"slope", "intercept", "legendre_nodes"};
  throw ConfigError("unknown terminal preset '" + std::string(preset) + "'");
}

bool TerminalData::is_known_preset(std::string_view name) {
  return name == "constant" || name == "linear-w" || name == "potential-linear" || name == "dual-inverse-linear" ||
         name == "dual-potential-legendre";
}

double TerminalData::param(const std::string& key, double fallback) const {
  const auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

Field TerminalData::sample(const Grid1D& grid) const {
  if (field) {
    if (!(field->grid() == grid)) throw ConfigError("terminal field grid does not match the problem grid");
    return *field;
  }
  const double slope = param("slope", 2.0);
  const double intercept = param("intercept", -1.0);
  if (preset == "constant") {
    const double value = param("value", 0.0);
    return Field::sample(grid, [value](double) { return value; });
  }
  if (preset == "linear-w") return Field::sample(grid, [=](double x) { return slope * x + intercept; });
  if (preset == "potential-linear")
    return Field::sample(grid, [=](double x) { return 0.5 * slope * x * x + intercept * x; });
  if (preset == "dual-inverse-linear") {
    if (slope == 0.0) throw ConfigError("dual-inverse-linear requires a nonzero slope");
    return Field::sample(grid, [=](double x) { return std::clamp((x - intercept) / slope, 0.0, 1.0); });
  }
  if (preset == "dual-potential-legendre") {
    const double nodes = param("legendre_nodes", 401.0);
    if (!(nodes >= 3.0) || nodes != std::floor(nodes)) throw ConfigError("legendre_nodes must be an integer >= 3");
    const Grid1D primal(0.0, 1.0, static_cast<std::size_t>(nodes) - 1);
    const Field potential =
        Field::sample(primal, [=](double x) { return 0.5 * slope * x * x + intercept * x; });
    return discrete_legendre(potential, grid);
  }
  throw ConfigError("unknown terminal preset '" + preset + "'");
}

const Snapshot& SolutionTrace::at(double t) const {
  for (const auto& s : snapshots)
    if (std::abs(s.t - t) <= 0.5 * march.dt()) return s;
  std::ostringstream os;
  os << "no snapshot at t=" << t << "; available:";
  for (const auto& s : snapshots) os << ' ' << s.t;
  throw DomainError(os.str());
}

BoundarySpec default_boundary(ProblemKind kind) {
  switch (kind) {
    case ProblemKind::reduced_primal: return {BoundaryKind::outflow, 0.0, 0.0, 10.0};
    case ProblemKind::reduced_dual: return {BoundaryKind::dirichlet, 1.0, 0.0, 10.0};
    case ProblemKind::potential_primal: return {BoundaryKind::large_dirichlet, 0.0, 0.0, 10.0};
    case ProblemKind::potential_dual: return {BoundaryKind::asymptotic_slope, 1.0, 0.0, 10.0};
  }
  return {};
}

GodunovHamiltonian potential_primal_hamiltonian(const CostModel& model) {
  if (!model.has_potential()) throw DomainError("potential-primal requires a cost model with potential F");
  GodunovHamiltonian H;
  H.eval = [model](double zeta, double p) { return -reduced_hamiltonian_primal(p, zeta, model); };
  H.critical_points = [](double) { return std::vector<double>{0.0}; };
  return H;
}

GodunovHamiltonian potential_dual_hamiltonian(const CostModel& model) {
  if (!model.has_potential()) throw DomainError("potential-dual requires a cost model with potential F");
  const Polynomial dF = model.segment_potential().derivative();
  GodunovHamiltonian H;
  H.eval = [model](double upsilon, double p) { return reduced_hamiltonian_dual(upsilon, p, model); };
  // dH/dp = F'(p) - upsilon |upsilon| / 2
  H.critical_points = [dF](double upsilon) {
    return (dF - Polynomial({0.5 * upsilon * std::abs(upsilon)})).real_roots();
  };
  return H;
}

namespace {

// Godunov Hamiltonian whose critical points are tabulated at the grid nodes.
GodunovHamiltonian tabulate(const GodunovHamiltonian& H, const Grid1D& grid) {
  std::vector<std::vector<double>> table(grid.nodes());
  for (std::size_t j = 0; j < grid.nodes(); ++j) table[j] = H.critical_points(grid.node(j));
  GodunovHamiltonian cached;
  cached.eval = H.eval;
  cached.critical_points = [table = std::move(table), grid, inner = H.critical_points](double x) {
    const double s = (x - grid.a()) / grid.spacing();
    const double j = std::round(s);
    if (j >= 0.0 && j < static_cast<double>(table.size()) && std::abs(s - j) < 1e-9)
      return table[static_cast<std::size_t>(j)];
    return inner(x);
  };
  return cached;
}

template <class Step, class Check>
SolutionTrace march(ProblemKind kind, const Grid1D& grid, const TimeMarch& time, Field initial, Step step,
                    Check check) {
  SolutionTrace trace{kind, grid, time, {}, {}, {}};

  std::vector<std::size_t> wanted;
  for (double t : time.snapshot_times()) wanted.push_back(time.step_for_time(t));
  std::sort(wanted.begin(), wanted.end());
  wanted.erase(std::unique(wanted.begin(), wanted.end()), wanted.end());
  auto next_wanted = wanted.begin();

  auto record = [&](std::size_t k, const Field& f) {
    if (next_wanted != wanted.end() && *next_wanted == k) {
      trace.snapshots.push_back({time.time_at_step(k), k, f});
      ++next_wanted;
    }
  };

  Field current = std::move(initial);
  record(0, current);
  trace.diagnostics.reserve(time.steps());
  for (std::size_t k = 1; k <= time.steps(); ++k) {
    StepOutcome outcome = [&] {
      try {
        return step(current);
      } catch (const NumericalError& e) {
        std::ostringstream os;
        os << to_string(kind) << ": " << e.what() << " at t=" << time.time_at_step(k);
        throw NumericalError(os.str(), k);
      }
    }();
    current = std::move(outcome.field);
    check(current, k, trace);
    trace.diagnostics.push_back({outcome.max_speed, outcome.cfl, current.min(), current.max()});
    record(k, current);
  }
  return trace;
}

void require_domain(const Grid1D& grid, double a, double b, std::string_view kind) {
  if (grid.a() != a || grid.b() != b) {
    std::ostringstream os;
    os << kind << " requires the domain [" << a << ", " << b << "]";
    throw DomainError(os.str());
  }
}

}  // namespace

SolutionTrace solve_reduced_primal(const CostModel& model, const Grid1D& grid, const TimeMarch& time,
                                   const TerminalData& terminal) {
  require_domain(grid, 0.0, 1.0, "reduced-primal");
  const NodalFunction velocity = [](double zeta, double w) { return reduced_r_unchecked(w, zeta); };
  const NodalFunction source = [&model](double zeta, double w) { return reduced_q_unchecked(w, zeta, model); };
  const BoundarySpec outflow{BoundaryKind::outflow, 0.0, 0.0, 10.0};

  auto step = [&](const Field& w) { return upwind_step(w, velocity, source, time.dt(), outflow); };
  // Outflow is only consistent while characteristics leave through both ends.
  auto check = [](const Field& w, std::size_t k, SolutionTrace&) {
    const double left = reduced_r_unchecked(w[0], 0.0);
    const double right = reduced_r_unchecked(w[w.size() - 1], 1.0);
    if (left > 0.0 || right < 0.0) {
      std::ostringstream os;
      os << "outflow sign condition violated: r(w,0)=" << left << ", r(w,1)=" << right;
      throw NumericalError(os.str(), k);
    }
  };
  return march(ProblemKind::reduced_primal, grid, time, terminal.sample(grid), step, check);
}

SolutionTrace solve_reduced_dual(const CostModel& model, const Grid1D& grid, const TimeMarch& time,
                                 const TerminalData& terminal, const BoundarySpec& boundary) {
  boundary.validate();
  const NodalFunction velocity = [&model](double upsilon, double z) {
    return reduced_q_unchecked(upsilon, z, model);
  };
  const NodalFunction source = [](double upsilon, double z) { return reduced_r_unchecked(upsilon, z); };

  auto step = [&](const Field& z) { return upwind_step(z, velocity, source, time.dt(), boundary); };
  bool range_warned = false;
  auto check = [&range_warned](const Field& z, std::size_t k, SolutionTrace& trace) {
    if (!range_warned && (z.min() < -0.05 || z.max() > 1.05)) {
      std::ostringstream os;
      os << "Z left [-0.05, 1.05] at step " << k << " (min " << z.min() << ", max " << z.max() << ")";
      trace.warnings.push_back(os.str());
      range_warned = true;
    }
  };
  SolutionTrace trace = march(ProblemKind::reduced_dual, grid, time, terminal.sample(grid), step, check);

  const Field& last = trace.final().field;
  const std::size_t n = grid.intervals();
  const double dx = grid.spacing();
  const double left_slope = std::abs(last[2] - last[1]) / dx;
  const double right_slope = std::abs(last[n - 1] - last[n - 2]) / dx;
  if (left_slope > 0.1 || right_slope > 0.1) {
    std::ostringstream os;
    os << "|Z_upsilon| near the truncated boundary is " << std::max(left_slope, right_slope)
       << " at the final snapshot; the domain may be too small";
    trace.warnings.push_back(os.str());
  }
  return trace;
}

SolutionTrace solve_potential_primal(const CostModel& model, const Grid1D& grid, const TimeMarch& time,
                                     const TerminalData& terminal, const BoundarySpec& boundary) {
  require_domain(grid, 0.0, 1.0, "potential-primal");
  boundary.validate();
  const GodunovHamiltonian H = potential_primal_hamiltonian(model);

  Field initial = terminal.sample(grid);
  if (boundary.kind == BoundaryKind::large_dirichlet) {
    std::vector<double> v(initial.values().begin(), initial.values().end());
    v.front() = boundary.large_value;
    v.back() = boundary.large_value;
    initial = Field(grid, std::move(v));
  }
  auto step = [&](const Field& phi) { return godunov_step(phi, H, time.dt(), boundary); };
  auto check = [](const Field&, std::size_t, SolutionTrace&) {};
  return march(ProblemKind::potential_primal, grid, time, std::move(initial), step, check);
}

SolutionTrace solve_potential_dual(const CostModel& model, const Grid1D& grid, const TimeMarch& time,
                                   const TerminalData& terminal, const BoundarySpec& boundary) {
  boundary.validate();
  const GodunovHamiltonian H = tabulate(potential_dual_hamiltonian(model), grid);
  auto step = [&](const Field& phi) { return godunov_step(phi, H, time.dt(), boundary); };
  auto check = [](const Field&, std::size_t, SolutionTrace&) {};
  return march(ProblemKind::potential_dual, grid, time, terminal.sample(grid), step, check);
}

SolutionTrace solve(ProblemKind kind, const CostModel& model, const Grid1D& grid, const TimeMarch& time,
                    const TerminalData& terminal, const BoundarySpec& boundary) {
  switch (kind) {
    case ProblemKind::reduced_primal: return solve_reduced_primal(model, grid, time, terminal);
    case ProblemKind::reduced_dual: return solve_reduced_dual(model, grid, time, terminal, boundary);
    case ProblemKind::potential_primal: return solve_potential_primal(model, grid, time, terminal, boundary);
    case ProblemKind::potential_dual: return solve_potential_dual(model, grid, time, terminal, boundary);
  }
  throw DomainError("unknown problem kind");
}

}  // namespace tsmfg
