#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tsmfg/model.hpp"
#include "tsmfg/numerics.hpp"

namespace tsmfg {

enum class ProblemKind { reduced_primal, reduced_dual, potential_primal, potential_dual };

std::string_view to_string(ProblemKind kind);
/// Accepts "reduced-primal", "reduced-dual", "potential-primal", "potential-dual".
ProblemKind parse_problem_kind(std::string_view name);

/// Terminal profile at t = T, either a named preset or an explicit field.
///
/// Presets (parameters in brackets, with defaults):
///   constant                 u = value [value = 0]
///   linear-w                 w = slope*zeta + intercept [slope = 2, intercept = -1]
///   potential-linear         antiderivative of linear-w vanishing at 0
///   dual-inverse-linear      clamp((upsilon - intercept)/slope, 0, 1)
///   dual-potential-legendre  discrete Legendre transform of potential-linear
///                            sampled on [0,1] with `legendre_nodes` - 1 intervals [401]
struct TerminalData {
  std::string preset = "linear-w";
  std::map<std::string, double> params;
  std::optional<Field> field;

  static TerminalData from_field(Field f);
  static bool is_known_preset(std::string_view name);
  /// Parameters a preset accepts; throws ConfigError for unknown presets.
  static std::vector<std::string> parameter_names(std::string_view preset);

  Field sample(const Grid1D& grid) const;
  double param(const std::string& key, double fallback) const;
};

struct StepDiagnostics {
  double max_speed;
  double cfl;
  double min_value;
  double max_value;
};

struct Snapshot {
  double t;
  std::size_t step;
  Field field;
};

struct SolutionTrace {
  ProblemKind problem;
  Grid1D grid;
  TimeMarch march;
  /// Sorted by t descending, from T to 0.
  std::vector<Snapshot> snapshots;
  /// One entry per step.
  std::vector<StepDiagnostics> diagnostics;
  std::vector<std::string> warnings;

  const Snapshot& at(double t) const;
  const Snapshot& terminal() const { return snapshots.front(); }
  const Snapshot& final() const { return snapshots.back(); }
};

/// March w_tau + r(w, zeta) w_zeta = q(w, zeta) on [0,1] with outflow ends.
SolutionTrace solve_reduced_primal(const CostModel& model, const Grid1D& grid, const TimeMarch& march,
                                   const TerminalData& terminal);

/// March Z_tau + q(upsilon, Z) Z_upsilon = r(upsilon, Z) with Dirichlet data
/// (default Z = 1 on the left, Z = 0 on the right).
SolutionTrace solve_reduced_dual(const CostModel& model, const Grid1D& grid, const TimeMarch& march,
                                 const TerminalData& terminal,
                                 const BoundarySpec& boundary = {BoundaryKind::dirichlet, 1.0, 0.0, 10.0});

/// March Upsilon_tau - H(Upsilon_zeta, zeta) = 0 with boundary nodes held at a
/// large value.
SolutionTrace solve_potential_primal(const CostModel& model, const Grid1D& grid, const TimeMarch& march,
                                     const TerminalData& terminal,
                                     const BoundarySpec& boundary = {BoundaryKind::large_dirichlet, 0.0, 0.0, 10.0});

/// March Phi_tau + H(upsilon, Phi_upsilon) = 0 with ghost slopes 1 (left) and
/// 0 (right).
SolutionTrace solve_potential_dual(const CostModel& model, const Grid1D& grid, const TimeMarch& march,
                                   const TerminalData& terminal,
                                   const BoundarySpec& boundary = {BoundaryKind::asymptotic_slope, 1.0, 0.0, 10.0});

/// Dispatches on kind.
SolutionTrace solve(ProblemKind kind, const CostModel& model, const Grid1D& grid, const TimeMarch& march,
                    const TerminalData& terminal, const BoundarySpec& boundary);

/// Default boundary treatment for each problem kind.
BoundarySpec default_boundary(ProblemKind kind);

/// Hamiltonians handed to the Godunov kernel, with per-node critical points.
GodunovHamiltonian potential_primal_hamiltonian(const CostModel& model);
GodunovHamiltonian potential_dual_hamiltonian(const CostModel& model);

}  // namespace tsmfg
