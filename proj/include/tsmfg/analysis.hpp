#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "tsmfg/numerics.hpp"
#include "tsmfg/solvers.hpp"

namespace tsmfg {

struct Interval {
  double lo;
  double hi;
};

struct ComparisonReport {
  double l_inf = 0.0;
  double l1 = 0.0;
  double l2 = 0.0;
  Interval restricted_domain{0.0, 0.0};
};

struct ShockReport {
  double t = 0.0;
  double max_slope = 0.0;
  double total_variation = 0.0;
  bool shock_flag = false;
  /// Midpoint of the interval carrying the largest slope.
  double location = 0.0;
};

enum class Monotonicity { increasing, decreasing, non_monotone };

struct MonotonicityVerdict {
  Monotonicity kind = Monotonicity::increasing;
  /// Index j of the first difference u[j+1] - u[j] against the established trend.
  std::optional<std::size_t> first_violation;
  std::optional<double> violation_location;
};

/// Phi(upsilon_k) = max_j (zeta_j upsilon_k - Upsilon(zeta_j)) by direct scan.
Field discrete_legendre(const Field& field, const Grid1D& dual_grid);

/// Piecewise-linear preimages of each query value. Throws NotInvertibleError
/// when the field is not strictly monotone and DomainError for values outside
/// the field's range.
std::vector<double> numerical_inverse(const Field& field, std::span<const double> query_values);

/// Max one-sided slope and total variation of one field.
ShockReport slope_report(const Field& field);

/// One report per snapshot; the flag is raised when the max slope reaches
/// slope_factor times the terminal snapshot's max slope.
std::vector<ShockReport> shock_indicator(const SolutionTrace& trace, double slope_factor = 10.0);

MonotonicityVerdict monotonicity_check(const Field& field, double tolerance = 1e-10);

/// Norms of f - g on f's nodes inside restrict, g resampled linearly. L1 and
/// L2 use the trapezoid rule.
ComparisonReport compare_fields(const Field& f, const Field& g, Interval restrict);

/// Evaluates the dual Z at the primal values w(zeta_j, t) and compares against
/// zeta_j on the restriction. Throws NotInvertibleError when w is not strictly
/// monotone there.
ComparisonReport inversion_consistency(const SolutionTrace& primal, const SolutionTrace& dual, double t,
                                       Interval restrict = {0.1, 0.9});

/// Applies fn to every snapshot (e.g. gradient extraction from a potential).
SolutionTrace map_trace(const SolutionTrace& trace, const std::function<Field(const Field&)>& fn);

/// Largest |u_j - imposed value| over the `nodes` nodes next to each end
/// (excluding the end nodes themselves).
struct BoundaryLayerReport {
  double left_excess = 0.0;
  double right_excess = 0.0;
};

BoundaryLayerReport boundary_layer(const Field& field, double left_value, double right_value, std::size_t nodes = 5);

}  // namespace tsmfg
