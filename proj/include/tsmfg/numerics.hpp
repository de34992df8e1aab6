#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace tsmfg {

/// Uniform grid with n intervals on [a, b].
class Grid1D {
 public:
  Grid1D(double a, double b, std::size_t n);

  double a() const { return a_; }
  double b() const { return b_; }
  std::size_t intervals() const { return n_; }
  std::size_t nodes() const { return n_ + 1; }
  double spacing() const { return (b_ - a_) / static_cast<double>(n_); }
  double node(std::size_t j) const;
  std::vector<double> coordinates() const;

  bool operator==(const Grid1D&) const = default;

 private:
  double a_;
  double b_;
  std::size_t n_;
};

/// Samples of a function at the nodes of a grid. Always finite.
class Field {
 public:
  Field(Grid1D grid, std::vector<double> values);
  static Field sample(const Grid1D& grid, const std::function<double(double)>& fn);

  const Grid1D& grid() const { return grid_; }
  std::span<const double> values() const { return values_; }
  double operator[](std::size_t j) const { return values_[j]; }
  std::size_t size() const { return values_.size(); }

  double min() const;
  double max() const;
  /// Piecewise-linear interpolant; clamps to the end values outside [a, b].
  double interpolate(double x) const;

 private:
  Grid1D grid_;
  std::vector<double> values_;
};

/// Time horizon of a backward march from t = T to t = 0.
class TimeMarch {
 public:
  /// T / dt must be an integer step count up to rounding.
  TimeMarch(double horizon, double dt, std::vector<double> snapshot_times);

  double horizon() const { return horizon_; }
  double dt() const { return dt_; }
  std::size_t steps() const { return steps_; }
  const std::vector<double>& snapshot_times() const { return snapshot_times_; }

  /// Number of steps taken (in tau = T - t) when a requested time is reached.
  std::size_t step_for_time(double t) const;
  double time_at_step(std::size_t k) const {
    return k == 0 ? horizon_ : static_cast<double>(steps_ - k) * dt_;
  }

 private:
  double horizon_;
  double dt_;
  std::size_t steps_;
  std::vector<double> snapshot_times_;
};

enum class BoundaryKind {
  /// One-sided interior differences at outflow nodes, zero gradient at inflow
  /// nodes; nothing imposed.
  outflow,
  /// left_value / right_value imposed at inflow boundaries.
  dirichlet,
  /// Both boundary nodes held at large_value (state constraints for HJ).
  large_dirichlet,
  /// Boundary nodes extrapolated from their neighbour with the prescribed
  /// slopes left_value / right_value (asymptotically linear data).
  asymptotic_slope,
};

struct BoundarySpec {
  BoundaryKind kind = BoundaryKind::outflow;
  double left_value = 0.0;
  double right_value = 0.0;
  double large_value = 10.0;

  void validate() const;
  bool operator==(const BoundarySpec&) const = default;
};

/// Field after one explicit step plus what the step observed.
struct StepOutcome {
  Field field;
  double max_speed = 0.0;
  double cfl = 0.0;
};

double cfl_number(double max_speed, double spacing, double dt);
double cfl_number(double max_speed, const Grid1D& grid, const TimeMarch& march);

using NodalFunction = std::function<double(double x, double u)>;

/// One explicit Euler step of u_tau + v(x,u) u_x = s(x,u) with first-order
/// upwinding (backward difference when v >= 0). Throws NumericalError on a
/// CFL number above one or a non-finite result.
StepOutcome upwind_step(const Field& field, const NodalFunction& velocity, const NodalFunction& source, double dt,
                        const BoundarySpec& boundary);

/// Hamiltonian H(x, p) for phi_tau + H(x, phi_x) = 0.
struct GodunovHamiltonian {
  std::function<double(double x, double p)> eval;
  /// Points where dH/dp may vanish or kink. When empty, the flux falls back to
  /// dense sampling of each interval.
  std::function<std::vector<double>(double x)> critical_points;
};

struct GodunovFlux {
  double value;
  /// Slope at which the extremum is attained.
  double argument;
};

/// min over [p_left, p_right] when p_left <= p_right, else max over [p_right, p_left].
double godunov_flux(const GodunovHamiltonian& H, double x, double p_left, double p_right);
GodunovFlux godunov_flux_detail(const GodunovHamiltonian& H, double x, double p_left, double p_right);

/// One explicit Euler step of phi_tau + H(x, phi_x) = 0 with the Godunov
/// flux applied to the one-sided differences at every interior node. The
/// reported speed is |dH/dp| at the selected slope.
StepOutcome godunov_step(const Field& field, const GodunovHamiltonian& H, double dt, const BoundarySpec& boundary);

/// Central differences inside, second-order one-sided differences at the ends.
Field central_gradient(const Field& field);

/// Sub-field on the nodes with coordinates in [lo, hi].
Field restrict_field(const Field& field, double lo, double hi);

}  // namespace tsmfg
