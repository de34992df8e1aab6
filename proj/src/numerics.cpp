#include "tsmfg/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "tsmfg/error.hpp"

namespace tsmfg {

Grid1D::Grid1D(double a, double b, std::size_t n) : a_(a), b_(b), n_(n) {
  if (!std::isfinite(a) || !std::isfinite(b) || !(b > a)) throw DomainError("grid requires finite a < b");
  if (n < 2) throw DomainError("grid requires at least 2 intervals");
}

double Grid1D::node(std::size_t j) const {
  if (j == n_) return b_;
  return a_ + static_cast<double>(j) * spacing();
}

std::vector<double> Grid1D::coordinates() const {
  std::vector<double> x(nodes());
  for (std::size_t j = 0; j < x.size(); ++j) x[j] = node(j);
  return x;
}

Field::Field(Grid1D grid, std::vector<double> values) : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.nodes()) throw DomainError("field length does not match grid node count");
  for (std::size_t j = 0; j < values_.size(); ++j) {
    if (!std::isfinite(values_[j])) {
      std::ostringstream os;
      os << "non-finite field value at node " << j << " (x=" << grid_.node(j) << ")";
      throw NumericalError(os.str(), 0);
    }
  }
}

Field Field::sample(const Grid1D& grid, const std::function<double(double)>& fn) {
  std::vector<double> v(grid.nodes());
  for (std::size_t j = 0; j < v.size(); ++j) v[j] = fn(grid.node(j));
  return Field(grid, std::move(v));
}

double Field::min() const { return *std::min_element(values_.begin(), values_.end()); }
double Field::max() const { return *std::max_element(values_.begin(), values_.end()); }

double Field::interpolate(double x) const {
  if (x <= grid_.a()) return values_.front();
  if (x >= grid_.b()) return values_.back();
  const double s = (x - grid_.a()) / grid_.spacing();
  // Nodes (up to rounding of s) return the stored value.
  const double nearest = std::round(s);
  if (std::abs(s - nearest) <= 1e-9) return values_[static_cast<std::size_t>(nearest)];
  const std::size_t j = std::min(static_cast<std::size_t>(s), grid_.intervals() - 1);
  const double lambda = s - static_cast<double>(j);
  return (1.0 - lambda) * values_[j] + lambda * values_[j + 1];
}

TimeMarch::TimeMarch(double horizon, double dt, std::vector<double> snapshot_times)
    : horizon_(horizon), dt_(dt), snapshot_times_(std::move(snapshot_times)) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw DomainError("time step must be positive");
  if (!(horizon > 0.0) || !std::isfinite(horizon)) throw DomainError("horizon must be positive");
  const double ratio = horizon / dt;
  const double rounded = std::round(ratio);
  if (std::abs(ratio - rounded) > 1e-9 * std::max(1.0, rounded)) {
    std::ostringstream os;
    os << "horizon " << horizon << " is not an integer multiple of dt " << dt;
    throw DomainError(os.str());
  }
  steps_ = static_cast<std::size_t>(rounded);
  for (double t : snapshot_times_) {
    if (!(t >= -0.5 * dt && t <= horizon + 0.5 * dt)) {
      std::ostringstream os;
      os << "snapshot time " << t << " outside [0, " << horizon << "]";
      throw DomainError(os.str());
    }
  }
  std::sort(snapshot_times_.begin(), snapshot_times_.end(), std::greater<>());
}

std::size_t TimeMarch::step_for_time(double t) const {
  const double k = std::round((horizon_ - t) / dt_);
  return static_cast<std::size_t>(std::clamp(k, 0.0, static_cast<double>(steps_)));
}

void BoundarySpec::validate() const {
  if (!std::isfinite(left_value) || !std::isfinite(right_value) || !std::isfinite(large_value))
    throw DomainError("boundary values must be finite");
  if (kind == BoundaryKind::large_dirichlet && !(large_value > 0.0))
    throw DomainError("large Dirichlet value must be positive");
}

double cfl_number(double max_speed, double spacing, double dt) { return max_speed * dt / spacing; }

double cfl_number(double max_speed, const Grid1D& grid, const TimeMarch& march) {
  return cfl_number(max_speed, grid.spacing(), march.dt());
}

namespace {

void check_cfl(double cfl) {
  if (cfl > 1.0) {
    std::ostringstream os;
    os << "CFL number " << cfl << " exceeds 1";
    throw NumericalError(os.str(), 0);
  }
}

}  // namespace

StepOutcome upwind_step(const Field& field, const NodalFunction& velocity, const NodalFunction& source, double dt,
                        const BoundarySpec& boundary) {
  const Grid1D& grid = field.grid();
  const std::size_t n = grid.intervals();
  const double dx = grid.spacing();
  const auto u = field.values();

  std::vector<double> next(u.size());
  double max_speed = 0.0;

  auto euler = [&](std::size_t j, double v, double derivative) {
    return u[j] - dt * v * derivative + dt * source(grid.node(j), u[j]);
  };

  for (std::size_t j = 1; j < n; ++j) {
    const double x = grid.node(j);
    const double v = velocity(x, u[j]);
    max_speed = std::max(max_speed, std::abs(v));
    const double derivative = (v >= 0.0) ? (u[j] - u[j - 1]) / dx : (u[j + 1] - u[j]) / dx;
    next[j] = euler(j, v, derivative);
  }

  const double v_left = velocity(grid.a(), u[0]);
  const double v_right = velocity(grid.b(), u[n]);
  max_speed = std::max({max_speed, std::abs(v_left), std::abs(v_right)});
  const double forward = (u[1] - u[0]) / dx;
  const double backward = (u[n] - u[n - 1]) / dx;

  switch (boundary.kind) {
    case BoundaryKind::outflow:
      // Inflow nodes are extrapolated with zero gradient.
      next[0] = euler(0, v_left, v_left < 0.0 ? forward : 0.0);
      next[n] = euler(n, v_right, v_right >= 0.0 ? backward : 0.0);
      break;
    case BoundaryKind::dirichlet:
    case BoundaryKind::large_dirichlet: {
      const bool large = boundary.kind == BoundaryKind::large_dirichlet;
      next[0] = (v_left < 0.0) ? euler(0, v_left, forward) : (large ? boundary.large_value : boundary.left_value);
      next[n] = (v_right >= 0.0) ? euler(n, v_right, backward) : (large ? boundary.large_value : boundary.right_value);
      break;
    }
    case BoundaryKind::asymptotic_slope:
      next[0] = next[1] - boundary.left_value * dx;
      next[n] = next[n - 1] + boundary.right_value * dx;
      break;
  }

  const double cfl = cfl_number(max_speed, dx, dt);
  check_cfl(cfl);
  return {Field(grid, std::move(next)), max_speed, cfl};
}

GodunovFlux godunov_flux_detail(const GodunovHamiltonian& H, double x, double p_left, double p_right) {
  const bool minimize = p_left <= p_right;
  const double lo = std::min(p_left, p_right);
  const double hi = std::max(p_left, p_right);

  GodunovFlux best{H.eval(x, lo), lo};
  auto consider = [&](double p) {
    const double value = H.eval(x, p);
    if (minimize ? value < best.value : value > best.value) best = {value, p};
  };
  consider(hi);
  if (H.critical_points) {
    for (double p : H.critical_points(x))
      if (p > lo && p < hi) consider(p);
  } else if (hi > lo) {
    constexpr int samples = 33;
    for (int k = 1; k < samples - 1; ++k) consider(lo + (hi - lo) * k / (samples - 1));
  }
  return best;
}

double godunov_flux(const GodunovHamiltonian& H, double x, double p_left, double p_right) {
  return godunov_flux_detail(H, x, p_left, p_right).value;
}

StepOutcome godunov_step(const Field& field, const GodunovHamiltonian& H, double dt, const BoundarySpec& boundary) {
  const Grid1D& grid = field.grid();
  const std::size_t n = grid.intervals();
  const double dx = grid.spacing();
  const auto phi = field.values();

  std::vector<double> next(phi.size());
  double max_speed = 0.0;
  for (std::size_t j = 1; j < n; ++j) {
    const double x = grid.node(j);
    const double backward = (phi[j] - phi[j - 1]) / dx;
    const double forward = (phi[j + 1] - phi[j]) / dx;
    const GodunovFlux flux = godunov_flux_detail(H, x, backward, forward);
    next[j] = phi[j] - dt * flux.value;

    const double h = 1e-6 * std::max(1.0, std::abs(flux.argument));
    const double speed = std::abs(H.eval(x, flux.argument + h) - H.eval(x, flux.argument - h)) / (2.0 * h);
    max_speed = std::max(max_speed, speed);
  }

  switch (boundary.kind) {
    case BoundaryKind::outflow:
      next[0] = 2.0 * next[1] - next[2];
      next[n] = 2.0 * next[n - 1] - next[n - 2];
      break;
    case BoundaryKind::dirichlet:
      next[0] = boundary.left_value;
      next[n] = boundary.right_value;
      break;
    case BoundaryKind::large_dirichlet:
      next[0] = boundary.large_value;
      next[n] = boundary.large_value;
      break;
    case BoundaryKind::asymptotic_slope:
      next[0] = next[1] - boundary.left_value * dx;
      next[n] = next[n - 1] + boundary.right_value * dx;
      break;
  }

  const double cfl = cfl_number(max_speed, dx, dt);
  check_cfl(cfl);
  return {Field(grid, std::move(next)), max_speed, cfl};
}

Field central_gradient(const Field& field) {
  const Grid1D& grid = field.grid();
  const std::size_t n = grid.intervals();
  const double dx = grid.spacing();
  const auto u = field.values();
  std::vector<double> g(u.size());
  g[0] = (-3.0 * u[0] + 4.0 * u[1] - u[2]) / (2.0 * dx);
  for (std::size_t j = 1; j < n; ++j) g[j] = (u[j + 1] - u[j - 1]) / (2.0 * dx);
  g[n] = (3.0 * u[n] - 4.0 * u[n - 1] + u[n - 2]) / (2.0 * dx);
  return Field(grid, std::move(g));
}

Field restrict_field(const Field& field, double lo, double hi) {
  const Grid1D& grid = field.grid();
  const double tol = 1e-9 * grid.spacing();
  std::size_t first = grid.nodes();
  std::size_t last = 0;
  for (std::size_t j = 0; j < grid.nodes(); ++j) {
    const double x = grid.node(j);
    if (x >= lo - tol && x <= hi + tol) {
      first = std::min(first, j);
      last = j;
    }
  }
  if (first >= grid.nodes() || last < first + 2) throw DomainError("restriction keeps fewer than 3 nodes");
  const auto v = field.values();
  return Field(Grid1D(grid.node(first), grid.node(last), last - first),
               std::vector<double>(v.begin() + static_cast<std::ptrdiff_t>(first),
                                   v.begin() + static_cast<std::ptrdiff_t>(last) + 1));
}

}  // namespace tsmfg
