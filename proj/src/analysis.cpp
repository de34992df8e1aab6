#include "tsmfg/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "tsmfg/error.hpp"

namespace tsmfg {

Field discrete_legendre(const Field& field, const Grid1D& dual_grid) {
  const auto x = field.grid().coordinates();
  const auto u = field.values();
  std::vector<double> out(dual_grid.nodes());
  for (std::size_t k = 0; k < out.size(); ++k) {
    const double y = dual_grid.node(k);
    double best = -INFINITY;
    for (std::size_t j = 0; j < x.size(); ++j) best = std::max(best, x[j] * y - u[j]);
    out[k] = best;
  }
  return Field(dual_grid, std::move(out));
}

MonotonicityVerdict monotonicity_check(const Field& field, double tolerance) {
  const auto u = field.values();
  const auto& grid = field.grid();
  int trend = 0;
  for (std::size_t j = 0; j + 1 < u.size(); ++j) {
    const double d = u[j + 1] - u[j];
    if (std::abs(d) <= tolerance) continue;
    const int sign = d > 0.0 ? 1 : -1;
    if (trend == 0) {
      trend = sign;
    } else if (sign != trend) {
      return {Monotonicity::non_monotone, j, 0.5 * (grid.node(j) + grid.node(j + 1))};
    }
  }
  return {trend < 0 ? Monotonicity::decreasing : Monotonicity::increasing, std::nullopt, std::nullopt};
}

std::vector<double> numerical_inverse(const Field& field, std::span<const double> query_values) {
  const auto u = field.values();
  const auto& grid = field.grid();
  const bool increasing = u.back() > u.front();
  for (std::size_t j = 0; j + 1 < u.size(); ++j) {
    if (increasing ? !(u[j + 1] > u[j]) : !(u[j + 1] < u[j])) {
      std::ostringstream os;
      os << "field is not invertible: not strictly monotone near x=" << grid.node(j);
      throw NotInvertibleError(os.str());
    }
  }
  const double lo = std::min(u.front(), u.back());
  const double hi = std::max(u.front(), u.back());

  std::vector<double> result;
  result.reserve(query_values.size());
  for (double v : query_values) {
    if (!(v >= lo && v <= hi)) {
      std::ostringstream os;
      os << "query value " << v << " outside the field range [" << lo << ", " << hi << "]";
      throw DomainError(os.str());
    }
    // First node whose value passes v in the monotone direction.
    std::size_t j = 0;
    if (increasing) {
      j = static_cast<std::size_t>(std::lower_bound(u.begin(), u.end(), v) - u.begin());
    } else {
      j = static_cast<std::size_t>(std::lower_bound(u.begin(), u.end(), v, std::greater<>()) - u.begin());
    }
    if (j == 0) {
      result.push_back(grid.node(0));
      continue;
    }
    const double lambda = (v - u[j - 1]) / (u[j] - u[j - 1]);
    result.push_back(grid.node(j - 1) + lambda * grid.spacing());
  }
  return result;
}

ShockReport slope_report(const Field& field) {
  const auto u = field.values();
  const auto& grid = field.grid();
  const double dx = grid.spacing();
  ShockReport report;
  report.location = 0.5 * (grid.node(0) + grid.node(1));
  for (std::size_t j = 0; j + 1 < u.size(); ++j) {
    const double jump = std::abs(u[j + 1] - u[j]);
    report.total_variation += jump;
    if (jump / dx > report.max_slope) {
      report.max_slope = jump / dx;
      report.location = 0.5 * (grid.node(j) + grid.node(j + 1));
    }
  }
  return report;
}

std::vector<ShockReport> shock_indicator(const SolutionTrace& trace, double slope_factor) {
  if (trace.snapshots.empty()) throw DomainError("shock_indicator needs a nonempty trace");
  const double reference = slope_report(trace.terminal().field).max_slope;
  std::vector<ShockReport> reports;
  for (const auto& s : trace.snapshots) {
    ShockReport r = slope_report(s.field);
    r.t = s.t;
    r.shock_flag = reference > 0.0 ? r.max_slope >= slope_factor * reference : false;
    reports.push_back(r);
  }
  return reports;
}

namespace {

ComparisonReport norms(std::span<const double> x, std::span<const double> diff) {
  ComparisonReport report;
  report.restricted_domain = {x.front(), x.back()};
  for (std::size_t k = 0; k < diff.size(); ++k) report.l_inf = std::max(report.l_inf, std::abs(diff[k]));
  double l2sq = 0.0;
  for (std::size_t k = 0; k + 1 < diff.size(); ++k) {
    const double h = x[k + 1] - x[k];
    report.l1 += 0.5 * h * (std::abs(diff[k]) + std::abs(diff[k + 1]));
    l2sq += 0.5 * h * (diff[k] * diff[k] + diff[k + 1] * diff[k + 1]);
  }
  report.l2 = std::sqrt(l2sq);
  return report;
}

}  // namespace

ComparisonReport compare_fields(const Field& f, const Field& g, Interval restrict) {
  const double lo = std::max({restrict.lo, f.grid().a(), g.grid().a()});
  const double hi = std::min({restrict.hi, f.grid().b(), g.grid().b()});
  const double tol = 1e-9 * f.grid().spacing();
  std::vector<double> x;
  std::vector<double> diff;
  for (std::size_t j = 0; j < f.size(); ++j) {
    const double xj = f.grid().node(j);
    if (xj < lo - tol || xj > hi + tol) continue;
    x.push_back(xj);
    diff.push_back(f[j] - g.interpolate(xj));
  }
  if (x.size() < 2) throw DomainError("compare_fields: restriction contains fewer than two common nodes");
  return norms(x, diff);
}

ComparisonReport inversion_consistency(const SolutionTrace& primal, const SolutionTrace& dual, double t,
                                       Interval restrict) {
  const Field w = restrict_field(primal.at(t).field, restrict.lo, restrict.hi);
  const Field& z = dual.at(t).field;
  const auto verdict = monotonicity_check(w, 0.0);
  if (verdict.kind == Monotonicity::non_monotone) {
    std::ostringstream os;
    os << "primal snapshot at t=" << t << " is not invertible: monotonicity lost near zeta="
       << *verdict.violation_location;
    throw NotInvertibleError(os.str());
  }
  const auto zeta = w.grid().coordinates();
  std::vector<double> diff(zeta.size());
  for (std::size_t j = 0; j < zeta.size(); ++j) diff[j] = z.interpolate(w[j]) - zeta[j];
  return norms(zeta, diff);
}

SolutionTrace map_trace(const SolutionTrace& trace, const std::function<Field(const Field&)>& fn) {
  SolutionTrace out{trace.problem, trace.grid, trace.march, {}, trace.diagnostics, trace.warnings};
  for (const auto& s : trace.snapshots) out.snapshots.push_back({s.t, s.step, fn(s.field)});
  return out;
}

}  // namespace tsmfg

namespace tsmfg {

BoundaryLayerReport boundary_layer(const Field& field, double left_value, double right_value, std::size_t nodes) {
  const std::size_t n = field.grid().intervals();
  if (2 * nodes + 1 > n) throw DomainError("boundary_layer: grid too coarse for the requested node count");
  BoundaryLayerReport report;
  for (std::size_t k = 1; k <= nodes; ++k) {
    report.left_excess = std::max(report.left_excess, std::abs(field[k] - left_value));
    report.right_excess = std::max(report.right_excess, std::abs(field[n - k] - right_value));
  }
  return report;
}

}  // namespace tsmfg
