#include <cmath>
#include <random>

#include "doctest.h"
#include "tsmfg/analysis.hpp"
#include "tsmfg/error.hpp"

using namespace tsmfg;

namespace {

const Grid1D kUnit(0.0, 1.0, 400);
const Grid1D kDual(-2.0, 2.0, 400);

Field sample(const Grid1D& g, double (*fn)(double)) { return Field::sample(g, fn); }

double upsilon_t(double z) { return z * z - z; }

SolutionTrace single_snapshot_trace(ProblemKind kind, const Field& f, double T) {
  return SolutionTrace{kind, f.grid(), TimeMarch(T, T, {T}), {{T, 0, f}}, {}, {}};
}

}  // namespace

TEST_CASE("discrete_legendre examples") {
  const Field ups = sample(kUnit, upsilon_t);
  const Field phi = discrete_legendre(ups, kDual);
  CHECK(std::abs(phi[200] - 0.25) <= 0.0025 * 0.0025);
  const Field zero = sample(kUnit, [](double) { return 0.0; });
  const Field plus = discrete_legendre(zero, kDual);
  for (std::size_t k = 0; k < kDual.nodes(); ++k) CHECK(plus[k] == doctest::Approx(positive_part(kDual.node(k))));

  for (std::size_t k = 0; k < kDual.nodes(); ++k) {
    const double u = kDual.node(k);
    const double exact = u < -1 ? 0.0 : (u > 1 ? u : 0.25 * (u + 1) * (u + 1));
    CHECK(std::abs(phi[k] - exact) <= 2e-3);
  }

  const Field back = discrete_legendre(phi, kUnit);
  for (std::size_t j = 0; j < kUnit.nodes(); ++j) CHECK(std::abs(back[j] - ups[j]) <= 2e-3);
}

TEST_CASE("discrete_legendre convexity, monotonicity and Fenchel inequality") {
  std::mt19937 rng(8);
  std::uniform_real_distribution<double> amp(-1.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    const double a = amp(rng), b = amp(rng), c = 3.0 + 5.0 * std::abs(amp(rng));
    const Field f = Field::sample(kUnit, [&](double z) { return a * std::sin(c * z) + b * z * z; });
    const Field phi = discrete_legendre(f, kDual);
    for (std::size_t k = 1; k + 1 < kDual.nodes(); ++k) {
      CHECK(phi[k] <= 0.5 * (phi[k - 1] + phi[k + 1]) + 1e-12);
      CHECK(phi[k] >= phi[k - 1] - 1e-12);
    }
    const Field back = discrete_legendre(phi, kUnit);
    for (std::size_t j = 0; j < kUnit.nodes(); ++j) CHECK(back[j] <= f[j] + 1e-12);
  }
}

TEST_CASE("numerical_inverse") {
  const Field w = Field::sample(Grid1D(0.0, 1.0, 200), [](double z) { return 2 * z - 1; });
  const std::vector<double> q{0.0, 0.5};
  const auto x = numerical_inverse(w, q);
  CHECK(x[0] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(x[1] == doctest::Approx(0.75).epsilon(1e-15));

  const Field bump = Field::sample(kUnit, [](double z) { return std::sin(6 * z); });
  CHECK_THROWS_AS(numerical_inverse(bump, q), NotInvertibleError);
  const std::vector<double> far{3.0};
  CHECK_THROWS_AS(numerical_inverse(w, far), DomainError);

  const Field dec = Field::sample(kUnit, [](double z) { return std::exp(-2 * z); });
  const std::vector<double> v{0.5};
  CHECK(numerical_inverse(dec, v)[0] == doctest::Approx(std::log(2.0) / 2).epsilon(1e-5));
}

TEST_CASE("numerical_inverse round trip") {
  const Grid1D g(0.0, 1.0, 100);
  const Field f = Field::sample(g, [](double z) { return z + 0.3 * z * z * z; });
  std::vector<double> xs, values;
  for (int k = 0; k <= 50; ++k) {
    xs.push_back(k / 50.0 * 0.999);
    values.push_back(f.interpolate(xs.back()));
  }
  const auto back = numerical_inverse(f, values);
  for (std::size_t k = 0; k < xs.size(); ++k) CHECK(std::abs(back[k] - xs[k]) <= 1e-12);
}

TEST_CASE("slope, shock and monotonicity reports") {
  const Field flat = sample(kUnit, [](double) { return 2.0; });
  const auto r = slope_report(flat);
  CHECK(r.max_slope == 0.0);
  CHECK(r.total_variation == 0.0);
  const auto trace = single_snapshot_trace(ProblemKind::reduced_primal, flat, 1.0);
  CHECK_FALSE(shock_indicator(trace).front().shock_flag);

  const Field lin = sample(kUnit, [](double z) { return 2 * z - 1; });
  CHECK(slope_report(lin).max_slope == doctest::Approx(2.0));
  CHECK(slope_report(lin).total_variation == doctest::Approx(2.0));
  CHECK(monotonicity_check(lin).kind == Monotonicity::increasing);
  CHECK(monotonicity_check(flat).kind == Monotonicity::increasing);
  CHECK(monotonicity_check(sample(kUnit, [](double z) { return -z; })).kind == Monotonicity::decreasing);

  const Field bump = sample(kUnit, [](double z) { return std::sin(4 * z); });
  const auto v = monotonicity_check(bump);
  CHECK(v.kind == Monotonicity::non_monotone);
  REQUIRE(v.violation_location);
  CHECK(*v.violation_location == doctest::Approx(M_PI / 8).epsilon(0.01));

  // A steep front: flagged once the slope is ten times the terminal one.
  const Field front = sample(kUnit, [](double z) { return std::tanh(40 * (z - 0.5)); });
  SolutionTrace two{ProblemKind::reduced_primal, kUnit, TimeMarch(1.0, 1.0, {1.0, 0.0}), {{1.0, 0, lin}, {0.0, 1, front}},
                    {}, {}};
  const auto reports = shock_indicator(two);
  CHECK_FALSE(reports[0].shock_flag);
  CHECK(reports[1].shock_flag);
  CHECK(reports[1].location == doctest::Approx(0.5).epsilon(0.01));
}

TEST_CASE("reports are invariant under adding a constant") {
  std::mt19937 rng(12);
  std::uniform_real_distribution<double> shift(-50.0, 50.0);
  const Grid1D g(0.0, 1.0, 64);
  const Field f = Field::sample(g, [](double z) { return std::sin(9 * z) + 0.2 * z; });
  for (int k = 0; k < 10; ++k) {
    // Dyadic shifts keep the differences exact.
    const double c = std::round(shift(rng) * 8) / 8;
    const Field g2 = Field::sample(g, [&](double z) { return f.interpolate(z) + c; });
    const auto a = slope_report(f), b = slope_report(g2);
    CHECK(a.max_slope == doctest::Approx(b.max_slope).epsilon(1e-12));
    CHECK(a.total_variation == doctest::Approx(b.total_variation).epsilon(1e-12));
    CHECK(monotonicity_check(f).first_violation == monotonicity_check(g2).first_violation);
  }
}

TEST_CASE("compare_fields") {
  const Field zeta = sample(kUnit, [](double z) { return z; });
  const Field shifted = sample(kUnit, [](double z) { return z + 0.01; });
  const auto same = compare_fields(zeta, zeta, {0.0, 1.0});
  CHECK(same.l_inf == 0.0);
  CHECK(same.l1 == 0.0);
  CHECK(same.l2 == 0.0);
  const auto off = compare_fields(zeta, shifted, {0.0, 1.0});
  CHECK(off.l_inf == doctest::Approx(0.01));
  CHECK(off.l1 == doctest::Approx(0.01));
  const auto unit = compare_fields(sample(kUnit, [](double) { return 1.0; }), sample(kUnit, [](double) { return 0.0; }),
                                   {0.0, 1.0});
  CHECK(unit.l_inf == 1.0);
  CHECK(unit.l1 == doctest::Approx(1.0));
  CHECK(unit.l2 == doctest::Approx(1.0));

  const Field coarse = Field::sample(Grid1D(0.0, 1.0, 37), [](double z) { return z * z; });
  const Field fine = Field::sample(Grid1D(0.0, 1.0, 200), [](double z) { return std::sin(z); });
  const auto ab = compare_fields(coarse, fine, {0.0, 1.0});
  const auto ba = compare_fields(fine, coarse, {0.0, 1.0});
  CHECK(std::abs(ab.l_inf - ba.l_inf) <= 1e-3);
  CHECK(std::abs(ab.l1 - ba.l1) <= 1e-3);

  CHECK_THROWS_AS(compare_fields(zeta, Field::sample(Grid1D(2.0, 3.0, 10), [](double) { return 0.0; }), {0.0, 1.0}),
                  DomainError);
}

TEST_CASE("inversion consistency at the terminal time") {
  const Grid1D g(0.0, 1.0, 200), d(-2.0, 2.0, 200);
  const auto model = CostModel::example1();
  const TimeMarch m(0.1, 1e-4, {0.1});
  const auto w = solve_reduced_primal(model, g, m, TerminalData{});
  const auto z = solve_reduced_dual(model, d, m, TerminalData{"dual-inverse-linear", {}, std::nullopt});
  const auto rep = inversion_consistency(w, z, 0.1);
  CHECK(rep.l_inf <= 1e-14);
}

TEST_CASE("inversion consistency rejects non-monotone primal data") {
  const Field bump = sample(kUnit, [](double z) { return std::sin(8 * z); });
  const Field dual = Field::sample(kDual, [](double u) { return std::clamp(0.5 * (u + 1), 0.0, 1.0); });
  CHECK_THROWS_AS(inversion_consistency(single_snapshot_trace(ProblemKind::reduced_primal, bump, 1.0),
                                        single_snapshot_trace(ProblemKind::reduced_dual, dual, 1.0), 1.0),
                  NotInvertibleError);
}

TEST_CASE("Example II loses monotonicity and cannot be inverted") {
  const auto model = CostModel::example2_gradient(8.0);
  const Grid1D g(0.0, 1.0, 200), d(-2.0, 2.0, 200);
  const TimeMarch m(0.25, 1e-4, {0.25, 0.0});
  const auto w = solve_reduced_primal(model, g, m, TerminalData{});
  const auto z = solve_reduced_dual(model, d, m, TerminalData{"dual-inverse-linear", {}, std::nullopt});
  CHECK(monotonicity_check(w.terminal().field).kind == Monotonicity::increasing);
  CHECK(monotonicity_check(w.final().field).kind == Monotonicity::non_monotone);
  CHECK_THROWS_AS(inversion_consistency(w, z, 0.0), NotInvertibleError);
}

TEST_CASE("boundary_layer") {
  const Grid1D g(0.0, 1.0, 20);
  const Field f = Field::sample(g, [](double z) { return z; });
  const auto r = boundary_layer(f, 1.0, 0.0);
  CHECK(r.left_excess == doctest::Approx(1.0 - 0.05));
  CHECK(r.right_excess == doctest::Approx(1.0 - 0.05));
  CHECK_THROWS_AS(boundary_layer(f, 0.0, 0.0, 10), DomainError);
}

TEST_CASE("map_trace") {
  const Field f = sample(kUnit, upsilon_t);
  const auto mapped = map_trace(single_snapshot_trace(ProblemKind::potential_primal, f, 1.0), central_gradient);
  CHECK(mapped.snapshots.front().field[200] == doctest::Approx(0.0).epsilon(1e-12));
}
