#include <cmath>
#include <random>

#include "doctest.h"
#include "tsmfg/checks.hpp"
#include "tsmfg/error.hpp"
#include "tsmfg/model.hpp"

using namespace tsmfg;

namespace {

// Direct minimization of c(i, theta, mu) + mu . Delta_i z over a rate grid.
double grid_minimum(const CostModel& model, const ValuePair& z, const ProbabilityPair& theta, State i) {
  double best = INFINITY;
  for (int a = 0; a <= 1000; ++a) {
    for (int b = 0; b <= 1000; ++b) {
      const RatePair mu{a * 0.01, b * 0.01};
      best = std::min(best, model.running_cost(i, theta, mu) + mu.alpha1 * (z.z1 - z[i]) + mu.alpha2 * (z.z2 - z[i]));
    }
  }
  return best;
}

const CostModel kExample1 = CostModel::example1();

}  // namespace

TEST_CASE("hamiltonian_h closed form") {
  CHECK(hamiltonian_h({0, 1}, {0.5, 0.5}, State::one, kExample1) == 0.5);
  CHECK(hamiltonian_h({1, 0}, {0.5, 0.5}, State::one, kExample1) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(hamiltonian_h({1, 0}, {0.3, 0.7}, State::two, kExample1) == doctest::Approx(0.3).epsilon(1e-15));
  CHECK(grid_minimum(kExample1, {1, 0}, {0.3, 0.7}, State::two) == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(grid_minimum(kExample1, {1, 0}, {0.5, 0.5}, State::one) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("invalid state index is rejected") {
  CHECK_THROWS_AS(to_state(0), DomainError);
  CHECK_THROWS_AS(to_state(3), DomainError);
  CHECK(to_state(2) == State::two);
  CHECK_THROWS_AS(hamiltonian_h({0, 0}, {0.5, 0.5}, static_cast<State>(3), kExample1), DomainError);
  CHECK_THROWS_AS(optimal_rate({0, 0}, {0.5, 0.5}, static_cast<State>(7)), DomainError);
}

TEST_CASE("probability pair validation") {
  CHECK_NOTHROW(ProbabilityPair(0.25, 0.75));
  CHECK_THROWS_AS(ProbabilityPair(0.5, 0.6), DomainError);
  CHECK_THROWS_AS(ProbabilityPair(-0.1, 1.1), DomainError);
  CHECK_THROWS_AS(ProbabilityPair::from_fraction(1.5), DomainError);
}

TEST_CASE("optimal_rate") {
  const ProbabilityPair theta{0.5, 0.5};
  const auto a = optimal_rate({1, 0}, theta, State::one);
  CHECK(a.alpha1 == -1.0);
  CHECK(a.alpha2 == 1.0);
  const auto b = optimal_rate({0, 1}, theta, State::one);
  CHECK(b.alpha1 == 0.0);
  CHECK(b.alpha2 == 0.0);
  const auto c = optimal_rate({0, 1}, theta, State::two);
  CHECK(c.alpha1 == 1.0);
  CHECK(c.alpha2 == -1.0);
}

TEST_CASE("drift_g1") {
  CHECK(drift_g1({0.7, 0.7}, {0.2, 0.8}) == 0.0);
  CHECK(drift_g1({1, 0}, {0.5, 0.5}) == -0.5);
  CHECK(drift_g1({0, 2}, {0.25, 0.75}) == 1.5);
}

TEST_CASE("reduced coefficients") {
  CHECK(reduced_r(0.0, 0.3) == 0.0);
  CHECK(reduced_r(-1.0, 0.0) == -1.0);
  CHECK(reduced_r(2.0, 0.5) == 1.0);
  CHECK_THROWS_AS(reduced_r(1.0, 1.2), DomainError);

  CHECK(reduced_q(0.0, 0.5, kExample1) == 0.0);
  CHECK(reduced_q(1.0, 0.0, kExample1) == 0.5);
  CHECK(reduced_q(-2.0, 1.0, kExample1) == 1.0);
  CHECK_THROWS_AS(reduced_q(0.0, -0.01, kExample1), DomainError);

  // r agrees with -g1 evaluated at z = (w, 0).
  for (double w : {-3.0, -0.5, 0.0, 0.25, 4.0})
    for (double zeta : {0.0, 0.3, 1.0})
      CHECK(reduced_r(w, zeta) == doctest::Approx(-drift_g1({w, 0.0}, ProbabilityPair::from_fraction(zeta))));

  for (double w = -5.0; w <= 5.0; w += 0.125) {
    CHECK(reduced_r(w, 0.0) <= 0.0);
    CHECK(reduced_r(w, 1.0) >= 0.0);
  }
}

TEST_CASE("reduced Hamiltonians") {
  CHECK(reduced_hamiltonian_primal(0.0, 0.5, kExample1) == 0.25);
  CHECK(reduced_hamiltonian_primal(2.0, 1.0, kExample1) == -2.0);
  CHECK(reduced_hamiltonian_primal(-2.0, 0.0, kExample1) == -2.0);
  CHECK(reduced_hamiltonian_dual(0.0, 0.5, kExample1) == 0.25);
  CHECK(reduced_hamiltonian_dual(2.0, 1.0, kExample1) == -2.0);
  CHECK(reduced_hamiltonian_dual(-1.0, 0.0, kExample1) == -0.5);

  const CostModel bare = kExample1.without_potential();
  CHECK_THROWS_AS(reduced_hamiltonian_primal(0.0, 0.5, bare), DomainError);
  CHECK_THROWS_AS(reduced_hamiltonian_dual(0.0, 0.5, bare), DomainError);

  // Concave in p.
  for (double zeta : {0.0, 0.4, 1.0})
    for (double p = -3.0; p <= 3.0; p += 0.25) {
      const double mid = reduced_hamiltonian_primal(p, zeta, kExample1);
      const double avg = 0.5 * (reduced_hamiltonian_primal(p - 0.1, zeta, kExample1) +
                                reduced_hamiltonian_primal(p + 0.1, zeta, kExample1));
      CHECK(mid >= avg - 1e-14);
    }
}

TEST_CASE("potential consistency identities") {
  for (const auto& model : {kExample1, CostModel::example2_gradient(8.0), CostModel::example2_paper(8.0)}) {
    constexpr double h = 1e-5;
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> wd(-5.0, 5.0);
    std::uniform_real_distribution<double> zd(0.01, 0.99);
    for (int s = 0; s < 1000; ++s) {
      double w = wd(rng);
      if (std::abs(w) < 1e-3) w = 1e-3;
      const double zeta = zd(rng);
      const double dz = (reduced_hamiltonian_primal(w, zeta + h, model) - reduced_hamiltonian_primal(w, zeta - h, model)) /
                        (2 * h);
      const double dp =
          (reduced_hamiltonian_primal(w + h, zeta, model) - reduced_hamiltonian_primal(w - h, zeta, model)) / (2 * h);
      REQUIRE(std::abs(reduced_q(w, zeta, model) - dz) <= 1e-6);
      REQUIRE(std::abs(reduced_r(w, zeta) + dp) <= 1e-6);
    }
  }
}

TEST_CASE("flipped q sign is detected by the identity check") {
  const auto model = kExample1;
  const auto good = coefficient_identity_errors(
      model, [&](double w, double z) { return reduced_q(w, z, model); }, [](double w, double z) { return reduced_r(w, z); },
      1000, 5);
  const auto flipped = coefficient_identity_errors(
      model, [&](double w, double z) { return -reduced_q(w, z, model); },
      [](double w, double z) { return reduced_r(w, z); }, 1000, 5);
  CHECK(good.q_error <= 1e-6);
  CHECK(flipped.q_error > 1e-2);
}

TEST_CASE("rate-gradient identity and antisymmetry") {
  constexpr double h = 1e-5;
  std::mt19937 rng(9);
  std::uniform_real_distribution<double> zd(-3.0, 3.0);
  std::uniform_real_distribution<double> td(0.0, 1.0);
  for (int s = 0; s < 200; ++s) {
    const ValuePair z{zd(rng), zd(rng)};
    if (std::abs(z.difference()) < 1e-3) continue;
    const auto theta = ProbabilityPair::from_fraction(td(rng));
    for (State i : {State::one, State::two}) {
      const auto alpha = optimal_rate(z, theta, i);
      CHECK(alpha.alpha1 == -alpha.alpha2);
      CHECK(alpha[other(i)] >= 0.0);
      const double d1 = (hamiltonian_h({z.z1 + h, z.z2}, theta, i, kExample1) -
                         hamiltonian_h({z.z1 - h, z.z2}, theta, i, kExample1)) / (2 * h);
      const double d2 = (hamiltonian_h({z.z1, z.z2 + h}, theta, i, kExample1) -
                         hamiltonian_h({z.z1, z.z2 - h}, theta, i, kExample1)) / (2 * h);
      CHECK(std::abs(alpha.alpha1 - d1) <= 1e-6);
      CHECK(std::abs(alpha.alpha2 - d2) <= 1e-6);
    }
  }
}

TEST_CASE("translation invariance is exact") {
  // Dyadic values keep the shifted differences exact.
  std::mt19937 rng(21);
  std::uniform_int_distribution<int> units(-2048, 2048);
  for (int s = 0; s < 200; ++s) {
    const ValuePair z{units(rng) / 512.0, units(rng) / 512.0};
    const double c = units(rng) / 256.0;
    const ValuePair shifted{z.z1 + c, z.z2 + c};
    const auto theta = ProbabilityPair::from_fraction((s % 11) / 10.0 > 1.0 ? 1.0 : (s % 11) / 10.0);
    for (State i : {State::one, State::two}) {
      CHECK(hamiltonian_h(z, theta, i, kExample1) == hamiltonian_h(shifted, theta, i, kExample1));
      CHECK(optimal_rate(z, theta, i).alpha1 == optimal_rate(shifted, theta, i).alpha1);
    }
    CHECK(drift_g1(z, theta) == drift_g1(shifted, theta));
    CHECK(reduced_q(z.difference(), theta.theta1(), kExample1) ==
          reduced_q(shifted.difference(), theta.theta1(), kExample1));
  }
}

TEST_CASE("closed form matches brute-force minimization") {
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> zd(-3.0, 3.0);
  std::uniform_real_distribution<double> td(0.0, 1.0);
  const CostModel ex2 = CostModel::example2_gradient(8.0);
  for (int s = 0; s < 12; ++s) {
    const ValuePair z{zd(rng), zd(rng)};
    const auto theta = ProbabilityPair::from_fraction(td(rng));
    const State i = s % 2 ? State::one : State::two;
    const auto& model = s % 3 ? kExample1 : ex2;
    CHECK(std::abs(hamiltonian_h(z, theta, i, model) - grid_minimum(model, z, theta, i)) <= 1e-4);
  }
}

TEST_CASE("cost model invariants") {
  CHECK(kExample1.check_invariants().empty());
  CHECK(CostModel::example2_gradient(8.0).check_invariants().empty());
  // The swapped orientation is not a planar gradient, but the derived
  // potential reproduces f on the simplex.
  CHECK(CostModel::example2_paper(8.0).check_invariants().empty());
  CHECK(CostModel::custom(Polynomial({0.5, 1.0, -3.0}), Polynomial({0.0, 2.0})).check_invariants().empty());

  const CostModel wrong("wrong", BivariatePolynomial({{1.0, 0, 0}, {-1.0, 1, 0}}),
                        BivariatePolynomial({{1.0, 0, 0}, {-1.0, 0, 1}}), BivariatePolynomial({{1.0, 2, 0}}), 1.0);
  CHECK_FALSE(wrong.check_invariants().empty());

  const CostModel steep("steep", BivariatePolynomial({{10.0, 1, 0}}), BivariatePolynomial({{0.0, 0, 0}}), std::nullopt,
                        1.0);
  CHECK_FALSE(steep.check_invariants().empty());
}

TEST_CASE("example 2 orientations differ only in the sign of f1 - f2") {
  const auto g = CostModel::example2_gradient(4.0);
  const auto p = CostModel::example2_paper(4.0);
  for (double zeta = 0.0; zeta <= 1.0; zeta += 0.05) {
    CHECK(g.f_difference(zeta) == doctest::Approx(-p.f_difference(zeta)).epsilon(1e-12));
    CHECK(g.f_difference(zeta) == doctest::Approx(8.0 * zeta * (1 - zeta) * (1 - 2 * zeta)).epsilon(1e-12));
  }
  CHECK(g.potential(0.5, 0.5) == doctest::Approx(4.0 / 16.0));
}

TEST_CASE("validate_assumptions") {
  const auto ok = validate_assumptions(kExample1, 0.5, 1000);
  CHECK(ok.violations.empty());
  CHECK(ok.superlinear);
  CHECK(ok.growth.size() == 5);

  const auto strict = validate_assumptions(kExample1, 0.6, 1000);
  CHECK_FALSE(strict.violations.empty());
  for (const auto& v : strict.violations) {
    CHECK(v.margin < 0.0);
    // Equal rates satisfy the inequality with equality.
    CHECK((v.alpha.alpha1 != v.alpha_prime.alpha1 || v.alpha.alpha2 != v.alpha_prime.alpha2));
  }
  CHECK_THROWS_AS(validate_assumptions(kExample1, 0.0, 10), DomainError);
}

TEST_CASE("polynomial roots") {
  const Polynomial cubic = Polynomial({-1.0, 1.0}) * Polynomial({-2.0, 1.0}) * Polynomial({3.0, 1.0});
  const auto roots = cubic.real_roots();
  REQUIRE(roots.size() == 3);
  CHECK(roots[0] == doctest::Approx(-3.0));
  CHECK(roots[1] == doctest::Approx(1.0));
  CHECK(roots[2] == doctest::Approx(2.0));
  CHECK(Polynomial({1.0, 0.0, 1.0}).real_roots().empty());
  const auto dbl = Polynomial({0.0, 0.0, 1.0}).real_roots();
  REQUIRE(dbl.size() == 1);
  CHECK(dbl[0] == doctest::Approx(0.0));
  CHECK(Polynomial().real_roots().empty());
  CHECK(Polynomial({2.0, -4.0}).real_roots() == std::vector<double>{0.5});

  // theta1 theta2 on the simplex is zeta - zeta^2.
  const Polynomial seg = BivariatePolynomial({{1.0, 1, 1}}).on_simplex();
  CHECK(seg(0.3) == doctest::Approx(0.3 * 0.7));
  CHECK(seg.degree() == 2);
}
