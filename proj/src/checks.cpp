#include "tsmfg/checks.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace tsmfg {

IdentityErrors coefficient_identity_errors(const CostModel& model, const ReducedCoefficient& q,
                                           const ReducedCoefficient& r, std::size_t samples, unsigned seed) {
  constexpr double h = 1e-5;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> magnitude(1e-3, 5.0);
  std::uniform_real_distribution<double> fraction(0.01, 0.99);
  std::bernoulli_distribution negative(0.5);

  IdentityErrors errors;
  for (std::size_t s = 0; s < samples; ++s) {
    const double w = negative(rng) ? -magnitude(rng) : magnitude(rng);
    const double zeta = fraction(rng);
    const double dzeta = (reduced_hamiltonian_primal(w, zeta + h, model) -
                          reduced_hamiltonian_primal(w, zeta - h, model)) / (2 * h);
    const double dp = (reduced_hamiltonian_primal(w + h, zeta, model) -
                       reduced_hamiltonian_primal(w - h, zeta, model)) / (2 * h);
    errors.q_error = std::max(errors.q_error, std::abs(q(w, zeta) - dzeta));
    errors.r_error = std::max(errors.r_error, std::abs(r(w, zeta) + dp));
  }
  return errors;
}

double rate_gradient_error(const CostModel& model, std::size_t samples, unsigned seed) {
  constexpr double h = 1e-5;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> value(-3.0, 3.0);
  std::uniform_real_distribution<double> fraction(0.0, 1.0);

  double worst = 0.0;
  for (std::size_t s = 0; s < samples; ++s) {
    ValuePair z{value(rng), value(rng)};
    if (std::abs(z.difference()) < 1e-2) z.z2 += 0.5;
    const auto theta = ProbabilityPair::from_fraction(fraction(rng));
    const State i = (s % 2 == 0) ? State::one : State::two;
    const RatePair alpha = optimal_rate(z, theta, i);
    const double d1 = (hamiltonian_h({z.z1 + h, z.z2}, theta, i, model) -
                       hamiltonian_h({z.z1 - h, z.z2}, theta, i, model)) / (2 * h);
    const double d2 = (hamiltonian_h({z.z1, z.z2 + h}, theta, i, model) -
                       hamiltonian_h({z.z1, z.z2 - h}, theta, i, model)) / (2 * h);
    worst = std::max({worst, std::abs(alpha.alpha1 - d1), std::abs(alpha.alpha2 - d2)});
  }
  return worst;
}

double brute_force_hamiltonian_error(const CostModel& model, std::size_t samples, unsigned seed, double step,
                                     double max_rate) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> value(-3.0, 3.0);
  std::uniform_real_distribution<double> fraction(0.0, 1.0);
  const auto grid_points = static_cast<std::size_t>(std::llround(max_rate / step)) + 1;

  double worst = 0.0;
  for (std::size_t s = 0; s < samples; ++s) {
    const ValuePair z{value(rng), value(rng)};
    const auto theta = ProbabilityPair::from_fraction(fraction(rng));
    const State i = (s % 2 == 0) ? State::one : State::two;
    const double zi = z[i];
    double best = INFINITY;
    for (std::size_t a = 0; a < grid_points; ++a) {
      for (std::size_t b = 0; b < grid_points; ++b) {
        const RatePair mu{static_cast<double>(a) * step, static_cast<double>(b) * step};
        const double value_at = model.running_cost(i, theta, mu) + mu.alpha1 * (z.z1 - zi) + mu.alpha2 * (z.z2 - zi);
        best = std::min(best, value_at);
      }
    }
    worst = std::max(worst, std::abs(hamiltonian_h(z, theta, i, model) - best));
  }
  return worst;
}

}  // namespace tsmfg
