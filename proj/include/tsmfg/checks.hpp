#pragma once

#include <cstddef>
#include <functional>

#include "tsmfg/model.hpp"

namespace tsmfg {

using ReducedCoefficient = std::function<double(double w, double zeta)>;

struct IdentityErrors {
  double q_error = 0.0;
  double r_error = 0.0;
};

/// Max |q - dH/dzeta| and |r + dH/dp| over random (w, zeta) with |w| >= 1e-3,
/// zeta in [0.01, 0.99], H the reduced primal Hamiltonian, central
/// differences with step 1e-5.
IdentityErrors coefficient_identity_errors(const CostModel& model, const ReducedCoefficient& q,
                                           const ReducedCoefficient& r, std::size_t samples, unsigned seed);

/// Max |alpha*_j - dh/dz^j| over random samples away from z1 = z2.
double rate_gradient_error(const CostModel& model, std::size_t samples, unsigned seed);

/// Max |h - min over a rate grid of c + mu . Delta_i z| (grid step `step`,
/// rates up to `max_rate`).
double brute_force_hamiltonian_error(const CostModel& model, std::size_t samples, unsigned seed, double step = 0.01,
                                     double max_rate = 10.0);

}  // namespace tsmfg
