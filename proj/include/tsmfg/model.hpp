#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tsmfg/polynomial.hpp"

namespace tsmfg {

enum class State { one = 1, two = 2 };

/// Throws DomainError unless index is 1 or 2.
State to_state(int index);
State other(State i);

/// Population distribution over the two states.
class ProbabilityPair {
 public:
  /// Validates theta1 + theta2 = 1 (within 1e-12) and nonnegativity.
  ProbabilityPair(double theta1, double theta2);
  /// theta = (zeta, 1 - zeta); zeta must lie in [0,1].
  static ProbabilityPair from_fraction(double zeta);

  double theta1() const { return theta1_; }
  double theta2() const { return theta2_; }
  double operator[](State i) const { return i == State::one ? theta1_ : theta2_; }

 private:
  double theta1_;
  double theta2_;
};

/// Values (z1, z2) of the two states; also used for dual coordinates.
struct ValuePair {
  double z1 = 0.0;
  double z2 = 0.0;

  double operator[](State i) const { return i == State::one ? z1 : z2; }
  double difference() const { return z1 - z2; }
};

/// Switching rates towards each state.
struct RatePair {
  double alpha1 = 0.0;
  double alpha2 = 0.0;

  double operator[](State i) const { return i == State::one ? alpha1 : alpha2; }
};

inline double positive_part(double x) { return x > 0.0 ? x : 0.0; }
inline double negative_part(double x) { return x < 0.0 ? -x : 0.0; }

enum class CostPreset { example1, example2_paper, example2_gradient, custom };

std::string_view to_string(CostPreset preset);
/// Accepts "example1", "example2-paper", "example2-gradient", "custom".
CostPreset parse_cost_preset(std::string_view name);

/// Running cost c(i, theta, mu) = f(i, theta) + 1/2 sum_{j != i} mu_j^2 with a
/// polynomial mean-field term f and, when available, a potential F whose
/// gradient reproduces f on the simplex.
class CostModel {
 public:
  /// f(1) = 1 - theta1, f(2) = 1 - theta2, F = theta1 theta2.
  static CostModel example1();
  /// F = kappa theta1^2 theta2^2 with f = grad F.
  static CostModel example2_gradient(double kappa);
  /// The swapped orientation f(1) = 2 kappa theta1^2 theta2,
  /// f(2) = 2 kappa theta1 theta2^2. This f is not a gradient in the plane;
  /// the potential is the one built by with_derived_potential.
  static CostModel example2_paper(double kappa);
  /// f(i, theta) = p_i(theta1). The potential is derived.
  static CostModel custom(Polynomial f1, Polynomial f2);

  /// Builds from explicit polynomials. lipschitz_bound is the declared bound
  /// checked by check_invariants.
  CostModel(std::string name, BivariatePolynomial f1, BivariatePolynomial f2,
            std::optional<BivariatePolynomial> potential, double lipschitz_bound, double kappa = 0.0);

  /// Attaches F = G(theta1) + (theta1 + theta2 - 1) f2(theta1, 1 - theta1)
  /// with G' = f1 - f2 on the simplex. Its gradient matches f exactly on the
  /// simplex for any separable two-state model.
  CostModel with_derived_potential() const;

  /// Model with the potential removed (and f kept).
  CostModel without_potential() const;

  double f(State i, const ProbabilityPair& theta) const;
  /// f(1, theta) - f(2, theta) at theta = (zeta, 1 - zeta), any real zeta.
  double f_difference(double zeta) const { return f_difference_(zeta); }

  bool has_potential() const { return potential_.has_value(); }
  /// F(theta1, theta2). Throws DomainError without a potential.
  double potential(double theta1, double theta2) const;
  /// F(p, 1 - p) for any real p (polynomial extension off the simplex).
  double potential_on_segment(double p) const;
  /// F(zeta, 1 - zeta) as a polynomial in zeta. Throws without a potential.
  const Polynomial& segment_potential() const;

  /// c(i, theta, mu). The i-th rate component is ignored.
  double running_cost(State i, const ProbabilityPair& theta, const RatePair& mu) const;
  /// Gradient of c in mu.
  RatePair running_cost_gradient(State i, const ProbabilityPair& theta, const RatePair& mu) const;

  const std::string& name() const { return name_; }
  double kappa() const { return kappa_; }
  double lipschitz_bound() const { return lipschitz_bound_; }

  /// Sampled structural checks; returns human-readable violations.
  std::vector<std::string> check_invariants() const;

 private:
  std::string name_;
  BivariatePolynomial f1_;
  BivariatePolynomial f2_;
  std::optional<BivariatePolynomial> potential_;
  Polynomial f_difference_;
  Polynomial segment_potential_;
  double lipschitz_bound_;
  double kappa_;
};

/// Generalized Legendre transform of the quadratic cost,
/// f(i, theta) - 1/2 ((z^i - z^j)^+)^2.
double hamiltonian_h(const ValuePair& z, const ProbabilityPair& theta, State i, const CostModel& model);

/// Minimizing switching rates; the component j != i is (z^i - z^j)^+ and
/// alpha1 = -alpha2.
RatePair optimal_rate(const ValuePair& z, const ProbabilityPair& theta, State i);

/// g1(z, theta) = -theta1 (z1 - z2)^+ + theta2 (z2 - z1)^+; g2 = -g1.
double drift_g1(const ValuePair& z, const ProbabilityPair& theta);

/// Reduced advection velocity r(w, zeta) = zeta w^+ - (1 - zeta) w^-.
/// Throws DomainError for zeta outside [0,1].
double reduced_r(double w, double zeta);
/// Reduced source q(w, zeta) = f(1) - f(2) - w|w|/2.
double reduced_q(double w, double zeta, const CostModel& model);

/// Same formulas without the [0,1] check, for the dual equation and for
/// schemes that probe slightly outside the simplex.
double reduced_r_unchecked(double w, double zeta);
double reduced_q_unchecked(double w, double zeta, const CostModel& model);

/// H(p, zeta) = -1/2 [zeta (p^+)^2 + (1 - zeta)(p^-)^2] + F(zeta, 1 - zeta).
double reduced_hamiltonian_primal(double p, double zeta, const CostModel& model);
/// H(upsilon, p) = -1/2 [(upsilon^-)^2 + p |upsilon| upsilon] + F(p, 1 - p).
double reduced_hamiltonian_dual(double upsilon, double p, const CostModel& model);

struct AssumptionViolation {
  State state;
  double theta1;
  RatePair alpha;
  RatePair alpha_prime;
  /// lhs - rhs of the strong convexity inequality; negative means violated.
  double margin;
};

struct GrowthSample {
  double rate_norm;
  double ratio;  // c / |alpha|
};

struct AssumptionReport {
  double gamma = 0.0;
  std::size_t samples = 0;
  std::vector<AssumptionViolation> violations;
  std::vector<GrowthSample> growth;
  bool superlinear = false;

  bool strongly_convex() const { return violations.empty(); }
};

/// Samples the strong convexity inequality with constant gamma and the growth
/// of c along the switching direction. Requires gamma > 0.
AssumptionReport validate_assumptions(const CostModel& model, double gamma, std::size_t samples,
                                      unsigned seed = 12345);

}  // namespace tsmfg
