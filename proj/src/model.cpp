#include "tsmfg/model.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "tsmfg/error.hpp"

namespace tsmfg {

namespace {

double sampled_lipschitz(const Polynomial& p) {
  const Polynomial dp = p.derivative();
  double bound = 0.0;
  for (int k = 0; k <= 1000; ++k) bound = std::max(bound, std::abs(dp(k / 1000.0)));
  return 1.01 * bound + 1e-12;
}

void require_fraction(double zeta) {
  if (!(zeta >= 0.0 && zeta <= 1.0)) {
    std::ostringstream os;
    os << "fraction zeta=" << zeta << " outside [0,1]";
    throw DomainError(os.str());
  }
}

}  // namespace

State to_state(int index) {
  if (index == 1) return State::one;
  if (index == 2) return State::two;
  throw DomainError("invalid state index " + std::to_string(index) + " (expected 1 or 2)");
}

State other(State i) {
  switch (i) {
    case State::one: return State::two;
    case State::two: return State::one;
  }
  throw DomainError("invalid state index");
}

ProbabilityPair::ProbabilityPair(double theta1, double theta2) : theta1_(theta1), theta2_(theta2) {
  if (!(theta1 >= 0.0 && theta2 >= 0.0) || std::abs(theta1 + theta2 - 1.0) > 1e-12) {
    std::ostringstream os;
    os << "(" << theta1 << ", " << theta2 << ") is not a probability vector";
    throw DomainError(os.str());
  }
}

ProbabilityPair ProbabilityPair::from_fraction(double zeta) {
  require_fraction(zeta);
  return {zeta, 1.0 - zeta};
}

std::string_view to_string(CostPreset preset) {
  switch (preset) {
    case CostPreset::example1: return "example1";
    case CostPreset::example2_paper: return "example2-paper";
    case CostPreset::example2_gradient: return "example2-gradient";
    case CostPreset::custom: return "custom";
  }
  return "unknown";
}

CostPreset parse_cost_preset(std::string_view name) {
  if (name == "example1") return CostPreset::example1;
  if (name == "example2-paper") return CostPreset::example2_paper;
  if (name == "example2-gradient") return CostPreset::example2_gradient;
  if (name == "custom") return CostPreset::custom;
  throw ConfigError("unknown cost preset '" + std::string(name) + "'");
}

CostModel::CostModel(std::string name, BivariatePolynomial f1, BivariatePolynomial f2,
                     std::optional<BivariatePolynomial> potential, double lipschitz_bound, double kappa)
    : name_(std::move(name)),
      f1_(std::move(f1)),
      f2_(std::move(f2)),
      potential_(std::move(potential)),
      f_difference_(f1_.on_simplex() - f2_.on_simplex()),
      lipschitz_bound_(lipschitz_bound),
      kappa_(kappa) {
  if (potential_) segment_potential_ = potential_->on_simplex();
}

CostModel CostModel::example1() {
  BivariatePolynomial f1({{1.0, 0, 0}, {-1.0, 1, 0}});
  BivariatePolynomial f2({{1.0, 0, 0}, {-1.0, 0, 1}});
  BivariatePolynomial F({{1.0, 1, 1}});
  return CostModel("example1", f1, f2, F, 1.0);
}

CostModel CostModel::example2_gradient(double kappa) {
  BivariatePolynomial f1({{2.0 * kappa, 1, 2}});
  BivariatePolynomial f2({{2.0 * kappa, 2, 1}});
  BivariatePolynomial F({{kappa, 2, 2}});
  return CostModel("example2-gradient", f1, f2, F, 2.0 * std::abs(kappa) + 1e-12, kappa);
}

CostModel CostModel::example2_paper(double kappa) {
  BivariatePolynomial f1({{2.0 * kappa, 2, 1}});
  BivariatePolynomial f2({{2.0 * kappa, 1, 2}});
  return CostModel("example2-paper", f1, f2, std::nullopt, 2.0 * std::abs(kappa) + 1e-12, kappa)
      .with_derived_potential();
}

CostModel CostModel::custom(Polynomial f1, Polynomial f2) {
  const double bound = std::max(sampled_lipschitz(f1), sampled_lipschitz(f2));
  return CostModel("custom", BivariatePolynomial::in_theta1(f1), BivariatePolynomial::in_theta1(f2), std::nullopt,
                   bound)
      .with_derived_potential();
}

CostModel CostModel::with_derived_potential() const {
  const Polynomial g = f_difference_.integral();
  // (theta1 + theta2 - 1) * f2(theta1, 1 - theta1)
  const BivariatePolynomial constraint({{1.0, 1, 0}, {1.0, 0, 1}, {-1.0, 0, 0}});
  const BivariatePolynomial correction = constraint * BivariatePolynomial::in_theta1(f2_.on_simplex());
  return CostModel(name_, f1_, f2_, BivariatePolynomial::in_theta1(g) + correction, lipschitz_bound_, kappa_);
}

CostModel CostModel::without_potential() const {
  return CostModel(name_, f1_, f2_, std::nullopt, lipschitz_bound_, kappa_);
}

double CostModel::f(State i, const ProbabilityPair& theta) const {
  switch (i) {
    case State::one: return f1_(theta.theta1(), theta.theta2());
    case State::two: return f2_(theta.theta1(), theta.theta2());
  }
  throw DomainError("invalid state index");
}

double CostModel::potential(double theta1, double theta2) const {
  if (!potential_) throw DomainError("cost model '" + name_ + "' has no potential F");
  return (*potential_)(theta1, theta2);
}

double CostModel::potential_on_segment(double p) const {
  if (!potential_) throw DomainError("cost model '" + name_ + "' has no potential F");
  return segment_potential_(p);
}

const Polynomial& CostModel::segment_potential() const {
  if (!potential_) throw DomainError("cost model '" + name_ + "' has no potential F");
  return segment_potential_;
}

double CostModel::running_cost(State i, const ProbabilityPair& theta, const RatePair& mu) const {
  const double switching = (i == State::one) ? mu.alpha2 : mu.alpha1;
  return f(i, theta) + 0.5 * switching * switching;
}

RatePair CostModel::running_cost_gradient(State i, const ProbabilityPair&, const RatePair& mu) const {
  if (i == State::one) return {0.0, mu.alpha2};
  return {mu.alpha1, 0.0};
}

std::vector<std::string> CostModel::check_invariants() const {
  std::vector<std::string> issues;
  constexpr double step = 1e-5;
  if (potential_) {
    for (int k = 0; k <= 100; ++k) {
      const double zeta = k / 100.0;
      const auto theta = ProbabilityPair::from_fraction(zeta);
      const double d1 = ((*potential_)(zeta + step, 1.0 - zeta) - (*potential_)(zeta - step, 1.0 - zeta)) / (2 * step);
      const double d2 = ((*potential_)(zeta, 1.0 - zeta + step) - (*potential_)(zeta, 1.0 - zeta - step)) / (2 * step);
      const double e1 = std::abs(f(State::one, theta) - d1);
      const double e2 = std::abs(f(State::two, theta) - d2);
      if (e1 > 1e-6 || e2 > 1e-6) {
        std::ostringstream os;
        os << "f is not grad F at zeta=" << zeta << " (errors " << e1 << ", " << e2 << ")";
        issues.push_back(os.str());
      }
    }
  }
  for (int k = 0; k < 200; ++k) {
    const double a = k / 200.0;
    const double b = (k + 1) / 200.0;
    const auto ta = ProbabilityPair::from_fraction(a);
    const auto tb = ProbabilityPair::from_fraction(b);
    for (State i : {State::one, State::two}) {
      const double quotient = std::abs(f(i, tb) - f(i, ta)) / (b - a);
      if (quotient > lipschitz_bound_ * (1.0 + 1e-9)) {
        std::ostringstream os;
        os << "f(" << static_cast<int>(i) << ") difference quotient " << quotient << " exceeds Lipschitz bound "
           << lipschitz_bound_ << " on [" << a << ", " << b << "]";
        issues.push_back(os.str());
      }
    }
  }
  return issues;
}

double hamiltonian_h(const ValuePair& z, const ProbabilityPair& theta, State i, const CostModel& model) {
  const double gain = positive_part(z[i] - z[other(i)]);
  return model.f(i, theta) - 0.5 * gain * gain;
}

RatePair optimal_rate(const ValuePair& z, const ProbabilityPair&, State i) {
  switch (i) {
    case State::one: {
      const double to_two = positive_part(z.z1 - z.z2);
      return {-to_two, to_two};
    }
    case State::two: {
      const double to_one = positive_part(z.z2 - z.z1);
      return {to_one, -to_one};
    }
  }
  throw DomainError("invalid state index");
}

double drift_g1(const ValuePair& z, const ProbabilityPair& theta) {
  return -theta.theta1() * positive_part(z.z1 - z.z2) + theta.theta2() * positive_part(z.z2 - z.z1);
}

double reduced_r_unchecked(double w, double zeta) {
  return zeta * positive_part(w) - (1.0 - zeta) * negative_part(w);
}

double reduced_q_unchecked(double w, double zeta, const CostModel& model) {
  return model.f_difference(zeta) - 0.5 * w * std::abs(w);
}

double reduced_r(double w, double zeta) {
  require_fraction(zeta);
  return reduced_r_unchecked(w, zeta);
}

double reduced_q(double w, double zeta, const CostModel& model) {
  require_fraction(zeta);
  return reduced_q_unchecked(w, zeta, model);
}

double reduced_hamiltonian_primal(double p, double zeta, const CostModel& model) {
  require_fraction(zeta);
  const double up = positive_part(p);
  const double down = negative_part(p);
  return -0.5 * (zeta * up * up + (1.0 - zeta) * down * down) + model.potential_on_segment(zeta);
}

double reduced_hamiltonian_dual(double upsilon, double p, const CostModel& model) {
  const double down = negative_part(upsilon);
  return -0.5 * (down * down + p * std::abs(upsilon) * upsilon) + model.potential_on_segment(p);
}

AssumptionReport validate_assumptions(const CostModel& model, double gamma, std::size_t samples, unsigned seed) {
  if (!(gamma > 0.0)) throw DomainError("gamma must be positive");
  AssumptionReport report;
  report.gamma = gamma;
  report.samples = samples;

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> fraction(0.0, 1.0);
  std::uniform_real_distribution<double> rate(0.0, 10.0);

  for (std::size_t s = 0; s < samples; ++s) {
    const State i = (s % 2 == 0) ? State::one : State::two;
    const auto theta = ProbabilityPair::from_fraction(fraction(rng));
    // Only the switching component j != i enters c.
    RatePair alpha;
    RatePair alpha_prime;
    const double a = rate(rng);
    const double b = (s % 10 == 0) ? a : rate(rng);
    if (i == State::one) {
      alpha.alpha2 = a;
      alpha_prime.alpha2 = b;
    } else {
      alpha.alpha1 = a;
      alpha_prime.alpha1 = b;
    }
    const RatePair grad = model.running_cost_gradient(i, theta, alpha);
    const double d1 = alpha_prime.alpha1 - alpha.alpha1;
    const double d2 = alpha_prime.alpha2 - alpha.alpha2;
    const double lhs = model.running_cost(i, theta, alpha_prime) - model.running_cost(i, theta, alpha);
    const double rhs = grad.alpha1 * d1 + grad.alpha2 * d2 + gamma * (d1 * d1 + d2 * d2);
    const double margin = lhs - rhs;
    const double scale = 1.0 + std::abs(lhs) + std::abs(rhs);
    if (margin < -1e-12 * scale) report.violations.push_back({i, theta.theta1(), alpha, alpha_prime, margin});
  }

  const auto theta = ProbabilityPair::from_fraction(0.5);
  double previous = -INFINITY;
  bool increasing = true;
  for (double norm = 1.0; norm <= 1e4; norm *= 10.0) {
    double ratio = INFINITY;
    for (State i : {State::one, State::two}) {
      const RatePair mu = (i == State::one) ? RatePair{0.0, norm} : RatePair{norm, 0.0};
      ratio = std::min(ratio, model.running_cost(i, theta, mu) / norm);
    }
    increasing = increasing && ratio > previous;
    previous = ratio;
    report.growth.push_back({norm, ratio});
  }
  report.superlinear = increasing && report.growth.back().ratio > 100.0 * std::max(1.0, report.growth.front().ratio);
  return report;
}

}  // namespace tsmfg
