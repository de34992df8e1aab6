#include "tsmfg/polynomial.hpp"

#include <algorithm>
#include <cmath>

namespace tsmfg {

namespace {

double binomial(int n, int k) {
  double result = 1.0;
  for (int i = 1; i <= k; ++i) result = result * (n - k + i) / i;
  return result;
}

// Bisection on a sign change, polished with a few Newton steps that stay
// inside the bracket.
double bracket_root(const Polynomial& p, const Polynomial& dp, double lo, double hi) {
  double flo = p(lo);
  for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, std::abs(lo) + std::abs(hi)); ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fmid = p(mid);
    if (fmid == 0.0) return mid;
    if ((fmid < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fmid;
    } else {
      hi = mid;
    }
  }
  double x = 0.5 * (lo + hi);
  for (int it = 0; it < 3; ++it) {
    const double d = dp(x);
    if (d == 0.0) break;
    const double next = x - p(x) / d;
    if (next < lo || next > hi) break;
    x = next;
  }
  return x;
}

}  // namespace

Polynomial::Polynomial(std::vector<double> coefficients) : coefficients_(std::move(coefficients)) {
  trim();
}

void Polynomial::trim() {
  while (!coefficients_.empty() && coefficients_.back() == 0.0) coefficients_.pop_back();
}

int Polynomial::degree() const { return static_cast<int>(coefficients_.size()) - 1; }

double Polynomial::operator()(double x) const {
  double result = 0.0;
  for (auto it = coefficients_.rbegin(); it != coefficients_.rend(); ++it) result = result * x + *it;
  return result;
}

Polynomial Polynomial::derivative() const {
  if (coefficients_.size() <= 1) return {};
  std::vector<double> d(coefficients_.size() - 1);
  for (std::size_t k = 1; k < coefficients_.size(); ++k) d[k - 1] = static_cast<double>(k) * coefficients_[k];
  return Polynomial(std::move(d));
}

Polynomial Polynomial::integral() const {
  if (coefficients_.empty()) return {};
  std::vector<double> c(coefficients_.size() + 1, 0.0);
  for (std::size_t k = 0; k < coefficients_.size(); ++k) c[k + 1] = coefficients_[k] / static_cast<double>(k + 1);
  return Polynomial(std::move(c));
}

std::vector<double> Polynomial::real_roots() const {
  const int n = degree();
  if (n <= 0) return {};
  if (n == 1) return {-coefficients_[0] / coefficients_[1]};

  // Cauchy bound on root magnitude.
  double bound = 0.0;
  const double lead = coefficients_.back();
  for (int k = 0; k < n; ++k) bound = std::max(bound, std::abs(coefficients_[k] / lead));
  bound += 1.0;

  // Between consecutive critical points the polynomial is monotone, so each
  // interval holds at most one simple root.
  const Polynomial dp = derivative();
  std::vector<double> knots{-bound};
  for (double c : dp.real_roots())
    if (c > -bound && c < bound) knots.push_back(c);
  knots.push_back(bound);

  double scale = 0.0;
  for (double c : coefficients_) scale += std::abs(c);

  std::vector<double> roots;
  auto push = [&](double x) {
    if (roots.empty() || std::abs(x - roots.back()) > 1e-10 * std::max(1.0, std::abs(x))) roots.push_back(x);
  };
  for (std::size_t k = 0; k < knots.size(); ++k) {
    const double x = knots[k];
    const double fx = (*this)(x);
    const double mag = scale * std::max(1.0, std::pow(std::abs(x), n));
    if (std::abs(fx) <= 1e-13 * mag) {
      push(x);
      continue;
    }
    if (k + 1 < knots.size()) {
      const double y = knots[k + 1];
      const double fy = (*this)(y);
      const double magy = scale * std::max(1.0, std::pow(std::abs(y), n));
      if (std::abs(fy) > 1e-13 * magy && (fx < 0.0) != (fy < 0.0)) push(bracket_root(*this, dp, x, y));
    }
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  std::vector<double> c(std::max(a.coefficients_.size(), b.coefficients_.size()), 0.0);
  for (std::size_t k = 0; k < a.coefficients_.size(); ++k) c[k] += a.coefficients_[k];
  for (std::size_t k = 0; k < b.coefficients_.size(); ++k) c[k] += b.coefficients_[k];
  return Polynomial(std::move(c));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-1.0) * b; }

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<double> c(a.coefficients_.size() + b.coefficients_.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.coefficients_.size(); ++i)
    for (std::size_t j = 0; j < b.coefficients_.size(); ++j) c[i + j] += a.coefficients_[i] * b.coefficients_[j];
  return Polynomial(std::move(c));
}

Polynomial operator*(double s, const Polynomial& a) {
  std::vector<double> c(a.coefficients_);
  for (double& v : c) v *= s;
  return Polynomial(std::move(c));
}

BivariatePolynomial BivariatePolynomial::in_theta1(const Polynomial& p) {
  std::vector<Term> terms;
  const auto c = p.coefficients();
  for (std::size_t k = 0; k < c.size(); ++k)
    if (c[k] != 0.0) terms.push_back({c[k], static_cast<int>(k), 0});
  return BivariatePolynomial(std::move(terms));
}

double BivariatePolynomial::operator()(double theta1, double theta2) const {
  double result = 0.0;
  for (const auto& t : terms_) result += t.coefficient * std::pow(theta1, t.power1) * std::pow(theta2, t.power2);
  return result;
}

Polynomial BivariatePolynomial::on_simplex() const {
  Polynomial result;
  for (const auto& t : terms_) {
    // theta1^a (1 - theta1)^b expanded in theta1.
    std::vector<double> c(static_cast<std::size_t>(t.power1 + t.power2 + 1), 0.0);
    for (int k = 0; k <= t.power2; ++k) {
      const double sign = (k % 2 == 0) ? 1.0 : -1.0;
      c[static_cast<std::size_t>(t.power1 + k)] += t.coefficient * sign * binomial(t.power2, k);
    }
    result = result + Polynomial(std::move(c));
  }
  return result;
}

BivariatePolynomial operator+(BivariatePolynomial a, const BivariatePolynomial& b) {
  a.terms_.insert(a.terms_.end(), b.terms_.begin(), b.terms_.end());
  return a;
}

BivariatePolynomial operator*(const BivariatePolynomial& a, const BivariatePolynomial& b) {
  std::vector<BivariatePolynomial::Term> terms;
  for (const auto& s : a.terms_)
    for (const auto& t : b.terms_)
      terms.push_back({s.coefficient * t.coefficient, s.power1 + t.power1, s.power2 + t.power2});
  return BivariatePolynomial(std::move(terms));
}

}  // namespace tsmfg
