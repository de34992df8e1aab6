#pragma once

#include <span>
#include <vector>

namespace tsmfg {

/// Univariate polynomial with coefficients in ascending powers.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<double> coefficients);

  double operator()(double x) const;
  Polynomial derivative() const;
  /// Antiderivative vanishing at zero.
  Polynomial integral() const;

  /// All real roots, sorted ascending, each reported once. Returns an empty
  /// list for the zero polynomial.
  std::vector<double> real_roots() const;

  int degree() const;
  bool is_zero() const { return coefficients_.empty(); }
  std::span<const double> coefficients() const { return coefficients_; }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(double s, const Polynomial& a);

 private:
  void trim();
  std::vector<double> coefficients_;
};

/// Polynomial in the two population fractions, sum of c * theta1^a * theta2^b.
class BivariatePolynomial {
 public:
  struct Term {
    double coefficient;
    int power1;
    int power2;
  };

  BivariatePolynomial() = default;
  explicit BivariatePolynomial(std::vector<Term> terms) : terms_(std::move(terms)) {}

  /// Lifts p(theta1) to a bivariate polynomial that ignores theta2.
  static BivariatePolynomial in_theta1(const Polynomial& p);

  double operator()(double theta1, double theta2) const;

  /// Restriction to the segment theta = (zeta, 1 - zeta) as a polynomial in zeta.
  Polynomial on_simplex() const;

  std::span<const Term> terms() const { return terms_; }

  friend BivariatePolynomial operator+(BivariatePolynomial a, const BivariatePolynomial& b);
  friend BivariatePolynomial operator*(const BivariatePolynomial& a, const BivariatePolynomial& b);

 private:
  std::vector<Term> terms_;
};

}  // namespace tsmfg
