#pragma once

#include <cmath>
#include <functional>
#include <string>

namespace spiga {

/// Closed-form reference solution used to measure discretization error.
struct ExactSolution {
  std::function<double(double)> u;
  std::function<double(double)> u_prime;
  std::function<double(double)> u_second;
  /// |-eps1 u'' + eps2 b u' + c u - f| at x, evaluated from the same closed
  /// form in 113-bit floating point. Near a layer the individual terms reach
  /// 1/eps1 and cancel, so a binary64 substitution cannot resolve them.
  std::function<double(double)> residual;
  std::string description;
};

/**
 * Solution of -eps1 u'' + eps2 b u' + c u = f, u(0) = u(1) = 0, for constant
 * b >= 0, c > 0, f:
 *
 *   u(x) = (f/c) * (1 + A exp(lm * x) + B exp(lp * (x - 1)))
 *
 * with lm < 0 < lp the roots of eps1 l^2 - eps2 b l - c = 0. Both
 * exponentials are written so their arguments are never positive, so nothing
 * overflows however small eps1 gets. lm comes from the product of the roots
 * to avoid cancellation when eps2 b dominates.
 *
 * Real is double or any type with ADL-visible exp/sqrt (boost multiprecision).
 */
template <class Real>
class TwoExponentialSolution {
 public:
  TwoExponentialSolution(Real eps1, Real eps2, Real b, Real c, Real f)
      : eps1_(eps1), drift_(eps2 * b), c_(c), f_(f) {
    using std::exp;
    using std::sqrt;
    const Real root = sqrt(drift_ * drift_ + 4 * eps1 * c);
    lp_ = (drift_ + root) / (2 * eps1);
    lm_ = -2 * c / (drift_ + root);
    const Real q = exp(-lp_);  // exp(lp * (0 - 1))
    const Real r = exp(lm_);   // exp(lm * 1)
    a_ = (q - 1) / (1 - r * q);
    b_ = -1 - a_ * r;
  }

  Real lambda_minus() const { return lm_; }
  Real lambda_plus() const { return lp_; }

  Real value(Real x) const {
    using std::exp;
    return f_ / c_ * (1 + a_ * exp(lm_ * x) + b_ * exp(lp_ * (x - 1)));
  }
  Real slope(Real x) const {
    using std::exp;
    return f_ / c_ * (a_ * lm_ * exp(lm_ * x) + b_ * lp_ * exp(lp_ * (x - 1)));
  }
  Real curvature(Real x) const {
    using std::exp;
    return f_ / c_ * (a_ * lm_ * lm_ * exp(lm_ * x) + b_ * lp_ * lp_ * exp(lp_ * (x - 1)));
  }
  Real residual(Real x) const {
    using std::abs;
    return abs(-eps1_ * curvature(x) + drift_ * slope(x) + c_ * value(x) - f_);
  }

 private:
  Real eps1_, drift_, c_, f_;
  Real lp_{}, lm_{}, a_{}, b_{};
};

/// Exact solution for constant coefficients b, c, f (see TwoExponentialSolution).
ExactSolution constant_coefficient_solution(double eps1, double eps2, double b, double c, double f);

/// b = 0, c = f = 1: 1 - cosh((x - 1/2)/sqrt(eps1)) / cosh(1/(2 sqrt(eps1))).
ExactSolution exact_example1(double eps1);

/// b = c = f = eps2 = 1.
ExactSolution exact_example2(double eps1);

/// b = c = f = 1 with both parameters small.
ExactSolution exact_example3(double eps1, double eps2);

}  // namespace spiga
