#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "spiga/exact_solution.hpp"

namespace spiga {

/// A coefficient function on [0,1], optionally with an analytic derivative.
class Coefficient {
 public:
  Coefficient(std::function<double(double)> value, std::function<double(double)> derivative,
              std::string label);

  static Coefficient constant(double value);
  /// Ascending power-basis coefficients: c[0] + c[1] x + c[2] x^2 + ...
  static Coefficient polynomial(std::vector<double> coeffs);

  double operator()(double x) const { return value_(x); }
  /// Analytic derivative when available, otherwise a central difference with h = 1e-6
  /// (one-sided within h of the interval ends).
  double derivative(double x) const;

  bool has_analytic_derivative() const noexcept { return static_cast<bool>(derivative_); }
  std::optional<double> constant_value() const noexcept { return constant_; }
  const std::string& label() const noexcept { return label_; }

 private:
  std::function<double(double)> value_;
  std::function<double(double)> derivative_;
  std::string label_;
  std::optional<double> constant_;
};

/// Lower bounds of b, c and c - (eps2/2) b' sampled on the data grid.
struct DataBounds {
  double beta = 0.0;
  double gamma = 0.0;
  double rho = 0.0;
};

/// Number of uniform points on [0,1] used for the data checks and the minimum in mu.
inline constexpr int kDataGridPoints = 1001;

/**
 * -eps1 u'' + eps2 b(x) u' + c(x) u = f(x) on (0,1), u(0) = u(1) = 0.
 *
 * Construction validates 0 < eps1, eps2 <= 1 and the data assumptions
 * b >= 0, c > 0, c - (eps2/2) b' > 0 on the sampling grid, throwing
 * DataAssumptionViolated otherwise.
 */
class TwoParameterProblem {
 public:
  TwoParameterProblem(double eps1, double eps2, Coefficient b, Coefficient c, Coefficient f,
                      std::optional<ExactSolution> exact = std::nullopt);

  double eps1() const noexcept { return eps1_; }
  double eps2() const noexcept { return eps2_; }
  const Coefficient& b() const noexcept { return b_; }
  const Coefficient& c() const noexcept { return c_; }
  const Coefficient& f() const noexcept { return f_; }
  const std::optional<ExactSolution>& exact() const noexcept { return exact_; }
  const DataBounds& data_bounds() const noexcept { return bounds_; }

 private:
  double eps1_;
  double eps2_;
  Coefficient b_;
  Coefficient c_;
  Coefficient f_;
  std::optional<ExactSolution> exact_;
  DataBounds bounds_;
};

/// Roots lambda0 < 0 < lambda1 of eps1 l^2 - eps2 b(x) l - c(x) = 0.
struct CharacteristicRoots {
  double lambda0 = 0.0;
  double lambda1 = 0.0;
};

CharacteristicRoots characteristic_roots(const TwoParameterProblem& problem, double x);

/// Layer strengths: mu0 = min(-lambda0) governs x = 0, mu1 = min(lambda1) governs x = 1.
struct LayerStrengths {
  double mu0 = 0.0;
  double mu1 = 0.0;
};

LayerStrengths compute_mu(const TwoParameterProblem& problem);

enum class Regime { ConvectionDiffusion, ConvectionReactionDiffusion, ReactionDiffusion };

std::string_view to_string(Regime regime) noexcept;

/// ConvectionDiffusion when eps2 >= convection_eps2_min; else
/// ConvectionReactionDiffusion when eps1 <= reaction_ratio * eps2^2;
/// else ReactionDiffusion. A problem with b == 0 is always ReactionDiffusion.
struct RegimeThresholds {
  double convection_eps2_min = 0.9;
  double reaction_ratio = 1e-2;
};

struct RegimeReport {
  double mu0 = 0.0;
  double mu1 = 0.0;
  Regime regime = Regime::ReactionDiffusion;
  double eps1 = 0.0;
  double eps2 = 0.0;
};

RegimeReport classify_regime(const TwoParameterProblem& problem,
                             const RegimeThresholds& thresholds = {});

}  // namespace spiga
