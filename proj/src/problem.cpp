#include "spiga/problem.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <utility>

#include "spiga/error.hpp"

namespace spiga {

namespace {

double grid_point(int k) { return static_cast<double>(k) / (kDataGridPoints - 1); }

std::string format_number(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

}  // namespace

Coefficient::Coefficient(std::function<double(double)> value,
                         std::function<double(double)> derivative, std::string label)
    : value_(std::move(value)), derivative_(std::move(derivative)), label_(std::move(label)) {}

Coefficient Coefficient::constant(double value) {
  Coefficient out([value](double) { return value; }, [](double) { return 0.0; },
                  format_number(value));
  out.constant_ = value;
  return out;
}

Coefficient Coefficient::polynomial(std::vector<double> coeffs) {
  if (coeffs.empty()) coeffs.push_back(0.0);
  std::vector<double> deriv;
  for (std::size_t k = 1; k < coeffs.size(); ++k) deriv.push_back(static_cast<double>(k) * coeffs[k]);
  auto horner = [](const std::vector<double>& c, double x) {
    double acc = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
    return acc;
  };
  std::string label;
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    if (k > 0) label += " + ";
    label += format_number(coeffs[k]);
    if (k > 0) label += "*x^" + std::to_string(k);
  }
  const bool constant = coeffs.size() == 1;
  const double c0 = coeffs.front();
  Coefficient out([c = coeffs, horner](double x) { return horner(c, x); },
                  [d = std::move(deriv), horner](double x) { return horner(d, x); },
                  std::move(label));
  if (constant) out.constant_ = c0;
  return out;
}

double Coefficient::derivative(double x) const {
  if (derivative_) return derivative_(x);
  constexpr double h = 1e-6;
  if (x - h < 0.0) return (value_(x + h) - value_(x)) / h;
  if (x + h > 1.0) return (value_(x) - value_(x - h)) / h;
  return (value_(x + h) - value_(x - h)) / (2.0 * h);
}

TwoParameterProblem::TwoParameterProblem(double eps1, double eps2, Coefficient b, Coefficient c,
                                         Coefficient f, std::optional<ExactSolution> exact)
    : eps1_(eps1), eps2_(eps2), b_(std::move(b)), c_(std::move(c)), f_(std::move(f)),
      exact_(std::move(exact)) {
  if (!(eps1_ > 0.0 && eps1_ <= 1.0) || !(eps2_ > 0.0 && eps2_ <= 1.0)) {
    throw Error(ErrorKind::InvalidParameter,
                "eps1 and eps2 must lie in (0, 1], got " + format_number(eps1_) + ", " +
                    format_number(eps2_));
  }
  constexpr double inf = std::numeric_limits<double>::infinity();
  bounds_ = {inf, inf, inf};
  for (int k = 0; k < kDataGridPoints; ++k) {
    const double x = grid_point(k);
    const double bx = b_(x);
    const double cx = c_(x);
    bounds_.beta = std::min(bounds_.beta, bx);
    bounds_.gamma = std::min(bounds_.gamma, cx);
    bounds_.rho = std::min(bounds_.rho, cx - 0.5 * eps2_ * b_.derivative(x));
  }
  if (!(bounds_.beta >= 0.0)) {
    throw Error(ErrorKind::DataAssumptionViolated, "b must be nonnegative, min b = " +
                                                       format_number(bounds_.beta));
  }
  if (!(bounds_.gamma > 0.0)) {
    throw Error(ErrorKind::DataAssumptionViolated, "c must be positive, min c = " +
                                                       format_number(bounds_.gamma));
  }
  if (!(bounds_.rho > 0.0)) {
    throw Error(ErrorKind::DataAssumptionViolated,
                "c - (eps2/2) b' must be positive, min = " + format_number(bounds_.rho));
  }
}

CharacteristicRoots characteristic_roots(const TwoParameterProblem& problem, double x) {
  const double drift = problem.eps2() * problem.b()(x);
  const double cx = problem.c()(x);
  const double root = std::sqrt(drift * drift + 4.0 * problem.eps1() * cx);
  // lambda1 has no cancellation; lambda0 from lambda0 * lambda1 = -c / eps1.
  return {-2.0 * cx / (drift + root), (drift + root) / (2.0 * problem.eps1())};
}

LayerStrengths compute_mu(const TwoParameterProblem& problem) {
  LayerStrengths mu{std::numeric_limits<double>::infinity(),
                    std::numeric_limits<double>::infinity()};
  for (int k = 0; k < kDataGridPoints; ++k) {
    const auto roots = characteristic_roots(problem, grid_point(k));
    mu.mu0 = std::min(mu.mu0, -roots.lambda0);
    mu.mu1 = std::min(mu.mu1, roots.lambda1);
  }
  return mu;
}

std::string_view to_string(Regime regime) noexcept {
  switch (regime) {
    case Regime::ConvectionDiffusion: return "convection-diffusion";
    case Regime::ConvectionReactionDiffusion: return "convection-reaction-diffusion";
    case Regime::ReactionDiffusion: return "reaction-diffusion";
  }
  return "unknown";
}

RegimeReport classify_regime(const TwoParameterProblem& problem,
                             const RegimeThresholds& thresholds) {
  const LayerStrengths mu = compute_mu(problem);
  RegimeReport report;
  report.mu0 = mu.mu0;
  report.mu1 = mu.mu1;
  report.eps1 = problem.eps1();
  report.eps2 = problem.eps2();

  double max_b = 0.0;
  for (int k = 0; k < kDataGridPoints; ++k) max_b = std::max(max_b, problem.b()(grid_point(k)));

  const double eps1 = problem.eps1();
  const double eps2 = problem.eps2();
  if (max_b == 0.0) {
    report.regime = Regime::ReactionDiffusion;
  } else if (eps2 >= thresholds.convection_eps2_min) {
    report.regime = Regime::ConvectionDiffusion;
  } else if (eps1 <= thresholds.reaction_ratio * eps2 * eps2) {
    report.regime = Regime::ConvectionReactionDiffusion;
  } else {
    report.regime = Regime::ReactionDiffusion;
  }
  return report;
}

}  // namespace spiga
