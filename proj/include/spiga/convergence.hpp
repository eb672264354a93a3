#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "spiga/exact_solution.hpp"
#include "spiga/knot_design.hpp"
#include "spiga/problem.hpp"
#include "spiga/spline_space.hpp"

namespace spiga {

enum class Example { Example1, Example2, Example3, Custom };

std::string_view to_string(Example example) noexcept;
std::optional<Example> parse_example(std::string_view name) noexcept;

struct ParameterPair {
  double eps1 = 1.0;
  double eps2 = 1.0;
  friend bool operator==(const ParameterPair&, const ParameterPair&) = default;
};

/// Constant coefficients for the custom example.
struct ConstantData {
  double b = 1.0;
  double c = 1.0;
  double f = 1.0;
};

/// Problem with its closed-form solution attached.
TwoParameterProblem make_problem(Example example, ParameterPair eps, const ConstantData& custom = {});

/**
 * Percentage relative max-norm error 100 * max|u - u_N| / max|u| over
 * `samples_per_region` uniformly spaced points inside every knot span of the
 * space (endpoints excluded). The spans produced by design_knots are exactly
 * the layer regions and the outer region.
 */
double max_norm_error(const ExactSolution& exact, const SplineSpace& space,
                      const Eigen::VectorXd& alpha, int samples_per_region = 400);

struct OracleGateReport {
  double max_residual = 0.0;
  double f_norm = 0.0;
  double boundary_value = 0.0;
  int points = 0;
  bool passed = false;
};

/**
 * Substitutes the attached exact solution into the equation at 1001 uniform
 * points and at 1001 points inside each boundary band of width
 * min(1/2, 10/mu). Passes when every residual is <= 1e-6 * max|f| and
 * |u(0)|, |u(1)| <= 1e-12.
 */
OracleGateReport check_exact_solution(const TwoParameterProblem& problem);

struct ConvergenceRecord {
  int p = 0;
  int dof_label = 0;
  int basis_count = 0;
  double eps1 = 0.0;
  double eps2 = 0.0;
  KnotStrategy strategy = KnotStrategy::Uniform;
  /// NaN when the cell failed.
  double error_percent = 0.0;
  /// "ok" or the name of the ErrorKind that stopped the cell.
  std::string status = "ok";
  std::string detail;

  bool ok() const { return status == "ok"; }
};

bool same_record(const ConvergenceRecord& a, const ConvergenceRecord& b);

struct StudyConfig {
  Example example = Example::Example1;
  ConstantData custom;
  /// Empty picks the recipe matching each problem's regime.
  std::optional<KnotStrategy> strategy;
  std::vector<ParameterPair> parameters;
  int p_min = 2;
  int p_max = 9;
  KnotDesignOptions knots;
  /// 0 selects default_quad_order(p).
  int quad_order = 0;
  int samples_per_region = 400;
  unsigned threads = 1;
  RegimeThresholds thresholds;
};

/// The parameter grids, degree ranges and knot recipes of the three reference experiments.
StudyConfig preset(Example example);

/**
 * One record per (parameter pair, p), ordered by the configured parameter
 * order and then by p. Cells run on up to `threads` workers; the result does
 * not depend on the thread count. A failing cell is recorded, not thrown.
 */
std::vector<ConvergenceRecord> run_convergence_study(const StudyConfig& config);

/// Solve one cell and return its record.
ConvergenceRecord run_cell(const StudyConfig& config, ParameterPair eps, int p);

}  // namespace spiga
