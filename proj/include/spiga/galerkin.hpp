#pragma once

#include <Eigen/Dense>

#include "spiga/problem.hpp"
#include "spiga/spline_space.hpp"

namespace spiga {

/// Gauss nodes per knot span used when the caller does not choose: p + 2.
inline int default_quad_order(int degree) { return degree + 2; }

/**
 * Galerkin system over the full basis. Row i is tested against B_i, column j
 * is the trial function B_j:
 *
 *   stiffness(i,j)  = int B_i' B_j'
 *   convection(i,j) = int b B_i B_j'
 *   mass(i,j)       = int c B_i B_j
 *   load(i)         = int f B_i
 *
 * The reduced members and the coefficients are filled by apply_dirichlet_and_solve().
 */
struct GalerkinSystem {
  SplineSpace space;
  double eps1 = 0.0;
  double eps2 = 0.0;
  int quad_order = 0;

  Eigen::MatrixXd stiffness{};
  Eigen::MatrixXd convection{};
  Eigen::MatrixXd mass{};
  Eigen::VectorXd load{};

  Eigen::MatrixXd reduced_matrix{};
  Eigen::VectorXd reduced_load{};
  Eigen::VectorXd coefficients{};
  /// Reciprocal condition estimate of the reduced LU factorization.
  double rcond = 0.0;

  /// eps1 * stiffness + eps2 * convection + mass.
  Eigen::MatrixXd system_matrix() const;
};

/// Span-by-span Gauss-Legendre assembly; zero-width spans are skipped.
/// Throws QuadratureOrderTooLow if quad_order < p + 1.
GalerkinSystem assemble(const TwoParameterProblem& problem, const SplineSpace& space,
                        int quad_order);

/**
 * Removes the first and last basis functions (the only ones that do not
 * vanish at 0 and 1 on an open knot vector), solves the reduced system by LU
 * with partial pivoting and returns coefficients over the full basis with
 * both boundary entries equal to zero. Throws SingularMatrix when the
 * factorization is numerically singular.
 */
const Eigen::VectorXd& apply_dirichlet_and_solve(GalerkinSystem& system);

/// d-th derivative of u_N = sum_k alpha_k B_k at x (right limit at interior knots).
double evaluate_solution(const SplineSpace& space, const Eigen::VectorXd& alpha, double x, int d);

/**
 * F(B_i) - B(u_N, B_i) for every interior basis function, computed by direct
 * quadrature of the weak form rather than from the assembled matrices.
 */
Eigen::VectorXd galerkin_residual(const TwoParameterProblem& problem, const SplineSpace& space,
                                  const Eigen::VectorXd& alpha, int quad_order);

}  // namespace spiga
