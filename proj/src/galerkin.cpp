#include "spiga/galerkin.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "spiga/error.hpp"
#include "spiga/quadrature.hpp"

namespace spiga {

namespace {

// Calls fn(x, weight, basis) for every Gauss node of every nonempty span.
template <class Fn>
void for_each_quadrature_point(const SplineSpace& space, int quad_order, Fn&& fn) {
  const int p = space.degree();
  if (quad_order < p + 1) {
    throw Error(ErrorKind::QuadratureOrderTooLow, "quadrature order " + std::to_string(quad_order) +
                                                      " below degree + 1 = " + std::to_string(p + 1));
  }
  const QuadratureRule rule = gauss_legendre(quad_order);
  const auto t = space.knots().expanded();
  for (int s = p; s < space.basis_count(); ++s) {
    const double a = t[static_cast<std::size_t>(s)];
    const double b = t[static_cast<std::size_t>(s + 1)];
    if (!(b > a)) continue;
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
      const double x = mid + half * rule.nodes[q];
      fn(x, half * rule.weights[q], space.span_derivatives(s, x, 1));
    }
  }
}

}  // namespace

Eigen::MatrixXd GalerkinSystem::system_matrix() const {
  return eps1 * stiffness + eps2 * convection + mass;
}

GalerkinSystem assemble(const TwoParameterProblem& problem, const SplineSpace& space,
                        int quad_order) {
  if (space.degree() < 1) {
    throw Error(ErrorKind::InvalidDegree, "Galerkin assembly needs degree >= 1");
  }
  const int n = space.basis_count();
  GalerkinSystem sys{.space = space, .eps1 = problem.eps1(), .eps2 = problem.eps2(), .quad_order = quad_order};
  sys.stiffness = Eigen::MatrixXd::Zero(n, n);
  sys.convection = Eigen::MatrixXd::Zero(n, n);
  sys.mass = Eigen::MatrixXd::Zero(n, n);
  sys.load = Eigen::VectorXd::Zero(n);

  for_each_quadrature_point(space, quad_order, [&](double x, double w, const BasisDerivatives& B) {
    const double bx = problem.b()(x);
    const double cx = problem.c()(x);
    const double fx = problem.f()(x);
    const int first = B.first_index();
    for (int i = 0; i < B.width(); ++i) {
      const int gi = first + i;
      sys.load(gi) += w * fx * B(0, i);
      for (int j = 0; j < B.width(); ++j) {
        const int gj = first + j;
        sys.stiffness(gi, gj) += w * B(1, i) * B(1, j);
        sys.convection(gi, gj) += w * bx * B(0, i) * B(1, j);
        sys.mass(gi, gj) += w * cx * B(0, i) * B(0, j);
      }
    }
  });
  return sys;
}

const Eigen::VectorXd& apply_dirichlet_and_solve(GalerkinSystem& system) {
  const Eigen::Index n = system.load.size();
  system.coefficients = Eigen::VectorXd::Zero(n);
  const Eigen::Index inner = n - 2;
  if (inner <= 0) {
    system.reduced_matrix.resize(0, 0);
    system.reduced_load.resize(0);
    system.rcond = 1.0;
    return system.coefficients;
  }
  system.reduced_matrix = system.system_matrix().block(1, 1, inner, inner);
  system.reduced_load = system.load.segment(1, inner);

  const Eigen::PartialPivLU<Eigen::MatrixXd> lu(system.reduced_matrix);
  system.rcond = lu.rcond();
  if (!(system.rcond > std::numeric_limits<double>::epsilon())) {
    throw Error(ErrorKind::SingularMatrix,
                "reduced Galerkin matrix is numerically singular (rcond = " +
                    std::to_string(system.rcond) + ")");
  }
  const Eigen::VectorXd solution = lu.solve(system.reduced_load);
  if (!solution.allFinite()) {
    throw Error(ErrorKind::SingularMatrix, "solve produced non-finite coefficients");
  }
  system.coefficients.segment(1, inner) = solution;
  return system.coefficients;
}

double evaluate_solution(const SplineSpace& space, const Eigen::VectorXd& alpha, double x, int d) {
  if (alpha.size() != space.basis_count()) {
    throw Error(ErrorKind::IndexOutOfRange, "coefficient vector length " +
                                                std::to_string(alpha.size()) + " != basis count " +
                                                std::to_string(space.basis_count()));
  }
  const NonzeroBasis basis = space.eval_all_nonzero(d, x);
  double sum = 0.0;
  for (std::size_t j = 0; j < basis.values.size(); ++j) {
    sum += alpha(basis.first_index + static_cast<Eigen::Index>(j)) * basis.values[j];
  }
  return sum;
}

Eigen::VectorXd galerkin_residual(const TwoParameterProblem& problem, const SplineSpace& space,
                                  const Eigen::VectorXd& alpha, int quad_order) {
  const int n = space.basis_count();
  Eigen::VectorXd residual = Eigen::VectorXd::Zero(n);
  for_each_quadrature_point(space, quad_order, [&](double x, double w, const BasisDerivatives& B) {
    double u = 0.0;
    double du = 0.0;
    for (int j = 0; j < B.width(); ++j) {
      u += alpha(B.first_index() + j) * B(0, j);
      du += alpha(B.first_index() + j) * B(1, j);
    }
    const double transport = problem.eps2() * problem.b()(x) * du + problem.c()(x) * u;
    for (int i = 0; i < B.width(); ++i) {
      const double v = B(0, i);
      const double dv = B(1, i);
      residual(B.first_index() + i) +=
          w * (problem.f()(x) * v - problem.eps1() * du * dv - transport * v);
    }
  });
  return n > 2 ? Eigen::VectorXd(residual.segment(1, n - 2)) : Eigen::VectorXd();
}

}  // namespace spiga
