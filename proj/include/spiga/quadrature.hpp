#pragma once

#include <vector>

namespace spiga {

/// Gauss-Legendre rule on [-1, 1]; exact for polynomials of degree 2n - 1.
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

QuadratureRule gauss_legendre(int n);

}  // namespace spiga
