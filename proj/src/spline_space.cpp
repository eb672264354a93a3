#include "spiga/spline_space.hpp"

#include <numeric>
#include <string>
#include <utility>

#include "spiga/error.hpp"

namespace spiga {

SplineSpace::SplineSpace(KnotVector knots) : knots_(std::move(knots)) {}

void SplineSpace::check_point(double x, int d) const {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw Error(ErrorKind::OutOfDomain, "evaluation point " + std::to_string(x) + " outside [0,1]");
  }
  if (d < 0 || d > degree()) {
    throw Error(ErrorKind::DerivativeOrderTooHigh,
                "derivative order " + std::to_string(d) + " not in [0, " +
                    std::to_string(degree()) + "]");
  }
}

double SplineSpace::eval_basis(int i, int d, double x) const {
  if (i < 0 || i >= basis_count()) {
    throw Error(ErrorKind::IndexOutOfRange, "basis index " + std::to_string(i) + " outside [0, " +
                                                std::to_string(basis_count() - 1) + "]");
  }
  check_point(x, d);
  return cox_de_boor(i, degree(), d, x);
}

double SplineSpace::cox_de_boor(int i, int q, int d, double x) const {
  const auto t = knots_.expanded();
  const auto ui = static_cast<std::size_t>(i);
  const auto uq = static_cast<std::size_t>(q);
  if (q == 0) {
    if (t[ui] <= x && x < t[ui + 1]) return 1.0;
    // Close the last nonempty span at the right end of the domain.
    if (x == t.back() && t[ui] < t[ui + 1] && t[ui + 1] == t.back()) return 1.0;
    return 0.0;
  }
  const double left_width = t[ui + uq] - t[ui];
  const double right_width = t[ui + uq + 1] - t[ui + 1];
  if (d == 0) {
    double value = 0.0;
    if (left_width > 0.0) value += (x - t[ui]) / left_width * cox_de_boor(i, q - 1, 0, x);
    if (right_width > 0.0) {
      value += (t[ui + uq + 1] - x) / right_width * cox_de_boor(i + 1, q - 1, 0, x);
    }
    return value;
  }
  double value = 0.0;
  if (left_width > 0.0) value += cox_de_boor(i, q - 1, d - 1, x) / left_width;
  if (right_width > 0.0) value -= cox_de_boor(i + 1, q - 1, d - 1, x) / right_width;
  return q * value;
}

BasisDerivatives SplineSpace::span_derivatives(int span, double x, int max_order) const {
  const int p = degree();
  const auto t = knots_.expanded();
  BasisDerivatives ders(span - p, max_order, p);

  const auto up = static_cast<std::size_t>(p + 1);
  // ndu: upper triangle holds basis values of increasing degree, lower
  // triangle the knot differences used as denominators.
  std::vector<double> ndu(up * up, 0.0);
  auto at = [up](std::vector<double>& m, int r, int c) -> double& {
    return m[static_cast<std::size_t>(r) * up + static_cast<std::size_t>(c)];
  };
  std::vector<double> left(up, 0.0);
  std::vector<double> right(up, 0.0);

  at(ndu, 0, 0) = 1.0;
  for (int j = 1; j <= p; ++j) {
    left[static_cast<std::size_t>(j)] = x - t[static_cast<std::size_t>(span + 1 - j)];
    right[static_cast<std::size_t>(j)] = t[static_cast<std::size_t>(span + j)] - x;
    double saved = 0.0;
    for (int r = 0; r < j; ++r) {
      at(ndu, j, r) = right[static_cast<std::size_t>(r + 1)] + left[static_cast<std::size_t>(j - r)];
      const double temp = at(ndu, r, j - 1) / at(ndu, j, r);
      at(ndu, r, j) = saved + right[static_cast<std::size_t>(r + 1)] * temp;
      saved = left[static_cast<std::size_t>(j - r)] * temp;
    }
    at(ndu, j, j) = saved;
  }
  for (int j = 0; j <= p; ++j) ders(0, j) = at(ndu, j, p);

  std::vector<double> a(2 * up, 0.0);
  auto ac = [up](std::vector<double>& m, int row, int c) -> double& {
    return m[static_cast<std::size_t>(row) * up + static_cast<std::size_t>(c)];
  };
  for (int r = 0; r <= p; ++r) {
    int s1 = 0;
    int s2 = 1;
    ac(a, 0, 0) = 1.0;
    for (int k = 1; k <= max_order; ++k) {
      double d = 0.0;
      const int rk = r - k;
      const int pk = p - k;
      if (r >= k) {
        ac(a, s2, 0) = ac(a, s1, 0) / at(ndu, pk + 1, rk);
        d = ac(a, s2, 0) * at(ndu, rk, pk);
      }
      const int j1 = rk >= -1 ? 1 : -rk;
      const int j2 = (r - 1 <= pk) ? k - 1 : p - r;
      for (int j = j1; j <= j2; ++j) {
        ac(a, s2, j) = (ac(a, s1, j) - ac(a, s1, j - 1)) / at(ndu, pk + 1, rk + j);
        d += ac(a, s2, j) * at(ndu, rk + j, pk);
      }
      if (r <= pk) {
        ac(a, s2, k) = -ac(a, s1, k - 1) / at(ndu, pk + 1, r);
        d += ac(a, s2, k) * at(ndu, r, pk);
      }
      ders(k, r) = d;
      std::swap(s1, s2);
    }
  }

  double factor = p;
  for (int k = 1; k <= max_order; ++k) {
    for (int j = 0; j <= p; ++j) ders(k, j) *= factor;
    factor *= (p - k);
  }
  return ders;
}

NonzeroBasis SplineSpace::eval_all_nonzero(int d, double x, Side side) const {
  check_point(x, d);
  const int span = knots_.find_span(x, side);
  const BasisDerivatives ders = span_derivatives(span, x, d);
  NonzeroBasis out;
  out.first_index = ders.first_index();
  out.values.resize(static_cast<std::size_t>(ders.width()));
  for (int j = 0; j < ders.width(); ++j) out.values[static_cast<std::size_t>(j)] = ders(d, j);
  return out;
}

SpaceDimension SplineSpace::dimension() const {
  const auto k = knots_.regularity();
  const int m = static_cast<int>(knots_.distinct().size());
  return {basis_count(), m * degree() - std::accumulate(k.begin(), k.end(), 0)};
}

}  // namespace spiga
