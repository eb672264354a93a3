#pragma once

#include <vector>

#include "spiga/knot_vector.hpp"

namespace spiga {

/// Indices and values of the (at most p+1) basis functions that do not vanish at a point.
struct NonzeroBasis {
  int first_index = 0;
  std::vector<double> values;
};

/// Derivatives 0..max_order of the p+1 functions active on one knot span.
class BasisDerivatives {
 public:
  BasisDerivatives(int first_index, int max_order, int degree)
      : first_index_(first_index), width_(degree + 1),
        values_(static_cast<std::size_t>((max_order + 1) * (degree + 1)), 0.0) {}

  int first_index() const noexcept { return first_index_; }
  int width() const noexcept { return width_; }

  double operator()(int order, int local) const { return values_[index(order, local)]; }
  double& operator()(int order, int local) { return values_[index(order, local)]; }

 private:
  std::size_t index(int order, int local) const {
    return static_cast<std::size_t>(order * width_ + local);
  }

  int first_index_;
  int width_;
  std::vector<double> values_;
};

/// Basis count derived from the knots, and the breakpoint/regularity formula m*p - sum(k_i).
/// Only basis_count is used for allocation; the second value is kept for diagnostics.
struct SpaceDimension {
  int basis_count = 0;
  int regularity_formula = 0;
};

/**
 * The spline space S spanned by the B-splines of degree p on an open knot
 * vector. Basis functions are indexed from 0 to basis_count() - 1.
 * Immutable; all queries are safe to call concurrently.
 */
class SplineSpace {
 public:
  explicit SplineSpace(KnotVector knots);

  const KnotVector& knots() const noexcept { return knots_; }
  int degree() const noexcept { return knots_.degree(); }
  int basis_count() const noexcept { return knots_.basis_count(); }

  /**
   * d-th derivative of B_i at x by the Cox-de Boor recursion, with 0/0 terms
   * taken as zero. Half-open spans [t_j, t_{j+1}) except that the last
   * nonempty span is closed at x = 1. Cost grows like 2^p; meant for checks,
   * not assembly.
   */
  double eval_basis(int i, int d, double x) const;

  /// All functions that can be nonzero at x, evaluated in the span picked by `side`.
  NonzeroBasis eval_all_nonzero(int d, double x, Side side = Side::Right) const;

  /// Triangular-table evaluation of derivatives up to max_order on a given span.
  BasisDerivatives span_derivatives(int span, double x, int max_order) const;

  SpaceDimension dimension() const;

 private:
  double cox_de_boor(int i, int q, int d, double x) const;
  void check_point(double x, int d) const;

  KnotVector knots_;
};

}  // namespace spiga
