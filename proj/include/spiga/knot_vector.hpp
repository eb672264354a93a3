#pragma once

#include <span>
#include <vector>

namespace spiga {

/// Which one-sided limit to take when a point sits exactly on a knot.
enum class Side { Left, Right };

/**
 * Open knot vector on the unit interval, stored as distinct breakpoints with
 * multiplicities. The expanded (repeated) sequence is kept alongside because
 * every evaluation routine indexes into it.
 *
 * Invariants enforced by make_open():
 *   - breakpoints strictly increasing, first 0, last 1
 *   - end multiplicities equal degree + 1
 *   - interior multiplicities in [1, degree + 1]
 */
class KnotVector {
 public:
  static KnotVector make_open(std::vector<double> distinct, std::vector<int> multiplicities,
                              int degree);

  /// [0^{p+1}, 1^{p+1}]: one polynomial piece of degree p.
  static KnotVector single_span(int degree);

  int degree() const noexcept { return degree_; }
  std::span<const double> distinct() const noexcept { return distinct_; }
  std::span<const int> multiplicities() const noexcept { return multiplicities_; }
  std::span<const double> expanded() const noexcept { return expanded_; }

  /// k_i = p - r_i + 1 per breakpoint; zero at both ends of an open vector.
  std::vector<int> regularity() const;

  /// Number of B-splines, N = sum(r_i) - p - 1.
  int basis_count() const noexcept {
    return static_cast<int>(expanded_.size()) - degree_ - 1;
  }

  /// Number of nonempty knot spans (m - 1).
  int span_count() const noexcept { return static_cast<int>(distinct_.size()) - 1; }

  /**
   * Index s into expanded() with t_s <= x < t_{s+1} (Side::Right) or
   * t_s < x <= t_{s+1} (Side::Left). The endpoints clamp into the first and
   * last nonempty spans, so x = 1 with Side::Right lands in the last span.
   */
  int find_span(double x, Side side = Side::Right) const;

  friend bool operator==(const KnotVector&, const KnotVector&) = default;

 private:
  KnotVector(std::vector<double> distinct, std::vector<int> multiplicities, int degree);

  std::vector<double> distinct_;
  std::vector<int> multiplicities_;
  int degree_ = 0;
  std::vector<double> expanded_;
};

}  // namespace spiga
