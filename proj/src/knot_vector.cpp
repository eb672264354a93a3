#include "spiga/knot_vector.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "spiga/error.hpp"

namespace spiga {

KnotVector KnotVector::make_open(std::vector<double> distinct, std::vector<int> multiplicities,
                                 int degree) {
  if (degree < 0) {
    throw Error(ErrorKind::InvalidDegree, "degree must be nonnegative, got " + std::to_string(degree));
  }
  if (distinct.size() < 2) {
    throw Error(ErrorKind::NonIncreasingKnots, "need at least the two breakpoints 0 and 1");
  }
  if (distinct.size() != multiplicities.size()) {
    throw Error(ErrorKind::MultiplicityOutOfRange,
                "breakpoint and multiplicity lists differ in length");
  }
  if (distinct.front() != 0.0 || distinct.back() != 1.0) {
    throw Error(ErrorKind::NonIncreasingKnots, "breakpoints must start at 0 and end at 1");
  }
  for (std::size_t i = 1; i < distinct.size(); ++i) {
    if (!(distinct[i] > distinct[i - 1]) || !std::isfinite(distinct[i])) {
      throw Error(ErrorKind::NonIncreasingKnots,
                  "breakpoint " + std::to_string(i) + " does not exceed its predecessor");
    }
  }
  if (multiplicities.front() != degree + 1 || multiplicities.back() != degree + 1) {
    throw Error(ErrorKind::NotOpen, "end multiplicities must equal degree + 1");
  }
  for (std::size_t i = 1; i + 1 < multiplicities.size(); ++i) {
    if (multiplicities[i] < 1 || multiplicities[i] > degree + 1) {
      throw Error(ErrorKind::MultiplicityOutOfRange,
                  "interior multiplicity " + std::to_string(multiplicities[i]) +
                      " outside [1, degree + 1]");
    }
  }
  return KnotVector(std::move(distinct), std::move(multiplicities), degree);
}

KnotVector KnotVector::single_span(int degree) {
  return make_open({0.0, 1.0}, {degree + 1, degree + 1}, degree);
}

KnotVector::KnotVector(std::vector<double> distinct, std::vector<int> multiplicities, int degree)
    : distinct_(std::move(distinct)), multiplicities_(std::move(multiplicities)), degree_(degree) {
  for (std::size_t i = 0; i < distinct_.size(); ++i) {
    expanded_.insert(expanded_.end(), static_cast<std::size_t>(multiplicities_[i]), distinct_[i]);
  }
}

std::vector<int> KnotVector::regularity() const {
  std::vector<int> k(multiplicities_.size());
  std::transform(multiplicities_.begin(), multiplicities_.end(), k.begin(),
                 [this](int r) { return degree_ - r + 1; });
  return k;
}

int KnotVector::find_span(double x, Side side) const {
  const auto first = expanded_.begin();
  const auto it = side == Side::Right ? std::upper_bound(first, expanded_.end(), x)
                                      : std::lower_bound(first, expanded_.end(), x);
  const int s = static_cast<int>(it - first) - 1;
  return std::clamp(s, degree_, basis_count() - 1);
}

}  // namespace spiga
