#include "spiga/knot_design.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "spiga/error.hpp"

namespace spiga {

std::string_view to_string(KnotStrategy strategy) noexcept {
  switch (strategy) {
    case KnotStrategy::Uniform: return "uniform";
    case KnotStrategy::ReactionDiffusion: return "reaction-diffusion";
    case KnotStrategy::ConvectionDiffusion: return "convection-diffusion";
    case KnotStrategy::ReactionConvectionDiffusion: return "reaction-convection-diffusion";
  }
  return "unknown";
}

std::optional<KnotStrategy> parse_strategy(std::string_view name) noexcept {
  for (auto s : {KnotStrategy::Uniform, KnotStrategy::ReactionDiffusion,
                 KnotStrategy::ConvectionDiffusion, KnotStrategy::ReactionConvectionDiffusion}) {
    if (name == to_string(s)) return s;
  }
  if (name == "rd") return KnotStrategy::ReactionDiffusion;
  if (name == "cd") return KnotStrategy::ConvectionDiffusion;
  if (name == "rcd") return KnotStrategy::ReactionConvectionDiffusion;
  return std::nullopt;
}

KnotStrategy strategy_for(Regime regime) noexcept {
  switch (regime) {
    case Regime::ConvectionDiffusion: return KnotStrategy::ConvectionDiffusion;
    case Regime::ConvectionReactionDiffusion: return KnotStrategy::ReactionConvectionDiffusion;
    case Regime::ReactionDiffusion: return KnotStrategy::ReactionDiffusion;
  }
  return KnotStrategy::ReactionDiffusion;
}

DesignedKnots design_knots(const RegimeReport& report, KnotStrategy strategy, int p,
                           const KnotDesignOptions& options) {
  if (p < 1) throw Error(ErrorKind::InvalidDegree, "degree must be at least 1");
  if (options.p_max < 1) throw Error(ErrorKind::InvalidParameter, "p_max must be at least 1");

  const double width = options.p_max;
  if (strategy == KnotStrategy::Uniform || width / report.mu1 >= 0.5) {
    return {KnotVector::single_span(p), false, {}};
  }

  std::vector<double> interior;
  switch (strategy) {
    case KnotStrategy::ReactionDiffusion: {
      const double layer = width * std::sqrt(report.eps1);
      interior = {layer, 1.0 - layer};
      break;
    }
    case KnotStrategy::ConvectionDiffusion:
      interior = {1.0 - width * report.eps1};
      break;
    case KnotStrategy::ReactionConvectionDiffusion:
      interior = {width / report.mu0, 1.0 - width / report.mu1};
      break;
    case KnotStrategy::Uniform:
      break;
  }

  for (double t : interior) {
    if (!(t > 0.0 && t < 1.0)) {
      std::ostringstream os;
      os.precision(17);
      os << "layer knot " << t << " is not strictly inside (0,1) in binary64";
      throw Error(ErrorKind::DegenerateLayerKnots, os.str());
    }
  }
  if (interior.size() == 2 && !(interior[0] < interior[1])) {
    std::ostringstream os;
    os << "layer regions overlap (" << interior[0] << " >= " << interior[1]
       << "); using the single-span vector";
    return {KnotVector::single_span(p), false, os.str()};
  }

  const int mult = std::clamp(options.interior_multiplicity.value_or(p), 1, p);
  std::vector<double> distinct{0.0};
  distinct.insert(distinct.end(), interior.begin(), interior.end());
  distinct.push_back(1.0);
  std::vector<int> mults(distinct.size(), mult);
  mults.front() = p + 1;
  mults.back() = p + 1;
  return {KnotVector::make_open(std::move(distinct), std::move(mults), p), true, {}};
}

}  // namespace spiga
