#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "spiga/knot_vector.hpp"
#include "spiga/problem.hpp"

namespace spiga {

enum class KnotStrategy { Uniform, ReactionDiffusion, ConvectionDiffusion, ReactionConvectionDiffusion };

std::string_view to_string(KnotStrategy strategy) noexcept;
std::optional<KnotStrategy> parse_strategy(std::string_view name) noexcept;

/// The layer-adapted recipe matching a classified regime.
KnotStrategy strategy_for(Regime regime) noexcept;

struct KnotDesignOptions {
  /// Layer-width multiplier; fixed across a p-sweep so the spaces stay nested.
  int p_max = 10;
  /// Multiplicity of each layer-transition knot, clamped to [1, p].
  /// Empty means p, i.e. C0 at the transition knots.
  std::optional<int> interior_multiplicity = 1;
};

struct DesignedKnots {
  KnotVector knots;
  /// False when the single-span vector was used.
  bool layer_adapted = false;
  /// Set when the layer recipe was abandoned because its two knots overlapped.
  std::string warning;
};

/**
 * Open knot vector for degree p on [0,1].
 *
 *   Uniform, or p_max / mu1 >= 1/2:  [0^{p+1}, 1^{p+1}]
 *   ReactionDiffusion:               {p_max sqrt(eps1), 1 - p_max sqrt(eps1)}
 *   ConvectionDiffusion:             {1 - p_max eps1}
 *   ReactionConvectionDiffusion:     {p_max / mu0, 1 - p_max / mu1}
 *
 * Throws DegenerateLayerKnots when a layer knot rounds onto 0 or 1.
 */
DesignedKnots design_knots(const RegimeReport& report, KnotStrategy strategy, int p,
                           const KnotDesignOptions& options = {});

}  // namespace spiga
