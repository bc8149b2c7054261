#pragma once

#include <vector>

#include "fuserl/core/types.hpp"
#include "fuserl/util/rng.hpp"

namespace fuserl {

/// Bounded-uniform exploration: baseline + U(lower, upper) per dimension,
/// clamped to the global legal range.
FusionAction exploreBounded(const ExplorationBounds& bounds, const ActionRange& range,
                            RngStream& rng);

/// Gaussian-noise exploration baseline policy.
FusionAction exploreGaussian(const FusionAction& baseline, const GaussianExplorationConfig& config,
                             const ActionRange& range, RngStream& rng);

struct ContainmentStats {
  Vector perDimRate;
  double jointRate = 0.0;
};

/// Fraction of sampled actions inside the closed exploration box, per
/// dimension and jointly.
ContainmentStats containmentStats(const std::vector<FusionAction>& samples,
                                  const ExplorationBounds& bounds);

struct ExplorationEfficiency {
  double boundedJointRate = 1.0;
  double gaussianJointRate = 0.0;
  double measuredRatio = 0.0;   // boundedJointRate / gaussianJointRate
  double nominalRatio = 0.0;    // 2^dims halving argument
};

/// Monte-Carlo comparison of how much of each policy's sampling mass lands
/// inside the exploration box (the efficiency argument for bounded-uniform
/// exploration). Reports the measured ratio alongside the nominal 2^dims one.
ExplorationEfficiency compareExplorationEfficiency(double lower, double upper,
                                                   const GaussianExplorationConfig& gauss,
                                                   int dims, int samples, std::uint64_t seed);

enum class BoxRegion { Inside, AtOrAbove, AtOrBelow };

struct DimDeviation {
  double deviation = 0.0;  // nonnegative distance past the owning bound
  BoxRegion region = BoxRegion::Inside;
};

/// Per-dimension position of an action relative to the exploration box. The
/// box is open: boundary points belong to the AtOrAbove/AtOrBelow regions
/// with deviation 0.
std::vector<DimDeviation> penaltyDistance(const FusionAction& action,
                                          const ExplorationBounds& bounds);

}  // namespace fuserl
