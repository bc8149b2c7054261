#include "fuserl/explore/exploration.hpp"

#include <cmath>
#include <limits>

namespace fuserl {

FusionAction exploreBounded(const ExplorationBounds& bounds, const ActionRange& range,
                            RngStream& rng) {
  bounds.validate();
  Vector flat = bounds.baselineAction.flat();
  for (int d = 0; d < flat.size(); ++d) {
    double perturbed = flat[d] + rng.uniformRange(bounds.lower, bounds.upper);
    flat[d] = range.clamp(perturbed);
  }
  return FusionAction::fromFlat(flat);
}

FusionAction exploreGaussian(const FusionAction& baseline, const GaussianExplorationConfig& config,
                             const ActionRange& range, RngStream& rng) {
  config.validate();
  Vector flat = baseline.flat();
  for (int d = 0; d < flat.size(); ++d) {
    flat[d] = range.clamp(flat[d] + rng.normal(config.mean, config.stddev));
  }
  return FusionAction::fromFlat(flat);
}

ExplorationEfficiency compareExplorationEfficiency(double lower, double upper,
                                                   const GaussianExplorationConfig& gauss,
                                                   int dims, int samples, std::uint64_t seed) {
  FUSERL_CHECK(dims >= 1 && samples >= 1, "compareExplorationEfficiency: bad arguments");
  FUSERL_CHECK(lower < upper, "compareExplorationEfficiency: empty box");
  RngStream rng(seed);
  long hits = 0;
  for (int i = 0; i < samples; ++i) {
    bool inside = true;
    for (int d = 0; d < dims; ++d) {
      double noise = rng.normal(gauss.mean, gauss.stddev);
      inside = inside && noise >= lower && noise <= upper;
      if (!inside) break;
    }
    if (inside) ++hits;
  }
  ExplorationEfficiency out;
  out.gaussianJointRate = static_cast<double>(hits) / samples;
  out.measuredRatio = out.gaussianJointRate > 0.0 ? 1.0 / out.gaussianJointRate
                                                  : std::numeric_limits<double>::infinity();
  out.nominalRatio = std::pow(2.0, dims);
  return out;
}

ContainmentStats containmentStats(const std::vector<FusionAction>& samples,
                                  const ExplorationBounds& bounds) {
  FUSERL_CHECK(!samples.empty(), "containmentStats: empty sample list");
  Vector base = bounds.baselineAction.flat();
  int dims = static_cast<int>(base.size());
  Eigen::VectorXi perDim = Eigen::VectorXi::Zero(dims);
  long jointHits = 0;
  for (const auto& sample : samples) {
    Vector flat = sample.flat();
    FUSERL_CHECK(flat.size() == dims, "containmentStats: sample dimension mismatch");
    bool all = true;
    for (int d = 0; d < dims; ++d) {
      bool in = flat[d] >= base[d] + bounds.lower && flat[d] <= base[d] + bounds.upper;
      if (in) perDim[d] += 1;
      all = all && in;
    }
    if (all) jointHits += 1;
  }
  ContainmentStats stats;
  stats.perDimRate = perDim.cast<double>() / static_cast<double>(samples.size());
  stats.jointRate = static_cast<double>(jointHits) / static_cast<double>(samples.size());
  return stats;
}

std::vector<DimDeviation> penaltyDistance(const FusionAction& action,
                                          const ExplorationBounds& bounds) {
  Vector a = action.flat();
  Vector base = bounds.baselineAction.flat();
  FUSERL_CHECK(a.size() == base.size(), "penaltyDistance: action/baseline dimension mismatch");
  std::vector<DimDeviation> out(a.size());
  for (int d = 0; d < a.size(); ++d) {
    double hi = base[d] + bounds.upper;
    double lo = base[d] + bounds.lower;
    if (a[d] >= hi) {
      out[d] = {a[d] - hi, BoxRegion::AtOrAbove};
    } else if (a[d] <= lo) {
      out[d] = {lo - a[d], BoxRegion::AtOrBelow};
    } else {
      out[d] = {0.0, BoxRegion::Inside};
    }
  }
  return out;
}

}  // namespace fuserl
