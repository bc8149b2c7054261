#pragma once

#include <span>
#include <vector>

#include "fuserl/pipeline/dataset.hpp"
#include "fuserl/pipeline/policy.hpp"

namespace fuserl::eval {

struct NcisConfig {
  double cap = 10.0;            // c: per-step and per-session weight cap
  double smoothingWidth = 0.05; // delta: full width of the box around the target action
  void validate() const;
};

struct NcisBreakdown {
  std::vector<double> sessionWeights;
  std::vector<double> sessionReturns;  // discounted G_0 per session
  double estimate = 0.0;
};

/// Self-normalized weighted mean sum(w*v)/sum(w); throws
/// DegenerateEstimateError when the total weight is zero.
double selfNormalizedMean(std::span<const double> weights, std::span<const double> values);

/// Normalized capped importance sampling against a box-smoothed deterministic
/// target policy. Behavior propensities come from each transition's logged
/// exploration metadata (uniform box or Gaussian density); per-step ratios
/// are clipped to [0, cap], multiplied over the session, and the session
/// weight is capped again.
NcisBreakdown ncisEstimate(const pipeline::Dataset& dataset, const pipeline::Policy& policy,
                           const NcisConfig& config, double gamma);

}  // namespace fuserl::eval
