#pragma once

#include <string>
#include <vector>

#include "fuserl/env/session_env.hpp"
#include "fuserl/pipeline/policy.hpp"

namespace fuserl::eval {

struct RolloutMetrics {
  std::string name;
  double meanReturn = 0.0;  // discounted session return
  double ciLow = 0.0;
  double ciHigh = 0.0;
  double uvc = 0.0;  // mean valid consumptions per session
  double udt = 0.0;  // mean watch seconds per session
  int sessions = 0;
};

/// Paired greedy rollouts: every policy is evaluated on the same session
/// seeds (and the same bootstrap resamples for its confidence interval), so
/// differences are policy differences. Deterministic given the seed.
std::vector<RolloutMetrics> abRollout(const std::vector<const pipeline::Policy*>& policies,
                                      const std::vector<std::string>& names,
                                      const env::EnvConfig& envConfig,
                                      const RewardConfig& rewardConfig, int sessionsPerPolicy,
                                      std::uint64_t seed, int bootstrapSamples, int workers);

}  // namespace fuserl::eval
