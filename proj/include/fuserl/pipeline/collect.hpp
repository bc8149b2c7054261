#pragma once

#include "fuserl/env/session_env.hpp"
#include "fuserl/pipeline/dataset.hpp"
#include "fuserl/pipeline/policy.hpp"

namespace fuserl::pipeline {

struct ExplorationConfig {
  ExplorationVariant variant = ExplorationVariant::Bounded;
  double lower = -0.15;
  double upper = 0.15;
  GaussianExplorationConfig gauss;
  void validate() const;
};

/// Runs numSessions sessions serving exploration noise around the baseline
/// policy's action and logs every transition. Deterministic given the seed;
/// sessions are independent and collected in parallel.
Dataset collectDataset(const Policy& baselinePolicy, const ExplorationConfig& exploration,
                       int numSessions, const env::EnvConfig& envConfig,
                       const RewardConfig& rewardConfig, const ActionRange& actionRange,
                       std::uint64_t seed, int roundId, int workers);

}  // namespace fuserl::pipeline
