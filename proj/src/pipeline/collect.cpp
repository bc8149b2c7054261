#include "fuserl/pipeline/collect.hpp"

#include "fuserl/env/session_runner.hpp"
#include "fuserl/explore/exploration.hpp"
#include "fuserl/util/hash.hpp"
#include "fuserl/util/parallel.hpp"

namespace fuserl::pipeline {

void ExplorationConfig::validate() const {
  if (variant == ExplorationVariant::Bounded) {
    FUSERL_CHECK(lower < upper, "ExplorationConfig: lower bound must be < upper bound");
    FUSERL_CHECK(lower <= 0.0 && upper >= 0.0,
                 "ExplorationConfig: box must contain the baseline action for every state");
  } else {
    gauss.validate();
  }
}

Dataset collectDataset(const Policy& baselinePolicy, const ExplorationConfig& exploration,
                       int numSessions, const env::EnvConfig& envConfig,
                       const RewardConfig& rewardConfig, const ActionRange& actionRange,
                       std::uint64_t seed, int roundId, int workers) {
  FUSERL_CHECK(numSessions >= 1, "collectDataset: numSessions must be >= 1");
  exploration.validate();
  envConfig.validate();
  rewardConfig.validate();
  FUSERL_CHECK(baselinePolicy.stateDim() == envConfig.stateDim(),
               "collectDataset: baseline policy state dimension does not match the environment");
  FUSERL_CHECK(baselinePolicy.behaviorCount() == envConfig.behaviorCount,
               "collectDataset: baseline policy behavior count does not match the environment");

  Dataset dataset;
  dataset.seed = seed;
  dataset.roundId = roundId;
  dataset.collectionPolicy.variant = exploration.variant;
  dataset.collectionPolicy.lower = exploration.lower;
  dataset.collectionPolicy.upper = exploration.upper;
  dataset.collectionPolicy.gaussMean = exploration.gauss.mean;
  dataset.collectionPolicy.gaussStd = exploration.gauss.stddev;
  dataset.collectionPolicy.baselinePolicyId = contentHash(baselinePolicy.descriptor().dump());

  dataset.sessions.resize(numSessions);
  parallelFor(static_cast<std::size_t>(numSessions), workers, [&](std::size_t idx) {
    auto sessionId = static_cast<std::int64_t>(idx);
    env::ActionFn explore = [&](int step, const State& state) {
      FusionAction baseline = baselinePolicy.act(state);
      RngStream rng = deriveStream(seed, streams::kExplore, static_cast<std::uint64_t>(idx), step);
      BehaviorMeta meta;
      meta.variant = exploration.variant;
      meta.bounds.baselineAction = baseline;
      FusionAction served;
      if (exploration.variant == ExplorationVariant::Bounded) {
        meta.bounds.lower = exploration.lower;
        meta.bounds.upper = exploration.upper;
        meta.gaussStd = 0.0;
        served = exploreBounded(meta.bounds, actionRange, rng);
      } else {
        meta.bounds.lower = 0.0;
        meta.bounds.upper = 0.0;
        meta.gaussStd = exploration.gauss.stddev;
        served = exploreGaussian(baseline, exploration.gauss, actionRange, rng);
      }
      return std::make_pair(served, meta);
    };
    env::SessionResult result = env::runSession(envConfig, rewardConfig, seed, sessionId, explore);
    result.trajectory.roundId = roundId;
    dataset.sessions[idx] = std::move(result.trajectory);
  });
  return dataset;
}

}  // namespace fuserl::pipeline
