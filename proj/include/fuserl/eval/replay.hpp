#pragma once

#include "fuserl/env/session_env.hpp"
#include "fuserl/eval/metrics.hpp"
#include "fuserl/pipeline/dataset.hpp"
#include "fuserl/pipeline/policy.hpp"

namespace fuserl::eval {

/// Impression-level view of a logged dataset, reconstructed by replaying each
/// session's RNG substreams under the logged actions: the shown items' pred
/// scores and feedback come back exactly as they were served.
struct LoggedImpressions {
  struct Item {
    std::int64_t userId = 0;
    int stepStateIndex = 0;  // index into states
    PredScores predScores;
    int label = 0;           // valid consumption indicator
    double sampleWeight = 0.0;
  };
  std::vector<State> states;  // one per logged step, across all sessions
  std::vector<Item> items;
};

/// Throws IntegrityError when the replayed rewards do not match the logged
/// ones (wrong env config or tampered dataset).
LoggedImpressions replayImpressions(const pipeline::Dataset& dataset,
                                    const env::EnvConfig& envConfig,
                                    const RewardConfig& rewardConfig);

/// Scores every logged impression with the policy's action at its step state
/// (fused final score, min-max normalized within each user group) and
/// computes MTF-GAUC.
double mtfGaucForPolicy(const LoggedImpressions& impressions, const pipeline::Policy& policy);

}  // namespace fuserl::eval
