#pragma once

#include <functional>

#include "fuserl/env/session_env.hpp"

namespace fuserl::env {

/// Chooses the served action for a step; also reports the behavior-policy
/// snapshot stored in the logged transition.
using ActionFn =
    std::function<std::pair<FusionAction, BehaviorMeta>(int step, const State& state)>;

/// Optional per-step observer (impression capture for evaluation).
using StepObserver = std::function<void(
    int step, const State& state, const std::vector<int>& shownItems,
    const std::vector<Candidate>& candidates, const std::vector<BehaviorFeedback>& feedback)>;

struct SessionResult {
  SessionTrajectory trajectory;
  double discountedReturn = 0.0;
  double totalWatchSeconds = 0.0;
  double validConsumptionCount = 0.0;
};

/// Runs one full session. All randomness comes from substreams derived from
/// (seed, purpose, sessionId, step), so two runs with the same seed, session
/// id, and action sequence are identical — which is also what makes logged
/// sessions exactly replayable.
SessionResult runSession(const EnvConfig& envConfig, const RewardConfig& rewardConfig,
                         std::uint64_t seed, std::int64_t sessionId, const ActionFn& chooseAction,
                         const StepObserver& observer = nullptr);

}  // namespace fuserl::env
