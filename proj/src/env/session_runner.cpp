#include "fuserl/env/session_runner.hpp"

#include "fuserl/core/fusion.hpp"
#include "fuserl/core/reward.hpp"

namespace fuserl::env {

SessionResult runSession(const EnvConfig& envConfig, const RewardConfig& rewardConfig,
                         std::uint64_t seed, std::int64_t sessionId, const ActionFn& chooseAction,
                         const StepObserver& observer) {
  SessionResult result;
  result.trajectory.sessionId = sessionId;
  result.trajectory.userId = sessionId;

  auto sid = static_cast<std::uint64_t>(sessionId);
  RngStream userStream = deriveStream(seed, streams::kUserInit, sid);
  auto [state, latent] = resetSession(envConfig, userStream);

  double discount = 1.0;
  for (int step = 0; step < envConfig.maxSessionLength; ++step) {
    RngStream itemStream = deriveStream(seed, streams::kCandidates, sid, step);
    std::vector<Candidate> candidates = generateCandidates(latent, envConfig, itemStream);

    auto [action, meta] = chooseAction(step, state);
    std::vector<PredScores> scores;
    scores.reserve(candidates.size());
    for (const auto& c : candidates) scores.push_back(c.predScores);
    std::vector<int> shown = rankCandidates(scores, action, envConfig.listLength);

    RngStream feedbackStream = deriveStream(seed, streams::kFeedback, sid, step);
    RngStream continueStream = deriveStream(seed, streams::kContinue, sid, step);
    StepOutcome outcome = stepSession(latent, shown, candidates, envConfig, rewardConfig,
                                      feedbackStream, continueStream);

    if (observer) observer(step, state, shown, candidates, outcome.feedback);

    Transition transition;
    transition.state = state;
    transition.action = action;
    transition.rewardComponents = outcome.stepRewardComponents;
    transition.rewardTotal = outcome.stepRewardTotal;
    transition.nextState = outcome.nextState;
    transition.terminal = !outcome.sessionContinues;
    transition.behaviorMeta = meta;
    result.trajectory.transitions.push_back(std::move(transition));

    result.discountedReturn += discount * outcome.stepRewardTotal;
    discount *= rewardConfig.discount;
    for (const auto& fb : outcome.feedback) {
      result.totalWatchSeconds += fb.values[0];
      if (envConfig.behaviorCount > 1) result.validConsumptionCount += fb.values[1];
    }

    state = outcome.nextState;
    if (!outcome.sessionContinues) break;
  }
  return result;
}

}  // namespace fuserl::env
