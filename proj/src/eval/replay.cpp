#include "fuserl/eval/replay.hpp"

#include <cmath>
#include <map>

#include "fuserl/core/fusion.hpp"
#include "fuserl/core/reward.hpp"
#include "fuserl/env/session_runner.hpp"

namespace fuserl::eval {

LoggedImpressions replayImpressions(const pipeline::Dataset& dataset,
                                    const env::EnvConfig& envConfig,
                                    const RewardConfig& rewardConfig) {
  envConfig.validate();
  rewardConfig.validate();
  LoggedImpressions out;
  for (const auto& session : dataset.sessions) {
    env::ActionFn playback = [&](int step, const State&) {
      FUSERL_CHECK(step < session.length(), "replay: session ran past its logged length");
      const Transition& t = session.transitions[step];
      return std::make_pair(t.action, t.behaviorMeta);
    };
    env::StepObserver capture = [&](int step, const State& state, const std::vector<int>& shown,
                                    const std::vector<env::Candidate>& candidates,
                                    const std::vector<BehaviorFeedback>& feedback) {
      int stateIndex = static_cast<int>(out.states.size());
      out.states.push_back(state);
      for (std::size_t pos = 0; pos < shown.size(); ++pos) {
        LoggedImpressions::Item item;
        item.userId = session.userId;
        item.stepStateIndex = stateIndex;
        item.predScores = candidates[shown[pos]].predScores;
        item.label = feedback[pos].values[1] > 0.5 ? 1 : 0;
        item.sampleWeight = perItemReward(feedback[pos], rewardConfig);
        out.items.push_back(std::move(item));
      }
      (void)step;
    };
    env::SessionResult replayed = env::runSession(envConfig, rewardConfig, dataset.seed,
                                                  session.sessionId, playback, capture);
    if (replayed.trajectory.length() != session.length()) {
      throw IntegrityError("replay: reconstructed session length differs from the log (session " +
                           std::to_string(session.sessionId) + ")");
    }
    for (int t = 0; t < session.length(); ++t) {
      double replayedReward = replayed.trajectory.transitions[t].rewardTotal;
      double loggedReward = session.transitions[t].rewardTotal;
      if (std::abs(replayedReward - loggedReward) > 1e-9) {
        throw IntegrityError(
            "replay: reconstructed rewards differ from the log; the dataset was not collected "
            "under this environment config (session " + std::to_string(session.sessionId) + ")");
      }
    }
  }
  return out;
}

double mtfGaucForPolicy(const LoggedImpressions& impressions, const pipeline::Policy& policy) {
  // One action per logged step state, then the fused score per impression.
  std::vector<FusionAction> stepActions;
  stepActions.reserve(impressions.states.size());
  for (const auto& state : impressions.states) stepActions.push_back(policy.act(state));

  std::map<std::int64_t, std::vector<ImpressionRecord>> groups;
  for (const auto& item : impressions.items) {
    ImpressionRecord rec;
    rec.userId = item.userId;
    rec.label = item.label;
    rec.sampleWeight = item.sampleWeight;
    rec.prediction = fuseScore(item.predScores, stepActions[item.stepStateIndex]);
    groups[item.userId].push_back(rec);
  }

  std::vector<std::vector<ImpressionRecord>> grouped;
  grouped.reserve(groups.size());
  for (auto& [userId, records] : groups) {
    // Min-max normalization within the user group; AUC is invariant to any
    // strictly increasing map, this just fixes the reported prediction scale.
    double lo = records.front().prediction;
    double hi = lo;
    for (const auto& r : records) {
      lo = std::min(lo, r.prediction);
      hi = std::max(hi, r.prediction);
    }
    if (hi > lo) {
      for (auto& r : records) r.prediction = (r.prediction - lo) / (hi - lo);
    }
    grouped.push_back(std::move(records));
  }
  return mtfGauc(grouped);
}

}  // namespace fuserl::eval
