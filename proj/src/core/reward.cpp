#include "fuserl/core/reward.hpp"

namespace fuserl {

InstantReward instantReward(const std::vector<BehaviorFeedback>& feedback,
                            const RewardConfig& config) {
  InstantReward out;
  out.components = Vector::Zero(config.groupCount());
  for (const auto& item : feedback) {
    FUSERL_CHECK(item.behaviorCount() == config.behaviorCount(),
                 "instantReward: feedback/weights behavior counts differ");
    for (int g = 0; g < config.groupCount(); ++g) {
      for (int b : config.groups[g]) {
        out.components[g] += config.weights[b] * item.values[b];
      }
    }
  }
  out.total = out.components.sum();
  return out;
}

double perItemReward(const BehaviorFeedback& feedback, const RewardConfig& config) {
  FUSERL_CHECK(feedback.behaviorCount() == config.behaviorCount(),
               "perItemReward: feedback/weights behavior counts differ");
  double r = 0.0;
  for (int b = 0; b < config.behaviorCount(); ++b) r += config.weights[b] * feedback.values[b];
  return r;
}

double discountedReturn(const std::vector<double>& rewardTotals, int fromStep, double gamma) {
  FUSERL_CHECK(fromStep >= 0 && fromStep < static_cast<int>(rewardTotals.size()),
               "discountedReturn: step out of range");
  double value = 0.0;
  double factor = 1.0;
  for (std::size_t t = fromStep; t < rewardTotals.size(); ++t) {
    value += factor * rewardTotals[t];
    factor *= gamma;
  }
  return value;
}

double cumulativeReward(const SessionTrajectory& trajectory, int fromStep, double gamma) {
  std::vector<double> totals;
  totals.reserve(trajectory.transitions.size());
  for (const auto& t : trajectory.transitions) totals.push_back(t.rewardTotal);
  return discountedReturn(totals, fromStep, gamma);
}

}  // namespace fuserl
