#pragma once

#include <vector>

#include "fuserl/core/types.hpp"

namespace fuserl {

struct InstantReward {
  double total = 0.0;
  Vector components;  // one entry per behavior group
};

/// Weighted sum of all behaviors over the whole shown list, plus the same sum
/// restricted to each behavior group. total == components.sum() exactly.
InstantReward instantReward(const std::vector<BehaviorFeedback>& feedback,
                            const RewardConfig& config);

/// Single-impression restriction of the instant reward (used as the
/// per-impression sample weight in evaluation).
double perItemReward(const BehaviorFeedback& feedback, const RewardConfig& config);

/// sum_{i=0..T-t} gamma^i * r_{t+i} over a list of per-step reward totals.
double discountedReturn(const std::vector<double>& rewardTotals, int fromStep, double gamma);

double cumulativeReward(const SessionTrajectory& trajectory, int fromStep, double gamma);

inline double sessionReturn(const SessionTrajectory& trajectory, double gamma) {
  return cumulativeReward(trajectory, 0, gamma);
}

}  // namespace fuserl
