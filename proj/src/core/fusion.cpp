#include "fuserl/core/fusion.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace fuserl {

double fuseScore(const PredScores& scores, const FusionAction& action) {
  FUSERL_CHECK(scores.behaviorCount() == action.behaviorCount(),
               "fuseScore: score/action behavior counts differ");
  double product = 1.0;
  for (int i = 0; i < scores.behaviorCount(); ++i) {
    double base = scores.values[i] + action.biases[i];
    if (base < kFusionBaseFloor) base = kFusionBaseFloor;
    product *= std::pow(base, action.powers[i]);
  }
  return product;
}

std::vector<int> rankCandidates(const std::vector<PredScores>& candidates,
                                const FusionAction& action, int listLength) {
  FUSERL_CHECK(listLength >= 0, "rankCandidates: negative list length");
  FUSERL_CHECK(listLength <= static_cast<int>(candidates.size()),
               "rankCandidates: list length exceeds candidate count");
  std::vector<double> fused(candidates.size());
  for (std::size_t i = 0; i < candidates.size(); ++i) fused[i] = fuseScore(candidates[i], action);

  std::vector<int> order(candidates.size());
  std::iota(order.begin(), order.end(), 0);
  std::partial_sort(order.begin(), order.begin() + listLength, order.end(),
                    [&](int a, int b) {
                      if (fused[a] != fused[b]) return fused[a] > fused[b];
                      return a < b;
                    });
  order.resize(listLength);
  return order;
}

}  // namespace fuserl
