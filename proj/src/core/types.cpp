#include "fuserl/core/types.hpp"

#include <cmath>
#include <string>

namespace fuserl {

void State::validate(int expectedDim) const {
  FUSERL_CHECK(dim() == expectedDim, "State: wrong feature dimension");
  FUSERL_CHECK(features.allFinite(), "State: features must be finite");
}

Vector FusionAction::flat() const {
  Vector out(dim());
  out.head(behaviorCount()) = powers;
  out.tail(behaviorCount()) = biases;
  return out;
}

FusionAction FusionAction::fromFlat(const Vector& flat) {
  FUSERL_CHECK(flat.size() % 2 == 0, "FusionAction: flat vector must have even length");
  int k = static_cast<int>(flat.size()) / 2;
  FusionAction a;
  a.powers = flat.head(k);
  a.biases = flat.tail(k);
  return a;
}

FusionAction FusionAction::constant(int behaviorCount, double power, double bias) {
  FusionAction a;
  a.powers = Vector::Constant(behaviorCount, power);
  a.biases = Vector::Constant(behaviorCount, bias);
  return a;
}

void FusionAction::validate(const ActionRange& range) const {
  FUSERL_CHECK(powers.size() == biases.size(), "FusionAction: powers/biases length mismatch");
  FUSERL_CHECK(powers.allFinite() && biases.allFinite(), "FusionAction: entries must be finite");
  for (int i = 0; i < behaviorCount(); ++i) {
    FUSERL_CHECK(powers[i] >= range.min && powers[i] <= range.max,
                 "FusionAction: power outside legal range");
    FUSERL_CHECK(biases[i] >= range.min && biases[i] <= range.max,
                 "FusionAction: bias outside legal range");
  }
}

void PredScores::validate() const {
  for (int i = 0; i < behaviorCount(); ++i) {
    FUSERL_CHECK(values[i] > 0.0 && values[i] <= 1.0, "PredScores: entries must lie in (0, 1]");
  }
}

void RewardConfig::validate() const {
  FUSERL_CHECK(behaviorCount() >= 1, "RewardConfig: needs at least one behavior");
  for (int i = 0; i < behaviorCount(); ++i) {
    FUSERL_CHECK(weights[i] >= 0.0, "RewardConfig: weights must be nonnegative");
  }
  FUSERL_CHECK(discount >= 0.0 && discount <= 1.0, "RewardConfig: discount must be in [0, 1]");
  FUSERL_CHECK(!groups.empty(), "RewardConfig: grouping must be nonempty");
  std::vector<int> counts(behaviorCount(), 0);
  for (const auto& g : groups) {
    FUSERL_CHECK(!g.empty(), "RewardConfig: empty behavior group");
    for (int b : g) {
      FUSERL_CHECK(b >= 0 && b < behaviorCount(), "RewardConfig: group index out of range");
      counts[b] += 1;
    }
  }
  for (int c : counts) {
    FUSERL_CHECK(c == 1, "RewardConfig: grouping must cover every behavior exactly once");
  }
}

Vector RewardConfig::setWeights() const {
  Vector out(groupCount());
  double total = weights.sum();
  FUSERL_CHECK(total > 0.0, "RewardConfig: at least one behavior weight must be positive");
  for (int g = 0; g < groupCount(); ++g) {
    double mass = 0.0;
    for (int b : groups[g]) mass += weights[b];
    out[g] = mass / total;
  }
  return out;
}

RewardConfig RewardConfig::defaults() {
  RewardConfig cfg;
  cfg.weights = Vector(5);
  cfg.weights << 0.02, 1.0, 0.5, 0.8, 0.3;
  cfg.groups = {{0}, {1, 2, 3, 4}};
  cfg.discount = 0.9;
  return cfg;
}

RewardConfig RewardConfig::singleGroup(Vector weights, double discount) {
  RewardConfig cfg;
  cfg.weights = std::move(weights);
  cfg.groups.resize(1);
  for (int i = 0; i < cfg.behaviorCount(); ++i) cfg.groups[0].push_back(i);
  cfg.discount = discount;
  return cfg;
}

const char* explorationVariantName(ExplorationVariant v) {
  return v == ExplorationVariant::Bounded ? "bounded" : "gaussian";
}

ExplorationVariant explorationVariantFromName(const std::string& name) {
  if (name == "bounded") return ExplorationVariant::Bounded;
  if (name == "gaussian") return ExplorationVariant::Gaussian;
  throw ContractError("unknown exploration variant: " + name);
}

void Transition::validate(int stateDim, int groupCount) const {
  state.validate(stateDim);
  nextState.validate(stateDim);
  FUSERL_CHECK(static_cast<int>(rewardComponents.size()) == groupCount,
               "Transition: wrong reward component count");
  double recombined = rewardComponents.sum();
  FUSERL_CHECK(std::abs(recombined - rewardTotal) <= 1e-9,
               "Transition: rewardTotal must equal the sum of its components");
}

void SessionTrajectory::validate(int maxSessionLength) const {
  FUSERL_CHECK(length() >= 1, "SessionTrajectory: must contain at least one transition");
  FUSERL_CHECK(length() <= maxSessionLength, "SessionTrajectory: longer than the session cap");
  for (int i = 0; i < length(); ++i) {
    bool isLast = (i == length() - 1);
    FUSERL_CHECK(transitions[i].terminal == isLast,
                 "SessionTrajectory: exactly the last transition must be terminal");
  }
}

}  // namespace fuserl
