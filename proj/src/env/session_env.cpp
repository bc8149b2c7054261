#include "fuserl/env/session_env.hpp"

#include <cmath>

#include "fuserl/core/reward.hpp"

namespace fuserl::env {

namespace {

// Item propensity transform. Each candidate has an affinity (user preference
// dot item latent) and a scalar "grabby" trait: trait-heavy items collect
// watch seconds (and a little valid consumption) but fewer interactions.
constexpr double kWatchOffset = -4.6;
constexpr double kWatchAffinity = 0.5;
constexpr double kWatchTrait = 1.5;
constexpr double kVcOffset = -1.2;
constexpr double kVcAffinity = 0.8;
constexpr double kVcTrait = 1.0;
constexpr double kLikeOffset = -2.0;
constexpr double kLikeAffinity = 0.9;
constexpr double kLikeTrait = -0.35;
constexpr double kShareOffset = -2.6;
constexpr double kShareAffinity = 0.9;
constexpr double kShareTrait = -0.35;
constexpr double kFinishOffset = -1.4;
constexpr double kFinishAffinity = 0.7;
constexpr double kFinishTrait = -0.5;

constexpr double kWatchMeanSeconds = 30.0;
constexpr double kWatchFeatureScale = 1.0 / kWatchMeanSeconds;
constexpr double kEmaDecay = 0.9;
constexpr double kPredScoreFloor = 1e-6;

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

}  // namespace

void EnvConfig::validate() const {
  FUSERL_CHECK(candidatesPerRequest >= 1, "EnvConfig: candidatesPerRequest must be >= 1");
  FUSERL_CHECK(listLength >= 1 && listLength <= candidatesPerRequest,
               "EnvConfig: listLength must be in [1, candidatesPerRequest]");
  FUSERL_CHECK(maxSessionLength >= 1, "EnvConfig: maxSessionLength must be >= 1");
  FUSERL_CHECK(behaviorCount >= 1, "EnvConfig: behaviorCount must be >= 1");
  FUSERL_CHECK(fatigueDecay >= 0.0 && fatigueDecay < 1.0, "EnvConfig: fatigueDecay must be in [0, 1)");
  FUSERL_CHECK(fatigueGain >= 0.0, "EnvConfig: fatigueGain must be >= 0");
  FUSERL_CHECK(predictionNoiseStd >= 0.0, "EnvConfig: predictionNoiseStd must be >= 0");
}

State encodeState(const UserLatent& latent, const EnvConfig& config) {
  State s;
  s.features = Vector::Zero(config.stateDim());
  int k = config.behaviorCount;
  s.features.head(EnvConfig::kPreferenceDim) = latent.preference;
  for (int b = 0; b < k; ++b) {
    s.features[EnvConfig::kPreferenceDim + 2 * b] = latent.emaFeedback[b];
    s.features[EnvConfig::kPreferenceDim + 2 * b + 1] = latent.lastFeedback[b];
  }
  int base = EnvConfig::kPreferenceDim + 2 * k;
  s.features[base + 0] = latent.fatigue;
  s.features[base + 1] = static_cast<double>(latent.stepIndex) / config.maxSessionLength;
  s.features[base + 2] = latent.returnSoFar / (config.maxSessionLength * config.listLength);
  s.features[base + 3] = latent.lastStepReward / config.listLength;
  // remaining dims stay zero (reserved)
  return s;
}

std::pair<State, UserLatent> resetSession(const EnvConfig& config, RngStream& userStream) {
  UserLatent latent;
  latent.preference.resize(EnvConfig::kPreferenceDim);
  for (int i = 0; i < EnvConfig::kPreferenceDim; ++i) latent.preference[i] = userStream.normal();
  latent.emaFeedback = Vector::Zero(config.behaviorCount);
  latent.lastFeedback = Vector::Zero(config.behaviorCount);
  return {encodeState(latent, config), latent};
}

std::vector<Candidate> generateCandidates(const UserLatent& latent, const EnvConfig& config,
                                          RngStream& itemStream) {
  FUSERL_CHECK(config.behaviorCount == 5,
               "generateCandidates: the synthetic propensity model is defined for 5 behaviors");
  std::vector<Candidate> out(config.candidatesPerRequest);
  const double invSqrtDim = 1.0 / std::sqrt(static_cast<double>(EnvConfig::kPreferenceDim));
  for (auto& candidate : out) {
    double affinity = 0.0;
    for (int i = 0; i < EnvConfig::kPreferenceDim; ++i) {
      affinity += latent.preference[i] * itemStream.normal() * invSqrtDim;
    }
    double trait = itemStream.normal();

    Vector p(5);
    p[0] = sigmoid(kWatchOffset + kWatchAffinity * affinity + kWatchTrait * trait);
    p[1] = sigmoid(kVcOffset + kVcAffinity * affinity + kVcTrait * trait);
    p[2] = sigmoid(kLikeOffset + kLikeAffinity * affinity + kLikeTrait * trait);
    p[3] = sigmoid(kShareOffset + kShareAffinity * affinity + kShareTrait * trait);
    p[4] = sigmoid(kFinishOffset + kFinishAffinity * affinity + kFinishTrait * trait);
    candidate.truePropensities = p;

    candidate.predScores.values.resize(5);
    for (int b = 0; b < 5; ++b) {
      double noisy = p[b];
      if (config.predictionNoiseStd > 0.0) {
        noisy += itemStream.normal(0.0, config.predictionNoiseStd);
      }
      candidate.predScores.values[b] = std::min(1.0, std::max(kPredScoreFloor, noisy));
    }
  }
  return out;
}

double fatigueUpdate(const EnvConfig& config, double fatigue, double totalWatchSeconds) {
  return config.fatigueDecay * fatigue + config.fatigueGain * totalWatchSeconds;
}

double continuationProbability(const EnvConfig& config, double normalizedReward, double fatigue) {
  return sigmoid(config.alpha0 + config.alpha1 * normalizedReward - config.alpha2 * fatigue);
}

StepOutcome stepSession(UserLatent& latent, const std::vector<int>& shownItems,
                        const std::vector<Candidate>& candidates, const EnvConfig& config,
                        const RewardConfig& rewardConfig, RngStream& feedbackStream,
                        RngStream& continueStream) {
  FUSERL_CHECK(static_cast<int>(shownItems.size()) == config.listLength,
               "stepSession: shown list must have exactly listLength items");
  FUSERL_CHECK(latent.stepIndex < config.maxSessionLength,
               "stepSession: session already ended");

  StepOutcome outcome;
  outcome.feedback.reserve(shownItems.size());
  double totalWatch = 0.0;
  Vector meanFeedback = Vector::Zero(config.behaviorCount);
  for (int idx : shownItems) {
    FUSERL_CHECK(idx >= 0 && idx < static_cast<int>(candidates.size()),
                 "stepSession: shown index out of range");
    const Vector& p = candidates[idx].truePropensities;
    BehaviorFeedback fb;
    fb.values = Vector::Zero(config.behaviorCount);
    fb.values[0] = feedbackStream.exponential(kWatchMeanSeconds * p[0]);
    for (int b = 1; b < config.behaviorCount; ++b) {
      fb.values[b] = feedbackStream.bernoulli(p[b]) ? 1.0 : 0.0;
    }
    totalWatch += fb.values[0];
    meanFeedback += fb.values;
    outcome.feedback.push_back(std::move(fb));
  }
  meanFeedback /= static_cast<double>(shownItems.size());
  meanFeedback[0] *= kWatchFeatureScale;

  InstantReward reward = instantReward(outcome.feedback, rewardConfig);
  outcome.stepRewardTotal = reward.total;
  outcome.stepRewardComponents = reward.components;

  latent.fatigue = fatigueUpdate(config, latent.fatigue, totalWatch);
  latent.emaFeedback = kEmaDecay * latent.emaFeedback + (1.0 - kEmaDecay) * meanFeedback;
  latent.lastFeedback = meanFeedback;
  latent.returnSoFar += reward.total;
  latent.lastStepReward = reward.total;
  latent.stepIndex += 1;

  if (latent.stepIndex >= config.maxSessionLength) {
    outcome.sessionContinues = false;
  } else {
    double normalizedReward = reward.total / config.listLength;
    double pCont = continuationProbability(config, normalizedReward, latent.fatigue);
    outcome.sessionContinues = continueStream.bernoulli(pCont);
  }
  outcome.nextState = encodeState(latent, config);
  return outcome;
}

}  // namespace fuserl::env
