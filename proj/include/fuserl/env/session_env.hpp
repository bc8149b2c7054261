#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "fuserl/core/types.hpp"
#include "fuserl/util/rng.hpp"

namespace fuserl::env {

/// SynthRec-v1: a small session-based recommender MDP. Watch-heavy item lists
/// build up fatigue that shortens the session, so the one-step-greedy fusion
/// action is not the best session-level action.
struct EnvConfig {
  std::uint64_t seed = 0;
  int candidatesPerRequest = 50;
  int listLength = 6;
  int maxSessionLength = 20;
  int behaviorCount = 5;
  double fatigueDecay = 0.8;
  double fatigueGain = 0.05;  // per second of watch time
  double alpha0 = 1.5;        // continuation logits
  double alpha1 = 0.6;
  double alpha2 = 1.2;
  double predictionNoiseStd = 0.1;

  static constexpr int kPreferenceDim = 8;
  int stateDim() const { return kPreferenceDim + 2 * behaviorCount + 4 + 10; }
  void validate() const;
};

struct UserLatent {
  Vector preference;    // kPreferenceDim entries
  double fatigue = 0.0;
  int stepIndex = 0;
  Vector emaFeedback;   // per behavior, decayed mean of per-item feedback
  Vector lastFeedback;  // per behavior, previous step's per-item mean
  double returnSoFar = 0.0;
  double lastStepReward = 0.0;
};

struct Candidate {
  Vector truePropensities;  // per behavior, in (0, 1)
  PredScores predScores;    // noisy simulated ranker output, in (0, 1]
};

struct StepOutcome {
  std::vector<BehaviorFeedback> feedback;  // one entry per shown item
  State nextState;
  bool sessionContinues = false;
  double stepRewardTotal = 0.0;
  Vector stepRewardComponents;
};

/// Deterministic re-encoding of the latent user into the feature vector.
State encodeState(const UserLatent& latent, const EnvConfig& config);

std::pair<State, UserLatent> resetSession(const EnvConfig& config, RngStream& userStream);

std::vector<Candidate> generateCandidates(const UserLatent& latent, const EnvConfig& config,
                                          RngStream& itemStream);

/// Samples feedback for the shown list, applies the fatigue/continuation
/// dynamics, and advances the latent user in place.
StepOutcome stepSession(UserLatent& latent, const std::vector<int>& shownItems,
                        const std::vector<Candidate>& candidates, const EnvConfig& config,
                        const RewardConfig& rewardConfig, RngStream& feedbackStream,
                        RngStream& continueStream);

double fatigueUpdate(const EnvConfig& config, double fatigue, double totalWatchSeconds);
double continuationProbability(const EnvConfig& config, double normalizedReward, double fatigue);

}  // namespace fuserl::env
