#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "fuserl/util/errors.hpp"

namespace fuserl {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Global legal range for every action dimension.
struct ActionRange {
  double min = -1.0;
  double max = 1.0;
  double center() const { return 0.5 * (min + max); }
  double half() const { return 0.5 * (max - min); }
  double clamp(double x) const { return x < min ? min : (x > max ? max : x); }
  void validate() const { FUSERL_CHECK(min < max, "ActionRange: min must be < max"); }
};

/// Fixed-length user/session feature vector fed to actor and critics.
struct State {
  Vector features;
  int dim() const { return static_cast<int>(features.size()); }
  void validate(int expectedDim) const;
};

/// The ranking-weight vector the policy emits: one power and one bias per
/// behavior type (2k dimensions total).
struct FusionAction {
  Vector powers;
  Vector biases;

  int behaviorCount() const { return static_cast<int>(powers.size()); }
  int dim() const { return 2 * behaviorCount(); }

  /// Flat layout: [powers..., biases...].
  Vector flat() const;
  static FusionAction fromFlat(const Vector& flat);
  static FusionAction constant(int behaviorCount, double power, double bias);

  void validate(const ActionRange& range) const;
};

/// Per-candidate predicted behavior scores, each in (0, 1].
struct PredScores {
  Vector values;
  int behaviorCount() const { return static_cast<int>(values.size()); }
  void validate() const;
};

/// Observed per-item user feedback, one entry per behavior type
/// (watch seconds, then 0/1 indicators).
struct BehaviorFeedback {
  Vector values;
  int behaviorCount() const { return static_cast<int>(values.size()); }
};

/// Behavior weights, the grouping of behaviors into critic sets, and the
/// session discount factor.
struct RewardConfig {
  Vector weights;
  std::vector<std::vector<int>> groups;
  double discount = 0.9;

  int behaviorCount() const { return static_cast<int>(weights.size()); }
  int groupCount() const { return static_cast<int>(groups.size()); }
  void validate() const;

  /// Group recombination weights: per-group behavior-weight mass, normalized
  /// to sum to one.
  Vector setWeights() const;

  /// k=5 behaviors (watch seconds, valid consumption, like, share, finish),
  /// grouped as {watch} and {interactions}.
  static RewardConfig defaults();
  static RewardConfig singleGroup(Vector weights, double discount);
};

enum class ExplorationVariant { Bounded, Gaussian };

const char* explorationVariantName(ExplorationVariant v);
ExplorationVariant explorationVariantFromName(const std::string& name);

/// Per-state exploration box: baseline action plus lower/upper offsets.
struct ExplorationBounds {
  FusionAction baselineAction;
  double lower = -0.15;
  double upper = 0.15;

  double width() const { return upper - lower; }
  void validate() const {
    FUSERL_CHECK(lower <= upper, "ExplorationBounds: lower offset must be <= upper offset");
  }
};

struct GaussianExplorationConfig {
  double mean = 0.0;
  double stddev = 0.2;
  void validate() const { FUSERL_CHECK(stddev > 0, "GaussianExplorationConfig: stddev must be > 0"); }
};

/// Snapshot of the behavior policy that produced a logged transition.
struct BehaviorMeta {
  ExplorationVariant variant = ExplorationVariant::Bounded;
  ExplorationBounds bounds;
  double gaussStd = 0.0;
};

struct Transition {
  State state;
  FusionAction action;
  Vector rewardComponents;
  double rewardTotal = 0.0;
  State nextState;
  bool terminal = false;
  BehaviorMeta behaviorMeta;

  void validate(int stateDim, int groupCount) const;
};

struct SessionTrajectory {
  std::vector<Transition> transitions;
  std::int64_t sessionId = 0;
  std::int64_t userId = 0;
  int roundId = 0;

  int length() const { return static_cast<int>(transitions.size()); }
  void validate(int maxSessionLength) const;
};

}  // namespace fuserl
