#pragma once

#include "fuserl/agent/agent.hpp"

namespace fuserl::agent {

struct Critic {
  nn::Network online;
  nn::Network target;
  nn::AdamState opt;
};

/// Offline actor-critic with per-reward critic sets, bound penalty on the
/// actor, critic-consistency penalty, and a gated TD bootstrap. The
/// exploration box of each logged transition (its behaviorMeta) drives both
/// penalty terms and the gate.
class UnifiedAgent : public OfflineAgent {
 public:
  UnifiedAgent(const AgentConfig& config, const RewardConfig& rewardConfig, std::uint64_t seed);

  FusionAction act(const State& state) const override;
  TrainDiagnostics trainStep(const TransitionBatch& batch, int workers) override;
  long globalStep() const override { return globalStep_; }
  bool parametersFinite() const override;
  const nn::Network& actorNet() const override { return actor_; }
  Json toCheckpointJson() const override;

  static std::unique_ptr<UnifiedAgent> fromCheckpointJson(const Json& j);

  /// Actor objective on a batch, no updates (same arithmetic as trainStep).
  double actorLossValue(const TransitionBatch& batch) const;
  /// Exact gradient of the actor objective with respect to actor parameters.
  nn::Gradients actorLossGradient(const TransitionBatch& batch) const;
  /// TD loss of one critic on a batch, no updates.
  double criticLossValue(const TransitionBatch& batch, int set, int index) const;
  nn::Gradients criticLossGradient(const TransitionBatch& batch, int set, int index) const;

  int setCount() const { return static_cast<int>(critics_.size()); }
  int criticsPerSet() const { return config_.criticsPerSet; }
  const Vector& setWeights() const { return setWeights_; }
  const AgentConfig& config() const { return config_; }

  nn::Network& actor() { return actor_; }
  nn::Network& actorTarget() { return actorTarget_; }
  Critic& critic(int set, int index) { return critics_.at(set).at(index); }
  const Critic& critic(int set, int index) const { return critics_.at(set).at(index); }
  void syncTargetsToOnline();

 private:
  /// Target-actor actions and per-transition bootstrap gates for a batch.
  struct BootstrapContext {
    Matrix nextActions;
    Vector gate;
    double meanGate = 1.0;
  };
  BootstrapContext bootstrapContext(const TransitionBatch& batch) const;

  double criticObjective(const TransitionBatch& batch, int set, int index,
                         const BootstrapContext& ctx, nn::Gradients* gradsOut) const;
  double actorObjective(const TransitionBatch& batch, int workers, nn::Gradients* gradsOut,
                        double* meanPenaltyOut) const;

  AgentConfig config_;
  Vector setWeights_;
  std::vector<std::vector<int>> groups_;
  nn::Network actor_;
  nn::Network actorTarget_;
  nn::AdamState actorOpt_;
  std::vector<std::vector<Critic>> critics_;
  long globalStep_ = 0;
};

}  // namespace fuserl::agent
