#pragma once

#include <memory>
#include <string>
#include <vector>

#include "fuserl/agent/batch.hpp"
#include "fuserl/agent/penalties.hpp"
#include "fuserl/nn/network.hpp"
#include "fuserl/nn/optimizer.hpp"
#include "fuserl/nn/target.hpp"

namespace fuserl::agent {

enum class AgentVariant { UnifiedRL, UnifiedRLWithoutPTM, DDPG };

const char* agentVariantName(AgentVariant v);
AgentVariant agentVariantFromName(const std::string& name);

struct AgentConfig {
  AgentVariant variant = AgentVariant::UnifiedRL;
  int stateDim = 32;
  int behaviorCount = 5;
  ActionRange actionRange;
  std::vector<int> actorHidden{128, 64};
  std::vector<int> criticHidden{128, 64};
  int criticsPerSet = 4;  // m
  ActorLossConfig actorLoss;
  CriticLossConfig criticLoss;
  nn::TargetUpdateConfig targetUpdate;
  double actorLr = 1e-3;
  double criticLr = 1e-3;

  int actionDim() const { return 2 * behaviorCount; }
  void validate() const;
};

struct TrainDiagnostics {
  double actorLoss = 0.0;
  Vector criticTdLosses;
  double meanGate = 1.0;
  double meanPenalty = 0.0;
  bool finite() const;
};

class OfflineAgent {
 public:
  virtual ~OfflineAgent() = default;
  virtual FusionAction act(const State& state) const = 0;
  virtual TrainDiagnostics trainStep(const TransitionBatch& batch, int workers) = 0;
  virtual long globalStep() const = 0;
  virtual bool parametersFinite() const = 0;
  virtual const nn::Network& actorNet() const = 0;
  virtual Json toCheckpointJson() const = 0;

  /// Serialized state of the mini-batch sampling stream, kept so checkpoints
  /// round-trip the full training state.
  const std::string& trainRngState() const { return trainRngState_; }
  void setTrainRngState(std::string state) { trainRngState_ = std::move(state); }

 protected:
  std::string trainRngState_;
};

/// Deterministic greedy action of an actor network at a state.
FusionAction actorAction(const nn::Network& actor, const State& state);

}  // namespace fuserl::agent
