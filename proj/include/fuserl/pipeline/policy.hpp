#pragma once

#include <memory>
#include <string>

#include "fuserl/core/types.hpp"
#include "fuserl/nn/network.hpp"
#include "fuserl/util/jsonx.hpp"

namespace fuserl::pipeline {

/// A deterministic serving policy: state in, fusion action out.
class Policy {
 public:
  virtual ~Policy() = default;
  virtual FusionAction act(const State& state) const = 0;
  virtual int stateDim() const = 0;
  virtual int behaviorCount() const = 0;
  virtual Json descriptor() const = 0;
};

/// Fixed hand-set action for every state (the round-0 baseline).
class ConstantPolicy : public Policy {
 public:
  ConstantPolicy(FusionAction action, int stateDim);
  FusionAction act(const State&) const override { return action_; }
  int stateDim() const override { return stateDim_; }
  int behaviorCount() const override { return action_.behaviorCount(); }
  Json descriptor() const override;
  const FusionAction& action() const { return action_; }

  Json toCheckpointJson() const;
  static std::unique_ptr<ConstantPolicy> fromCheckpointJson(const Json& j);

 private:
  FusionAction action_;
  int stateDim_;
};

/// Greedy actor-network policy extracted from an agent checkpoint.
class ActorPolicy : public Policy {
 public:
  explicit ActorPolicy(nn::Network actor);
  FusionAction act(const State& state) const override;
  int stateDim() const override { return actor_.inputDim(); }
  int behaviorCount() const override { return actor_.outputDim() / 2; }
  Json descriptor() const override;

 private:
  nn::Network actor_;
};

/// Loads either a constant-policy checkpoint or a full agent checkpoint
/// (using its actor greedily).
std::unique_ptr<Policy> policyFromCheckpointJson(const Json& j);
std::unique_ptr<Policy> loadPolicyFile(const std::string& path);

}  // namespace fuserl::pipeline
