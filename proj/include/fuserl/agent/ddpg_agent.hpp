#pragma once

#include "fuserl/agent/agent.hpp"

namespace fuserl::agent {

/// Classical off-policy deterministic actor-critic: one critic regressing the
/// plain TD target on the total reward, actor maximizing that critic. No
/// bound penalty, no consistency term, no bootstrap gate.
class DdpgAgent : public OfflineAgent {
 public:
  DdpgAgent(const AgentConfig& config, std::uint64_t seed);

  FusionAction act(const State& state) const override;
  TrainDiagnostics trainStep(const TransitionBatch& batch, int workers) override;
  long globalStep() const override { return globalStep_; }
  bool parametersFinite() const override;
  const nn::Network& actorNet() const override { return actor_; }
  Json toCheckpointJson() const override;

  static std::unique_ptr<DdpgAgent> fromCheckpointJson(const Json& j);

  nn::Network& actor() { return actor_; }
  nn::Network& criticOnline() { return critic_; }
  nn::Network& criticTarget() { return criticTarget_; }

 private:
  AgentConfig config_;
  nn::Network actor_;
  nn::Network actorTarget_;
  nn::AdamState actorOpt_;
  nn::Network critic_;
  nn::Network criticTarget_;
  nn::AdamState criticOpt_;
  long globalStep_ = 0;
};

}  // namespace fuserl::agent
