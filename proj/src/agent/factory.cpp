#include "fuserl/agent/factory.hpp"

#include "fuserl/agent/ddpg_agent.hpp"
#include "fuserl/agent/unified_agent.hpp"

namespace fuserl::agent {

std::unique_ptr<OfflineAgent> makeAgent(const AgentConfig& config, const RewardConfig& rewardConfig,
                                        std::uint64_t seed) {
  if (config.variant == AgentVariant::DDPG) {
    AgentConfig cfg = config;
    cfg.criticsPerSet = 1;
    cfg.actorLoss.eta = 0.0;
    cfg.actorLoss.lambda = 0.0;
    cfg.criticLoss.gateEnabled = false;
    cfg.criticLoss.gamma = rewardConfig.discount;
    return std::make_unique<DdpgAgent>(cfg, seed);
  }
  return std::make_unique<UnifiedAgent>(config, rewardConfig, seed);
}

std::unique_ptr<OfflineAgent> agentFromCheckpointJson(const Json& j) {
  if (j.value("kind", "") != "fuserl-agent") {
    throw ModelMismatchError("not an agent checkpoint");
  }
  if (j.value("variant", "") == "ddpg") return DdpgAgent::fromCheckpointJson(j);
  return UnifiedAgent::fromCheckpointJson(j);
}

}  // namespace fuserl::agent
