#pragma once

#include <memory>

#include "fuserl/agent/agent.hpp"

namespace fuserl::agent {

/// Builds the agent for a variant. The DDPG baseline ignores penalty and
/// ensemble settings (single critic set, q = m = 1, gate off).
std::unique_ptr<OfflineAgent> makeAgent(const AgentConfig& config, const RewardConfig& rewardConfig,
                                        std::uint64_t seed);

std::unique_ptr<OfflineAgent> agentFromCheckpointJson(const Json& j);

}  // namespace fuserl::agent
