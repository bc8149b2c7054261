#include "fuserl/pipeline/policy.hpp"

#include "fuserl/agent/agent.hpp"
#include "fuserl/util/hash.hpp"

namespace fuserl::pipeline {

ConstantPolicy::ConstantPolicy(FusionAction action, int stateDim)
    : action_(std::move(action)), stateDim_(stateDim) {
  FUSERL_CHECK(stateDim_ >= 1, "ConstantPolicy: stateDim must be >= 1");
}

Json ConstantPolicy::descriptor() const {
  Vector flat = action_.flat();
  return Json{{"kind", "constant-policy"},
              {"action", std::vector<double>(flat.data(), flat.data() + flat.size())}};
}

Json ConstantPolicy::toCheckpointJson() const {
  Json j;
  j["schema_version"] = 1;
  j["kind"] = "fuserl-constant-policy";
  j["state_dim"] = stateDim_;
  j["behavior_count"] = action_.behaviorCount();
  Vector flat = action_.flat();
  j["action"] = std::vector<double>(flat.data(), flat.data() + flat.size());
  return j;
}

std::unique_ptr<ConstantPolicy> ConstantPolicy::fromCheckpointJson(const Json& j) {
  auto flat = j.at("action").get<std::vector<double>>();
  Vector v = Eigen::Map<Vector>(flat.data(), static_cast<int>(flat.size()));
  return std::make_unique<ConstantPolicy>(FusionAction::fromFlat(v), j.at("state_dim").get<int>());
}

ActorPolicy::ActorPolicy(nn::Network actor) : actor_(std::move(actor)) {
  FUSERL_CHECK(actor_.outputDim() % 2 == 0, "ActorPolicy: actor output must have even dimension");
}

FusionAction ActorPolicy::act(const State& state) const {
  state.validate(actor_.inputDim());
  return agent::actorAction(actor_, state);
}

Json ActorPolicy::descriptor() const {
  return Json{{"kind", "actor-policy"},
              {"state_dim", actor_.inputDim()},
              {"actor_hash", contentHash(actor_.toJson().dump())}};
}

std::unique_ptr<Policy> policyFromCheckpointJson(const Json& j) {
  std::string kind = j.value("kind", "");
  if (kind == "fuserl-constant-policy") return ConstantPolicy::fromCheckpointJson(j);
  if (kind == "fuserl-agent") return std::make_unique<ActorPolicy>(nn::Network::fromJson(j.at("actor")));
  throw ModelMismatchError("file is neither a policy nor an agent checkpoint (kind=" + kind + ")");
}

std::unique_ptr<Policy> loadPolicyFile(const std::string& path) {
  return policyFromCheckpointJson(readJsonFile(path));
}

}  // namespace fuserl::pipeline
