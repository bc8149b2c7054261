#include "fuserl/agent/ddpg_agent.hpp"

#include <cmath>

namespace fuserl::agent {

namespace {

Matrix concatCols(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows(), a.cols() + b.cols());
  out.leftCols(a.cols()) = a;
  out.rightCols(b.cols()) = b;
  return out;
}

}  // namespace

DdpgAgent::DdpgAgent(const AgentConfig& config, std::uint64_t seed) : config_(config) {
  config_.validate();
  std::vector<int> actorSizes{config_.stateDim};
  actorSizes.insert(actorSizes.end(), config_.actorHidden.begin(), config_.actorHidden.end());
  actorSizes.push_back(config_.actionDim());
  actor_ = nn::Network(actorSizes, nn::OutputActivation::TanhRange, config_.actionRange.min,
                       config_.actionRange.max, deriveSeed(seed, streams::kNetInit, 0));
  actorTarget_ = actor_;
  actorOpt_ = nn::AdamState::forNetwork(actor_, nn::AdamConfig{config_.actorLr});

  std::vector<int> criticSizes{config_.stateDim + config_.actionDim()};
  criticSizes.insert(criticSizes.end(), config_.criticHidden.begin(), config_.criticHidden.end());
  criticSizes.push_back(1);
  critic_ = nn::Network(criticSizes, nn::OutputActivation::Identity, 0.0, 1.0,
                        deriveSeed(seed, streams::kNetInit, 1));
  criticTarget_ = critic_;
  criticOpt_ = nn::AdamState::forNetwork(critic_, nn::AdamConfig{config_.criticLr});
}

FusionAction DdpgAgent::act(const State& state) const {
  state.validate(config_.stateDim);
  return actorAction(actor_, state);
}

TrainDiagnostics DdpgAgent::trainStep(const TransitionBatch& batch, int /*workers*/) {
  FUSERL_CHECK(batch.size() > 0, "trainStep: empty batch");
  int B = batch.size();
  TrainDiagnostics diag;
  diag.criticTdLosses.resize(1);

  // critic: plain TD on the total reward
  Matrix nextActions = actorTarget_.forward(batch.nextStates);
  Vector nextQ = criticTarget_.forward(concatCols(batch.nextStates, nextActions)).col(0);
  Vector y(B);
  double gamma = config_.criticLoss.gamma;
  for (int b = 0; b < B; ++b) {
    double r = batch.rewardTotals[b];
    y[b] = batch.terminal[b] ? r : r + gamma * nextQ[b];
  }
  nn::ForwardCache criticCache;
  Vector q = critic_.forward(concatCols(batch.states, batch.actions), &criticCache).col(0);
  Vector diff = q - y;
  diag.criticTdLosses[0] = diff.squaredNorm() / B;
  nn::Gradients criticGrads = critic_.backward(criticCache, (2.0 / B) * diff);
  nn::adamStep(critic_, criticGrads, criticOpt_);

  // actor: ascend the critic at mu(s)
  nn::ForwardCache actorCache;
  Matrix mu = actor_.forward(batch.states, &actorCache);
  nn::ForwardCache evalCache;
  Vector qMu = critic_.forward(concatCols(batch.states, mu), &evalCache).col(0);
  diag.actorLoss = -qMu.sum() / B;
  Matrix upstream = Matrix::Constant(B, 1, -1.0 / static_cast<double>(B));
  Matrix inputGrad;
  critic_.backward(evalCache, upstream, &inputGrad);
  Matrix dMu = inputGrad.rightCols(config_.actionDim());
  if (config_.actorLr > 0.0) {
    nn::Gradients actorGrads = actor_.backward(actorCache, dMu);
    nn::adamStep(actor_, actorGrads, actorOpt_);
  }

  globalStep_ += 1;
  nn::softUpdate(actorTarget_, actor_, config_.targetUpdate, globalStep_);
  nn::softUpdate(criticTarget_, critic_, config_.targetUpdate, globalStep_);

  if (!diag.finite()) {
    throw TrainingDivergedError("trainStep: non-finite loss at global step " +
                                std::to_string(globalStep_));
  }
  return diag;
}

bool DdpgAgent::parametersFinite() const {
  return actor_.allFinite() && actorTarget_.allFinite() && critic_.allFinite() &&
         criticTarget_.allFinite();
}

Json DdpgAgent::toCheckpointJson() const {
  Json j;
  j["schema_version"] = 1;
  j["kind"] = "fuserl-agent";
  j["variant"] = agentVariantName(AgentVariant::DDPG);
  j["global_step"] = globalStep_;
  j["train_rng"] = trainRngState_;
  j["state_dim"] = config_.stateDim;
  j["behavior_count"] = config_.behaviorCount;
  j["action_range"] = {{"min", config_.actionRange.min}, {"max", config_.actionRange.max}};
  j["gamma"] = config_.criticLoss.gamma;
  j["target_update"] = {{"soft_rate", config_.targetUpdate.softRate},
                        {"delay_steps", config_.targetUpdate.delaySteps}};
  j["actor_lr"] = config_.actorLr;
  j["critic_lr"] = config_.criticLr;
  j["actor_hidden"] = config_.actorHidden;
  j["critic_hidden"] = config_.criticHidden;
  j["actor"] = actor_.toJson();
  j["actor_target"] = actorTarget_.toJson();
  j["actor_opt"] = actorOpt_.toJson();
  j["critic"] = critic_.toJson();
  j["critic_target"] = criticTarget_.toJson();
  j["critic_opt"] = criticOpt_.toJson();
  return j;
}

std::unique_ptr<DdpgAgent> DdpgAgent::fromCheckpointJson(const Json& j) {
  if (j.value("kind", "") != "fuserl-agent" || j.value("variant", "") != "ddpg") {
    throw ModelMismatchError("checkpoint is not a ddpg agent checkpoint");
  }
  AgentConfig cfg;
  cfg.variant = AgentVariant::DDPG;
  cfg.stateDim = j.at("state_dim").get<int>();
  cfg.behaviorCount = j.at("behavior_count").get<int>();
  cfg.actionRange = {j.at("action_range").at("min").get<double>(),
                     j.at("action_range").at("max").get<double>()};
  cfg.actorHidden = j.at("actor_hidden").get<std::vector<int>>();
  cfg.criticHidden = j.at("critic_hidden").get<std::vector<int>>();
  cfg.criticLoss.gamma = j.at("gamma").get<double>();
  cfg.criticLoss.gateEnabled = false;
  cfg.actorLoss.eta = 0.0;
  cfg.actorLoss.lambda = 0.0;
  cfg.targetUpdate = {j.at("target_update").at("soft_rate").get<double>(),
                      j.at("target_update").at("delay_steps").get<int>()};
  cfg.actorLr = j.at("actor_lr").get<double>();
  cfg.criticLr = j.at("critic_lr").get<double>();

  auto agent = std::make_unique<DdpgAgent>(cfg, /*seed=*/0);
  agent->globalStep_ = j.at("global_step").get<long>();
  agent->trainRngState_ = j.value("train_rng", "");
  agent->actor_ = nn::Network::fromJson(j.at("actor"));
  agent->actorTarget_ = nn::Network::fromJson(j.at("actor_target"));
  agent->actorOpt_ = nn::AdamState::fromJson(j.at("actor_opt"), agent->actor_);
  agent->critic_ = nn::Network::fromJson(j.at("critic"));
  agent->criticTarget_ = nn::Network::fromJson(j.at("critic_target"));
  agent->criticOpt_ = nn::AdamState::fromJson(j.at("critic_opt"), agent->critic_);
  return agent;
}

}  // namespace fuserl::agent
