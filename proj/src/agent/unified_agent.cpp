#include "fuserl/agent/unified_agent.hpp"

#include <cmath>

#include "fuserl/util/parallel.hpp"

namespace fuserl::agent {

namespace {

constexpr double kStdFloor = 1e-12;  // below this the consistency term gets a zero subgradient

Matrix concatCols(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows(), a.cols() + b.cols());
  out.leftCols(a.cols()) = a;
  out.rightCols(b.cols()) = b;
  return out;
}

}  // namespace

void AgentConfig::validate() const {
  FUSERL_CHECK(stateDim >= 1, "AgentConfig: stateDim must be >= 1");
  FUSERL_CHECK(behaviorCount >= 1, "AgentConfig: behaviorCount must be >= 1");
  FUSERL_CHECK(criticsPerSet >= 1, "AgentConfig: criticsPerSet must be >= 1");
  FUSERL_CHECK(actorLr >= 0.0, "AgentConfig: actorLr must be >= 0");
  FUSERL_CHECK(criticLr >= 0.0, "AgentConfig: criticLr must be >= 0");
  actionRange.validate();
  actorLoss.validate();
  criticLoss.validate();
  targetUpdate.validate();
}

bool TrainDiagnostics::finite() const {
  return std::isfinite(actorLoss) && std::isfinite(meanGate) && std::isfinite(meanPenalty) &&
         criticTdLosses.allFinite();
}

const char* agentVariantName(AgentVariant v) {
  switch (v) {
    case AgentVariant::UnifiedRL: return "unifiedrl";
    case AgentVariant::UnifiedRLWithoutPTM: return "unifiedrl-without-ptm";
    case AgentVariant::DDPG: return "ddpg";
  }
  return "unknown";
}

AgentVariant agentVariantFromName(const std::string& name) {
  if (name == "unifiedrl") return AgentVariant::UnifiedRL;
  if (name == "unifiedrl-without-ptm") return AgentVariant::UnifiedRLWithoutPTM;
  if (name == "ddpg") return AgentVariant::DDPG;
  throw ContractError("unknown agent variant: " + name);
}

FusionAction actorAction(const nn::Network& actor, const State& state) {
  return FusionAction::fromFlat(actor.forward1(state.features));
}

UnifiedAgent::UnifiedAgent(const AgentConfig& config, const RewardConfig& rewardConfig,
                           std::uint64_t seed)
    : config_(config) {
  config_.validate();
  rewardConfig.validate();
  FUSERL_CHECK(rewardConfig.behaviorCount() == config_.behaviorCount,
               "UnifiedAgent: reward config behavior count mismatch");
  groups_ = rewardConfig.groups;
  setWeights_ = rewardConfig.setWeights();
  config_.criticLoss.gamma = rewardConfig.discount;

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
  int q = static_cast<int>(groups_.size());
  critics_.resize(q);
  for (int i = 0; i < q; ++i) {
    critics_[i].reserve(config_.criticsPerSet);
    for (int j = 0; j < config_.criticsPerSet; ++j) {
      std::uint64_t netIndex = 1 + static_cast<std::uint64_t>(i) * config_.criticsPerSet + j;
      Critic c;
      c.online = nn::Network(criticSizes, nn::OutputActivation::Identity, 0.0, 1.0,
                             deriveSeed(seed, streams::kNetInit, netIndex));
      c.target = c.online;
      c.opt = nn::AdamState::forNetwork(c.online, nn::AdamConfig{config_.criticLr});
      critics_[i].push_back(std::move(c));
    }
  }
}

FusionAction UnifiedAgent::act(const State& state) const {
  state.validate(config_.stateDim);
  return actorAction(actor_, state);
}

void UnifiedAgent::syncTargetsToOnline() {
  actorTarget_ = actor_;
  for (auto& set : critics_) {
    for (auto& c : set) c.target = c.online;
  }
}

UnifiedAgent::BootstrapContext UnifiedAgent::bootstrapContext(const TransitionBatch& batch) const {
  BootstrapContext ctx;
  ctx.nextActions = actorTarget_.forward(batch.nextStates);
  ctx.gate = Vector::Ones(batch.size());
  long nonTerminal = 0;
  double gateSum = 0.0;
  for (int b = 0; b < batch.size(); ++b) {
    if (batch.terminal[b]) continue;
    if (config_.criticLoss.gateEnabled) {
      FusionAction nextAction = FusionAction::fromFlat(ctx.nextActions.row(b).transpose());
      ctx.gate[b] = bootstrapGate(nextAction, batch.meta[b]->bounds, config_.criticLoss);
    }
    gateSum += ctx.gate[b];
    nonTerminal += 1;
  }
  ctx.meanGate = nonTerminal > 0 ? gateSum / nonTerminal : 1.0;
  return ctx;
}

double UnifiedAgent::criticObjective(const TransitionBatch& batch, int set, int index,
                                     const BootstrapContext& ctx, nn::Gradients* gradsOut) const {
  FUSERL_CHECK(batch.size() > 0, "criticLoss: empty batch");
  int B = batch.size();
  const Critic& c = critics_.at(set).at(index);
  Vector nextQ = c.target.forward(concatCols(batch.nextStates, ctx.nextActions)).col(0);
  Vector y(B);
  for (int b = 0; b < B; ++b) {
    double r = batch.rewardComponents(b, set);
    y[b] = batch.terminal[b] ? r : r + config_.criticLoss.gamma * ctx.gate[b] * nextQ[b];
  }
  nn::ForwardCache cache;
  Vector q = c.online.forward(concatCols(batch.states, batch.actions),
                              gradsOut ? &cache : nullptr).col(0);
  Vector diff = q - y;
  double loss = diff.squaredNorm() / B;
  if (gradsOut) {
    Matrix upstream = (2.0 / B) * diff;
    *gradsOut = c.online.backward(cache, upstream);
  }
  return loss;
}

double UnifiedAgent::actorObjective(const TransitionBatch& batch, int workers,
                                    nn::Gradients* gradsOut, double* meanPenaltyOut) const {
  FUSERL_CHECK(batch.size() > 0, "actorLoss: empty batch");
  int B = batch.size();
  int q = setCount();
  int m = config_.criticsPerSet;
  int A = config_.actionDim();

  nn::ForwardCache actorCache;
  Matrix mu = actor_.forward(batch.states, gradsOut ? &actorCache : nullptr);
  Matrix criticIn = concatCols(batch.states, mu);

  std::vector<std::vector<nn::ForwardCache>> caches(q);
  std::vector<Matrix> setQ(q);
  for (int i = 0; i < q; ++i) {
    caches[i].resize(m);
    setQ[i].resize(B, m);
  }
  parallelFor(static_cast<std::size_t>(q) * m, workers, [&](std::size_t idx) {
    int i = static_cast<int>(idx) / m;
    int j = static_cast<int>(idx) % m;
    setQ[i].col(j) =
        critics_[i][j].online.forward(criticIn, gradsOut ? &caches[i][j] : nullptr).col(0);
  });

  double loss = 0.0;
  std::vector<Matrix> upstreams(q);
  for (int i = 0; i < q; ++i) {
    Vector mean = setQ[i].rowwise().mean();
    loss += -setWeights_[i] * mean.sum() / B;
    if (gradsOut) {
      upstreams[i] = Matrix::Constant(B, m, -setWeights_[i] / (m * static_cast<double>(B)));
    }
    if (config_.actorLoss.lambda > 0.0 && m > 1) {
      Matrix centered = setQ[i].colwise() - mean;
      Vector stddev = (centered.array().square().rowwise().sum() / m).sqrt();
      loss += config_.actorLoss.lambda * setWeights_[i] * stddev.sum() / B;
      if (gradsOut) {
        double coef = config_.actorLoss.lambda * setWeights_[i] / (m * static_cast<double>(B));
        for (int b = 0; b < B; ++b) {
          if (stddev[b] <= kStdFloor) continue;
          upstreams[i].row(b).array() += coef * centered.row(b).array() / stddev[b];
        }
      }
    }
  }

  Matrix dMu;
  if (gradsOut) {
    dMu = Matrix::Zero(B, A);
    std::vector<std::vector<Matrix>> inputGrads(q, std::vector<Matrix>(m));
    parallelFor(static_cast<std::size_t>(q) * m, workers, [&](std::size_t idx) {
      int i = static_cast<int>(idx) / m;
      int j = static_cast<int>(idx) % m;
      Matrix inputGrad;
      critics_[i][j].online.backward(caches[i][j], upstreams[i].col(j), &inputGrad);
      inputGrads[i][j] = inputGrad.rightCols(A);
    });
    for (int i = 0; i < q; ++i) {
      for (int j = 0; j < m; ++j) dMu += inputGrads[i][j];
    }
  }

  double meanPenalty = 0.0;
  if (config_.actorLoss.eta > 0.0) {
    double totalPenalty = 0.0;
    for (int b = 0; b < B; ++b) {
      FusionAction a = FusionAction::fromFlat(mu.row(b).transpose());
      totalPenalty += boundPenalty(a, batch.meta[b]->bounds, config_.actorLoss);
      if (gradsOut) {
        dMu.row(b) += (config_.actorLoss.eta / B) *
                      boundPenaltyGrad(a, batch.meta[b]->bounds, config_.actorLoss).transpose();
      }
    }
    meanPenalty = totalPenalty / B;
    loss += config_.actorLoss.eta * totalPenalty / B;
  }
  if (meanPenaltyOut) *meanPenaltyOut = meanPenalty;
  if (gradsOut) *gradsOut = actor_.backward(actorCache, dMu);
  return loss;
}

double UnifiedAgent::actorLossValue(const TransitionBatch& batch) const {
  return actorObjective(batch, 1, nullptr, nullptr);
}

nn::Gradients UnifiedAgent::actorLossGradient(const TransitionBatch& batch) const {
  nn::Gradients grads;
  actorObjective(batch, 1, &grads, nullptr);
  return grads;
}

double UnifiedAgent::criticLossValue(const TransitionBatch& batch, int set, int index) const {
  return criticObjective(batch, set, index, bootstrapContext(batch), nullptr);
}

nn::Gradients UnifiedAgent::criticLossGradient(const TransitionBatch& batch, int set,
                                               int index) const {
  nn::Gradients grads;
  criticObjective(batch, set, index, bootstrapContext(batch), &grads);
  return grads;
}

TrainDiagnostics UnifiedAgent::trainStep(const TransitionBatch& batch, int workers) {
  FUSERL_CHECK(batch.size() > 0, "trainStep: empty batch");
  int q = setCount();
  int m = config_.criticsPerSet;

  TrainDiagnostics diag;
  diag.criticTdLosses.resize(q * m);

  // critic phase: every critic regresses its own gated TD target
  BootstrapContext ctx = bootstrapContext(batch);
  diag.meanGate = ctx.meanGate;
  parallelFor(static_cast<std::size_t>(q) * m, workers, [&](std::size_t idx) {
    int i = static_cast<int>(idx) / m;
    int j = static_cast<int>(idx) % m;
    nn::Gradients grads;
    diag.criticTdLosses[idx] = criticObjective(batch, i, j, ctx, &grads);
    nn::adamStep(critics_[i][j].online, grads, critics_[i][j].opt);
  });

  // actor phase: critics are frozen evaluators of the fresh actor output
  nn::Gradients actorGrads;
  diag.actorLoss = actorObjective(batch, workers, &actorGrads, &diag.meanPenalty);
  if (config_.actorLr > 0.0) {
    nn::adamStep(actor_, actorGrads, actorOpt_);
  }

  // delayed soft target updates
  globalStep_ += 1;
  nn::softUpdate(actorTarget_, actor_, config_.targetUpdate, globalStep_);
  for (auto& set : critics_) {
    for (auto& c : set) nn::softUpdate(c.target, c.online, config_.targetUpdate, globalStep_);
  }

  if (!diag.finite()) {
    throw TrainingDivergedError("trainStep: non-finite loss at global step " +
                                std::to_string(globalStep_));
  }
  return diag;
}

bool UnifiedAgent::parametersFinite() const {
  if (!actor_.allFinite() || !actorTarget_.allFinite()) return false;
  for (const auto& set : critics_) {
    for (const auto& c : set) {
      if (!c.online.allFinite() || !c.target.allFinite()) return false;
    }
  }
  return true;
}

Json UnifiedAgent::toCheckpointJson() const {
  Json j;
  j["schema_version"] = 1;
  j["kind"] = "fuserl-agent";
  j["variant"] = agentVariantName(config_.variant);
  j["global_step"] = globalStep_;
  j["train_rng"] = trainRngState_;
  j["state_dim"] = config_.stateDim;
  j["behavior_count"] = config_.behaviorCount;
  j["action_range"] = {{"min", config_.actionRange.min}, {"max", config_.actionRange.max}};
  j["groups"] = groups_;
  j["set_weights"] = std::vector<double>(setWeights_.data(), setWeights_.data() + setWeights_.size());
  j["actor_loss"] = {{"eta", config_.actorLoss.eta},
                     {"lambda", config_.actorLoss.lambda},
                     {"omega", config_.actorLoss.omega},
                     {"beta", config_.actorLoss.beta}};
  j["critic_loss"] = {{"varpi", config_.criticLoss.varpi},
                      {"zeta", config_.criticLoss.zeta},
                      {"gamma", config_.criticLoss.gamma},
                      {"gate_enabled", config_.criticLoss.gateEnabled}};
  j["target_update"] = {{"soft_rate", config_.targetUpdate.softRate},
                        {"delay_steps", config_.targetUpdate.delaySteps}};
  j["actor_lr"] = config_.actorLr;
  j["critic_lr"] = config_.criticLr;
  j["actor_hidden"] = config_.actorHidden;
  j["critic_hidden"] = config_.criticHidden;
  j["critics_per_set"] = config_.criticsPerSet;
  j["actor"] = actor_.toJson();
  j["actor_target"] = actorTarget_.toJson();
  j["actor_opt"] = actorOpt_.toJson();
  Json critics = Json::array();
  for (int i = 0; i < setCount(); ++i) {
    for (int jdx = 0; jdx < config_.criticsPerSet; ++jdx) {
      const Critic& c = critics_[i][jdx];
      critics.push_back(Json{{"set", i},
                             {"index", jdx},
                             {"online", c.online.toJson()},
                             {"target", c.target.toJson()},
                             {"opt", c.opt.toJson()}});
    }
  }
  j["critics"] = std::move(critics);
  return j;
}

std::unique_ptr<UnifiedAgent> UnifiedAgent::fromCheckpointJson(const Json& j) {
  if (j.value("kind", "") != "fuserl-agent") {
    throw ModelMismatchError("checkpoint is not an agent checkpoint");
  }
  AgentConfig cfg;
  cfg.variant = agentVariantFromName(j.at("variant").get<std::string>());
  cfg.stateDim = j.at("state_dim").get<int>();
  cfg.behaviorCount = j.at("behavior_count").get<int>();
  cfg.actionRange = {j.at("action_range").at("min").get<double>(),
                     j.at("action_range").at("max").get<double>()};
  cfg.actorHidden = j.at("actor_hidden").get<std::vector<int>>();
  cfg.criticHidden = j.at("critic_hidden").get<std::vector<int>>();
  cfg.criticsPerSet = j.at("critics_per_set").get<int>();
  cfg.actorLoss = {j.at("actor_loss").at("eta").get<double>(),
                   j.at("actor_loss").at("lambda").get<double>(),
                   j.at("actor_loss").at("omega").get<double>(),
                   j.at("actor_loss").at("beta").get<double>()};
  cfg.criticLoss = {j.at("critic_loss").at("varpi").get<double>(),
                    j.at("critic_loss").at("zeta").get<double>(),
                    j.at("critic_loss").at("gamma").get<double>(),
                    j.at("critic_loss").at("gate_enabled").get<bool>()};
  cfg.targetUpdate = {j.at("target_update").at("soft_rate").get<double>(),
                      j.at("target_update").at("delay_steps").get<int>()};
  cfg.actorLr = j.at("actor_lr").get<double>();
  cfg.criticLr = j.at("critic_lr").get<double>();

  RewardConfig reward;
  reward.groups = j.at("groups").get<std::vector<std::vector<int>>>();
  reward.discount = cfg.criticLoss.gamma;
  reward.weights = Vector::Ones(cfg.behaviorCount);
  auto setWeights = j.at("set_weights").get<std::vector<double>>();

  auto agent = std::make_unique<UnifiedAgent>(cfg, reward, /*seed=*/0);
  agent->setWeights_ = Eigen::Map<Vector>(setWeights.data(), static_cast<int>(setWeights.size()));
  agent->globalStep_ = j.at("global_step").get<long>();
  agent->trainRngState_ = j.value("train_rng", "");
  agent->actor_ = nn::Network::fromJson(j.at("actor"));
  agent->actorTarget_ = nn::Network::fromJson(j.at("actor_target"));
  agent->actorOpt_ = nn::AdamState::fromJson(j.at("actor_opt"), agent->actor_);
  for (const Json& cj : j.at("critics")) {
    int i = cj.at("set").get<int>();
    int jdx = cj.at("index").get<int>();
    Critic& c = agent->critics_.at(i).at(jdx);
    c.online = nn::Network::fromJson(cj.at("online"));
    c.target = nn::Network::fromJson(cj.at("target"));
    c.opt = nn::AdamState::fromJson(cj.at("opt"), c.online);
  }
  return agent;
}

}  // namespace fuserl::agent
