#include "fuserl/config.hpp"

#include <algorithm>

namespace fuserl {

namespace {

void configCheck(bool cond, const std::string& keyPath, const std::string& message) {
  if (!cond) throw ConfigError(keyPath, message);
}

}  // namespace

ExperimentConfig ExperimentConfig::fromJson(const Json& j) {
  ExperimentConfig cfg;
  JsonReader root(j, "");
  cfg.schemaVersion = static_cast<int>(root.integer("schema_version", 1));
  configCheck(cfg.schemaVersion == 1, "schema_version", "unsupported schema version");
  cfg.seed = root.unsignedInteger("seed", cfg.seed);
  cfg.outputDir = root.text("output_dir", cfg.outputDir);

  {
    JsonReader r = root.object("env");
    cfg.env.seed = r.unsignedInteger("seed", 0);
    if (cfg.env.seed == 0) cfg.env.seed = cfg.seed;
    cfg.env.candidatesPerRequest =
        static_cast<int>(r.integer("candidates_per_request", cfg.env.candidatesPerRequest));
    cfg.env.listLength = static_cast<int>(r.integer("list_length", cfg.env.listLength));
    cfg.env.maxSessionLength =
        static_cast<int>(r.integer("max_session_length", cfg.env.maxSessionLength));
    cfg.env.behaviorCount = static_cast<int>(r.integer("behavior_count", cfg.env.behaviorCount));
    cfg.env.fatigueDecay = r.number("fatigue_decay", cfg.env.fatigueDecay);
    cfg.env.fatigueGain = r.number("fatigue_gain", cfg.env.fatigueGain);
    cfg.env.alpha0 = r.number("alpha0", cfg.env.alpha0);
    cfg.env.alpha1 = r.number("alpha1", cfg.env.alpha1);
    cfg.env.alpha2 = r.number("alpha2", cfg.env.alpha2);
    cfg.env.predictionNoiseStd = r.number("prediction_noise_std", cfg.env.predictionNoiseStd);
    r.finish();
  }
  {
    JsonReader r = root.object("reward");
    std::vector<double> defaultWeights(cfg.reward.weights.data(),
                                       cfg.reward.weights.data() + cfg.reward.weights.size());
    std::vector<double> w = r.numberArray("weights", defaultWeights);
    cfg.reward.weights = Eigen::Map<Vector>(w.data(), static_cast<int>(w.size()));
    cfg.reward.groups = r.intArray2("groups", cfg.reward.groups);
    cfg.reward.discount = r.number("discount", cfg.reward.discount);
    r.finish();
  }
  {
    JsonReader r = root.object("exploration");
    cfg.exploration.variant = explorationVariantFromName(r.text("variant", "bounded"));
    cfg.exploration.lower = r.number("bl", cfg.exploration.lower);
    cfg.exploration.upper = r.number("bu", cfg.exploration.upper);
    cfg.exploration.gauss.mean = r.number("gauss_mean", cfg.exploration.gauss.mean);
    cfg.exploration.gauss.stddev = r.number("gauss_std", cfg.exploration.gauss.stddev);
    r.finish();
  }
  {
    JsonReader r = root.object("agent");
    cfg.agent.variant = agent::agentVariantFromName(r.text("variant", "unifiedrl"));
    cfg.agent.actorHidden = r.intArray("actor_hidden", cfg.agent.actorHidden);
    cfg.agent.criticHidden = r.intArray("critic_hidden", cfg.agent.criticHidden);
    cfg.agent.criticsPerSet = static_cast<int>(r.integer("critics_per_set", cfg.agent.criticsPerSet));
    {
      JsonReader a = r.object("actor_loss");
      cfg.agent.actorLoss.eta = a.number("eta", cfg.agent.actorLoss.eta);
      cfg.agent.actorLoss.lambda = a.number("lambda", cfg.agent.actorLoss.lambda);
      cfg.agent.actorLoss.omega = a.number("omega", cfg.agent.actorLoss.omega);
      cfg.agent.actorLoss.beta = a.number("beta", cfg.agent.actorLoss.beta);
      a.finish();
    }
    {
      JsonReader c = r.object("critic_loss");
      cfg.agent.criticLoss.varpi = c.number("varpi", cfg.agent.criticLoss.varpi);
      cfg.agent.criticLoss.zeta = c.number("zeta", cfg.agent.criticLoss.zeta);
      c.finish();
    }
    {
      JsonReader t = r.object("target_update");
      cfg.agent.targetUpdate.softRate = t.number("soft_rate", cfg.agent.targetUpdate.softRate);
      cfg.agent.targetUpdate.delaySteps =
          static_cast<int>(t.integer("delay_steps", cfg.agent.targetUpdate.delaySteps));
      t.finish();
    }
    cfg.agent.actorLr = r.number("actor_lr", cfg.agent.actorLr);
    cfg.agent.criticLr = r.number("critic_lr", cfg.agent.criticLr);
    cfg.agent.actionRange.min = r.number("action_min", cfg.agent.actionRange.min);
    cfg.agent.actionRange.max = r.number("action_max", cfg.agent.actionRange.max);
    r.finish();
  }
  {
    JsonReader r = root.object("training");
    cfg.training.batchSize = static_cast<int>(r.integer("batch_size", cfg.training.batchSize));
    cfg.training.gradientSteps = r.integer("gradient_steps", cfg.training.gradientSteps);
    cfg.training.logInterval = static_cast<int>(r.integer("log_interval", cfg.training.logInterval));
    r.finish();
  }
  {
    JsonReader r = root.object("progressive");
    cfg.progressive.rounds = static_cast<int>(r.integer("rounds", cfg.progressive.rounds));
    cfg.progressive.sessionsPerRound =
        static_cast<int>(r.integer("sessions_per_round", cfg.progressive.sessionsPerRound));
    cfg.progressive.gradientStepsPerRound =
        r.integer("gradient_steps_per_round", cfg.progressive.gradientStepsPerRound);
    cfg.progressive.poolRounds = r.boolean("pool_rounds", cfg.progressive.poolRounds);
    cfg.progressive.warmStart = r.boolean("warm_start", cfg.progressive.warmStart);
    cfg.progressive.evalSessions =
        static_cast<int>(r.integer("eval_sessions", cfg.progressive.evalSessions));
    r.finish();
  }
  {
    JsonReader r = root.object("collect");
    cfg.collect.numSessions = static_cast<int>(r.integer("num_sessions", cfg.collect.numSessions));
    r.finish();
  }
  {
    JsonReader r = root.object("evaluation");
    cfg.evaluation.ncis.cap = r.number("ncis_cap", cfg.evaluation.ncis.cap);
    cfg.evaluation.ncis.smoothingWidth = r.number("ncis_delta", cfg.evaluation.ncis.smoothingWidth);
    cfg.evaluation.rolloutSessions =
        static_cast<int>(r.integer("rollout_sessions", cfg.evaluation.rolloutSessions));
    cfg.evaluation.bootstrapSamples =
        static_cast<int>(r.integer("bootstrap_samples", cfg.evaluation.bootstrapSamples));
    r.finish();
  }
  root.finish();

  cfg.agent.stateDim = cfg.env.stateDim();
  cfg.agent.behaviorCount = cfg.env.behaviorCount;
  cfg.agent.criticLoss.gamma = cfg.reward.discount;
  cfg.validate();
  return cfg;
}

ExperimentConfig ExperimentConfig::load(const std::string& path) {
  return fromJson(readJsonFile(path));
}

void ExperimentConfig::validate() const {
  configCheck(env.candidatesPerRequest >= 1, "env.candidates_per_request", "must be >= 1");
  configCheck(env.listLength >= 1 && env.listLength <= env.candidatesPerRequest, "env.list_length",
              "must be in [1, candidates_per_request]");
  configCheck(env.maxSessionLength >= 1, "env.max_session_length", "must be >= 1");
  configCheck(env.behaviorCount == 5, "env.behavior_count",
              "the synthetic user model supports exactly 5 behavior types");
  configCheck(env.fatigueDecay >= 0.0 && env.fatigueDecay < 1.0, "env.fatigue_decay",
              "must be in [0, 1)");
  configCheck(env.fatigueGain >= 0.0, "env.fatigue_gain", "must be >= 0");
  configCheck(env.predictionNoiseStd >= 0.0, "env.prediction_noise_std", "must be >= 0");

  configCheck(reward.behaviorCount() == env.behaviorCount, "reward.weights",
              "must have one weight per behavior");
  for (int i = 0; i < reward.behaviorCount(); ++i) {
    configCheck(reward.weights[i] >= 0.0, "reward.weights", "must be nonnegative");
  }
  configCheck(reward.discount >= 0.0 && reward.discount <= 1.0, "reward.discount",
              "must be in [0, 1]");
  {
    std::vector<int> counts(reward.behaviorCount(), 0);
    configCheck(!reward.groups.empty(), "reward.groups", "must be a nonempty partition");
    for (const auto& g : reward.groups) {
      configCheck(!g.empty(), "reward.groups", "groups must be nonempty");
      for (int b : g) {
        configCheck(b >= 0 && b < reward.behaviorCount(), "reward.groups",
                    "behavior index out of range");
        counts[b] += 1;
      }
    }
    for (int c : counts) {
      configCheck(c == 1, "reward.groups", "must cover every behavior exactly once");
    }
  }

  if (exploration.variant == ExplorationVariant::Bounded) {
    configCheck(exploration.lower < exploration.upper, "exploration.bl",
                "lower bound must be strictly below upper bound");
    configCheck(exploration.lower <= 0.0 && exploration.upper >= 0.0, "exploration.bl",
                "box must contain the baseline action for every state");
  } else {
    configCheck(exploration.gauss.stddev > 0.0, "exploration.gauss_std", "must be > 0");
  }

  configCheck(agent.actionRange.min < agent.actionRange.max, "agent.action_min",
              "must be strictly below agent.action_max");
  configCheck(agent.criticsPerSet >= 1, "agent.critics_per_set", "must be >= 1");
  for (int h : agent.actorHidden) configCheck(h >= 1, "agent.actor_hidden", "sizes must be >= 1");
  for (int h : agent.criticHidden) configCheck(h >= 1, "agent.critic_hidden", "sizes must be >= 1");
  configCheck(agent.actorLoss.eta >= 0.0, "agent.actor_loss.eta", "must be >= 0");
  configCheck(agent.actorLoss.lambda >= 0.0, "agent.actor_loss.lambda", "must be >= 0");
  configCheck(agent.actorLoss.omega >= 0.0, "agent.actor_loss.omega", "must be >= 0");
  configCheck(agent.actorLoss.beta > 0.0, "agent.actor_loss.beta", "must be > 0");
  configCheck(agent.criticLoss.varpi >= 0.0, "agent.critic_loss.varpi", "must be >= 0");
  configCheck(agent.targetUpdate.softRate > 0.0 && agent.targetUpdate.softRate <= 1.0,
              "agent.target_update.soft_rate", "must be in (0, 1]");
  configCheck(agent.targetUpdate.delaySteps >= 1, "agent.target_update.delay_steps",
              "must be >= 1");
  configCheck(agent.actorLr >= 0.0, "agent.actor_lr", "must be >= 0");
  configCheck(agent.criticLr >= 0.0, "agent.critic_lr", "must be >= 0");

  configCheck(training.batchSize >= 1, "training.batch_size", "must be >= 1");
  configCheck(training.gradientSteps >= 0, "training.gradient_steps", "must be >= 0");
  configCheck(training.logInterval >= 1, "training.log_interval", "must be >= 1");

  configCheck(progressive.rounds >= 1, "progressive.rounds", "must be >= 1");
  configCheck(progressive.sessionsPerRound >= 1, "progressive.sessions_per_round", "must be >= 1");
  configCheck(progressive.gradientStepsPerRound >= 0, "progressive.gradient_steps_per_round",
              "must be >= 0");
  configCheck(progressive.evalSessions >= 100, "progressive.eval_sessions",
              "rollout evaluation needs at least 100 sessions");

  configCheck(collect.numSessions >= 1, "collect.num_sessions", "must be >= 1");

  configCheck(evaluation.ncis.cap > 0.0, "evaluation.ncis_cap", "must be > 0");
  configCheck(evaluation.ncis.smoothingWidth > 0.0, "evaluation.ncis_delta", "must be > 0");
  configCheck(evaluation.rolloutSessions >= 100, "evaluation.rollout_sessions",
              "rollout evaluation needs at least 100 sessions");
  configCheck(evaluation.bootstrapSamples >= 1, "evaluation.bootstrap_samples", "must be >= 1");
}

Json ExperimentConfig::toJson() const {
  Json j;
  j["schema_version"] = schemaVersion;
  j["seed"] = seed;
  j["output_dir"] = outputDir;
  j["env"] = {{"seed", env.seed},
              {"candidates_per_request", env.candidatesPerRequest},
              {"list_length", env.listLength},
              {"max_session_length", env.maxSessionLength},
              {"behavior_count", env.behaviorCount},
              {"fatigue_decay", env.fatigueDecay},
              {"fatigue_gain", env.fatigueGain},
              {"alpha0", env.alpha0},
              {"alpha1", env.alpha1},
              {"alpha2", env.alpha2},
              {"prediction_noise_std", env.predictionNoiseStd}};
  j["reward"] = {{"weights", std::vector<double>(reward.weights.data(),
                                                 reward.weights.data() + reward.weights.size())},
                 {"groups", reward.groups},
                 {"discount", reward.discount}};
  j["exploration"] = {{"variant", explorationVariantName(exploration.variant)},
                      {"bl", exploration.lower},
                      {"bu", exploration.upper},
                      {"gauss_mean", exploration.gauss.mean},
                      {"gauss_std", exploration.gauss.stddev}};
  j["agent"] = {{"variant", agent::agentVariantName(agent.variant)},
                {"actor_hidden", agent.actorHidden},
                {"critic_hidden", agent.criticHidden},
                {"critics_per_set", agent.criticsPerSet},
                {"actor_loss",
                 {{"eta", agent.actorLoss.eta},
                  {"lambda", agent.actorLoss.lambda},
                  {"omega", agent.actorLoss.omega},
                  {"beta", agent.actorLoss.beta}}},
                {"critic_loss", {{"varpi", agent.criticLoss.varpi}, {"zeta", agent.criticLoss.zeta}}},
                {"target_update",
                 {{"soft_rate", agent.targetUpdate.softRate},
                  {"delay_steps", agent.targetUpdate.delaySteps}}},
                {"actor_lr", agent.actorLr},
                {"critic_lr", agent.criticLr},
                {"action_min", agent.actionRange.min},
                {"action_max", agent.actionRange.max}};
  j["training"] = {{"batch_size", training.batchSize},
                   {"gradient_steps", training.gradientSteps},
                   {"log_interval", training.logInterval}};
  j["progressive"] = {{"rounds", progressive.rounds},
                      {"sessions_per_round", progressive.sessionsPerRound},
                      {"gradient_steps_per_round", progressive.gradientStepsPerRound},
                      {"pool_rounds", progressive.poolRounds},
                      {"warm_start", progressive.warmStart},
                      {"eval_sessions", progressive.evalSessions}};
  j["collect"] = {{"num_sessions", collect.numSessions}};
  j["evaluation"] = {{"ncis_cap", evaluation.ncis.cap},
                     {"ncis_delta", evaluation.ncis.smoothingWidth},
                     {"rollout_sessions", evaluation.rolloutSessions},
                     {"bootstrap_samples", evaluation.bootstrapSamples}};
  return j;
}

FusionAction ExperimentConfig::initialBaselineAction() const {
  FusionAction a = FusionAction::constant(env.behaviorCount, agent.actionRange.clamp(1.0),
                                          agent.actionRange.clamp(0.0));
  return a;
}

}  // namespace fuserl
