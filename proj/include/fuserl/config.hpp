#pragma once

#include <string>

#include "fuserl/agent/agent.hpp"
#include "fuserl/env/session_env.hpp"
#include "fuserl/eval/ncis.hpp"
#include "fuserl/pipeline/collect.hpp"
#include "fuserl/pipeline/train.hpp"

namespace fuserl {

/// One JSON document drives every command; unknown keys are rejected and all
/// module invariants are validated with the offending key path named.
struct ExperimentConfig {
  int schemaVersion = 1;
  std::uint64_t seed = 1;
  std::string outputDir = "runs/default";

  env::EnvConfig env;
  RewardConfig reward = RewardConfig::defaults();
  pipeline::ExplorationConfig exploration;
  agent::AgentConfig agent;
  pipeline::TrainingConfig training;

  struct Progressive {
    int rounds = 5;
    int sessionsPerRound = 1000;
    long gradientStepsPerRound = 2000;
    bool poolRounds = false;
    bool warmStart = true;  // rounds >= 2 continue from the previous checkpoint
    int evalSessions = 200;
  } progressive;

  struct Collect {
    int numSessions = 2000;
  } collect;

  struct Evaluation {
    eval::NcisConfig ncis;
    int rolloutSessions = 2000;
    int bootstrapSamples = 200;
  } evaluation;

  static ExperimentConfig fromJson(const Json& j);
  static ExperimentConfig load(const std::string& path);
  Json toJson() const;
  void validate() const;

  /// Round-0 baseline: powers 1, biases 0 (clamped into the legal range).
  FusionAction initialBaselineAction() const;
};

}  // namespace fuserl
