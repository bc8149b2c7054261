#include "fuserl/pipeline/progressive.hpp"

#include "fuserl/eval/rollout.hpp"
#include "fuserl/util/hash.hpp"
#include "fuserl/util/log.hpp"

namespace fuserl::pipeline {

namespace fs = std::filesystem;

Json CheckpointLineage::toJson() const {
  Json rows = Json::array();
  for (const auto& e : rounds) {
    rows.push_back(Json{{"round", e.round},
                        {"dataset", e.datasetPath},
                        {"datasetHash", e.datasetHash},
                        {"checkpoint", e.checkpointPath},
                        {"checkpointHash", e.checkpointHash},
                        {"eval", Json{{"meanReturn", e.evalMeanReturn},
                                      {"sessions", e.evalSessions}}}});
  }
  return Json{{"schema_version", 1},
              {"kind", "fuserl-lineage"},
              {"initialPolicy", initialPolicyPath},
              {"rounds", rows}};
}

CheckpointLineage CheckpointLineage::fromJson(const Json& j) {
  CheckpointLineage lineage;
  lineage.initialPolicyPath = j.at("initialPolicy").get<std::string>();
  for (const Json& row : j.at("rounds")) {
    LineageEntry e;
    e.round = row.at("round").get<int>();
    e.datasetPath = row.at("dataset").get<std::string>();
    e.datasetHash = row.at("datasetHash").get<std::string>();
    e.checkpointPath = row.at("checkpoint").get<std::string>();
    e.checkpointHash = row.at("checkpointHash").get<std::string>();
    e.evalMeanReturn = row.at("eval").at("meanReturn").get<double>();
    e.evalSessions = row.at("eval").at("sessions").get<int>();
    lineage.rounds.push_back(std::move(e));
  }
  return lineage;
}

CheckpointLineage runProgressive(const ExperimentConfig& config, const fs::path& outDir,
                                 int workers) {
  config.validate();
  fs::create_directories(outDir);
  CheckpointLineage lineage;

  ConstantPolicy initialPolicy(config.initialBaselineAction(), config.env.stateDim());
  fs::path initialPath = outDir / "initial_policy.json";
  writeJsonFile(initialPath.string(), initialPolicy.toCheckpointJson());
  lineage.initialPolicyPath = initialPath.string();
  fs::path lineagePath = outDir / "lineage.json";
  writeJsonFile(lineagePath.string(), lineage.toJson());

  std::unique_ptr<Policy> baseline =
      std::make_unique<ConstantPolicy>(config.initialBaselineAction(), config.env.stateDim());
  std::unique_ptr<agent::OfflineAgent> previousAgent;
  try {
    for (int round = 1; round <= config.progressive.rounds; ++round) {
      fs::path roundDir = outDir / ("round_" + std::to_string(round));
      fs::create_directories(roundDir);

      std::uint64_t collectSeed = deriveSeed(config.seed, streams::kCollectRound, round);
      Dataset dataset = collectDataset(*baseline, config.exploration,
                                       config.progressive.sessionsPerRound, config.env,
                                       config.reward, config.agent.actionRange, collectSeed, round,
                                       workers);
      fs::path datasetPath = roundDir / "data.jsonl";
      writeDatasetWithManifest(dataset, datasetPath.string());

      Dataset trainingPool;
      if (config.progressive.poolRounds && round > 1) {
        trainingPool = dataset;
        for (const auto& prev : lineage.rounds) {
          Dataset earlier = readDatasetJsonl(prev.datasetPath);
          for (auto& s : earlier.sessions) trainingPool.sessions.push_back(std::move(s));
        }
      }
      const Dataset& trainOn = config.progressive.poolRounds && round > 1 ? trainingPool : dataset;

      TrainingConfig roundTraining = config.training;
      roundTraining.gradientSteps = config.progressive.gradientStepsPerRound;
      std::uint64_t trainSeed = deriveSeed(config.seed, streams::kTrainRound, round);
      const agent::OfflineAgent* warmStart =
          config.progressive.warmStart && round > 1 ? previousAgent.get() : nullptr;
      TrainResult trained = trainOffline(trainOn, config.agent, config.reward, roundTraining,
                                         trainSeed, workers, warmStart);

      fs::path checkpointPath = roundDir / "checkpoint.json";
      writeJsonFile(checkpointPath.string(), trained.agent->toCheckpointJson());
      writeFileBytes((roundDir / "training_log.csv").string(), trainingLogCsv(trained.log));

      ActorPolicy roundPolicy(trained.agent->actorNet());
      std::uint64_t evalSeed = deriveSeed(config.seed, streams::kEvalSessions);
      auto metrics = eval::abRollout({&roundPolicy}, {"round-" + std::to_string(round)}, config.env,
                                     config.reward, config.progressive.evalSessions, evalSeed,
                                     /*bootstrapSamples=*/50, workers);

      LineageEntry entry;
      entry.round = round;
      entry.datasetPath = datasetPath.string();
      entry.datasetHash = hashFile(datasetPath.string());
      entry.checkpointPath = checkpointPath.string();
      entry.checkpointHash = hashFile(checkpointPath.string());
      entry.evalMeanReturn = metrics.front().meanReturn;
      entry.evalSessions = metrics.front().sessions;
      lineage.rounds.push_back(entry);
      writeJsonFile(lineagePath.string(), lineage.toJson());
      logInfo("progressive round " + std::to_string(round) + ": mean return " +
              std::to_string(entry.evalMeanReturn));

      baseline = std::make_unique<ActorPolicy>(trained.agent->actorNet());
      previousAgent = std::move(trained.agent);
    }
  } catch (...) {
    writeJsonFile(lineagePath.string(), lineage.toJson());
    throw;
  }
  return lineage;
}

}  // namespace fuserl::pipeline
