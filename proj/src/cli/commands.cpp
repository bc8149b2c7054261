#include "fuserl/cli/commands.hpp"

#include <chrono>
#include <filesystem>
#include <map>

#include "fuserl/cli/report.hpp"
#include "fuserl/config.hpp"
#include "fuserl/eval/ncis.hpp"
#include "fuserl/eval/replay.hpp"
#include "fuserl/eval/rollout.hpp"
#include "fuserl/explore/exploration.hpp"
#include "fuserl/pipeline/progressive.hpp"
#include "fuserl/util/hash.hpp"
#include "fuserl/util/log.hpp"
#include "fuserl/util/parallel.hpp"

namespace fuserl::cli {

namespace fs = std::filesystem;

namespace {

std::string isoTimestamp() {
  auto now = std::chrono::system_clock::now();
  std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

/// Per-command manifest: config echo, tool version, timestamps, and content
/// hashes of everything the command produced.
void writeRunManifest(const std::string& path, const std::string& command, const Json& configEcho,
                      const std::map<std::string, std::string>& artifacts,
                      const std::string& startedAt) {
  Json j;
  j["schema_version"] = 1;
  j["kind"] = "fuserl-run-manifest";
  j["command"] = command;
  j["tool_version"] = kToolVersion;
  j["started_at"] = startedAt;
  j["finished_at"] = isoTimestamp();
  j["config"] = configEcho;
  Json artifactsJson = Json::object();
  for (const auto& [artifactPath, hash] : artifacts) artifactsJson[artifactPath] = hash;
  j["artifacts"] = artifactsJson;
  writeJsonFile(path, j);
}

int resolveWorkers(int requested) {
  return requested > 0 ? requested : defaultWorkerCount();
}

template <typename Fn>
int runCommand(Fn&& fn) {
  try {
    fn();
    return kExitOk;
  } catch (const ConfigError& e) {
    logError(std::string("invalid config: ") + e.what());
    return kExitConfig;
  } catch (const IntegrityError& e) {
    logError(std::string("integrity: ") + e.what());
    return kExitIntegrity;
  } catch (const ModelMismatchError& e) {
    logError(std::string("model mismatch: ") + e.what());
    return kExitModelMismatch;
  } catch (const MissingArtifactError& e) {
    std::string list;
    for (const auto& m : e.missing) list += "\n  missing: " + m;
    logError(std::string(e.what()) + list);
    return kExitMissingArtifacts;
  } catch (const IoError& e) {
    logError(std::string("i/o: ") + e.what());
    return kExitIo;
  } catch (const std::exception& e) {
    logError(e.what());
    return kExitFailure;
  }
}

ExperimentConfig loadConfig(const CommonOptions& opts) {
  ExperimentConfig cfg = ExperimentConfig::load(opts.configPath);
  if (opts.seedOverride) {
    cfg.seed = *opts.seedOverride;
    cfg.env.seed = *opts.seedOverride;
  }
  return cfg;
}

void ensureParentDir(const std::string& path) {
  fs::path parent = fs::path(path).parent_path();
  if (!parent.empty()) fs::create_directories(parent);
}

void checkPolicyCompatible(const pipeline::Policy& policy, const ExperimentConfig& cfg,
                           const std::string& what) {
  if (policy.stateDim() != cfg.env.stateDim() ||
      policy.behaviorCount() != cfg.env.behaviorCount) {
    throw ModelMismatchError(what + ": checkpoint architecture does not match the environment (" +
                             std::to_string(policy.stateDim()) + "-dim states, " +
                             std::to_string(policy.behaviorCount()) + " behaviors)");
  }
}

}  // namespace

int cmdCollect(const CommonOptions& opts, const std::string& outPath,
               const std::optional<std::string>& baselinePath) {
  return runCommand([&] {
    std::string startedAt = isoTimestamp();
    ExperimentConfig cfg = loadConfig(opts);
    int workers = resolveWorkers(opts.workers);

    std::unique_ptr<pipeline::Policy> baseline;
    if (baselinePath) {
      baseline = pipeline::loadPolicyFile(*baselinePath);
    } else {
      baseline = std::make_unique<pipeline::ConstantPolicy>(cfg.initialBaselineAction(),
                                                            cfg.env.stateDim());
    }
    checkPolicyCompatible(*baseline, cfg, "collect baseline");

    pipeline::Dataset dataset =
        pipeline::collectDataset(*baseline, cfg.exploration, cfg.collect.numSessions, cfg.env,
                                 cfg.reward, cfg.agent.actionRange, cfg.seed, /*roundId=*/0,
                                 workers);
    ensureParentDir(outPath);
    pipeline::writeDatasetWithManifest(dataset, outPath);
    logInfo("collected " + std::to_string(dataset.sessions.size()) + " sessions (" +
            std::to_string(dataset.transitionCount()) + " transitions) -> " + outPath);

    writeRunManifest(outPath + ".run.json", "collect", cfg.toJson(),
                     {{outPath, hashFile(outPath)},
                      {pipeline::manifestPathFor(outPath),
                       hashFile(pipeline::manifestPathFor(outPath))}},
                     startedAt);
  });
}

int cmdTrain(const CommonOptions& opts, const std::string& datasetPath,
             const std::string& outPath) {
  return runCommand([&] {
    std::string startedAt = isoTimestamp();
    ExperimentConfig cfg = loadConfig(opts);
    int workers = resolveWorkers(opts.workers);

    pipeline::verifyDatasetIntegrity(datasetPath);
    pipeline::Dataset dataset = pipeline::readDatasetJsonl(datasetPath);

    pipeline::TrainResult result =
        pipeline::trainOffline(dataset, cfg.agent, cfg.reward, cfg.training, cfg.seed, workers);

    ensureParentDir(outPath);
    writeJsonFile(outPath, result.agent->toCheckpointJson());
    std::string logPath = outPath + ".training_log.csv";
    writeFileBytes(logPath, pipeline::trainingLogCsv(result.log));
    logInfo("trained " + std::string(agent::agentVariantName(cfg.agent.variant)) + " for " +
            std::to_string(cfg.training.gradientSteps) + " steps -> " + outPath);

    writeRunManifest(outPath + ".run.json", "train", cfg.toJson(),
                     {{outPath, hashFile(outPath)}, {logPath, hashFile(logPath)}}, startedAt);
  });
}

int cmdProgressive(const CommonOptions& opts, const std::string& outDir) {
  return runCommand([&] {
    std::string startedAt = isoTimestamp();
    ExperimentConfig cfg = loadConfig(opts);
    int workers = resolveWorkers(opts.workers);

    pipeline::CheckpointLineage lineage = pipeline::runProgressive(cfg, outDir, workers);

    std::map<std::string, std::string> artifacts;
    std::string lineagePath = (fs::path(outDir) / "lineage.json").string();
    artifacts[lineagePath] = hashFile(lineagePath);
    for (const auto& round : lineage.rounds) {
      artifacts[round.datasetPath] = round.datasetHash;
      artifacts[round.checkpointPath] = round.checkpointHash;
    }
    writeRunManifest((fs::path(outDir) / "run_manifest.json").string(), "progressive",
                     cfg.toJson(), artifacts, startedAt);
  });
}

int cmdEvaluate(const CommonOptions& opts, const std::string& datasetPath,
                const std::vector<std::string>& checkpointPaths, const std::string& outBase) {
  return runCommand([&] {
    std::string startedAt = isoTimestamp();
    ExperimentConfig cfg = loadConfig(opts);
    int workers = resolveWorkers(opts.workers);

    pipeline::verifyDatasetIntegrity(datasetPath);
    pipeline::Dataset dataset = pipeline::readDatasetJsonl(datasetPath);

    std::vector<std::unique_ptr<pipeline::Policy>> policies;
    std::vector<std::string> names;
    policies.push_back(std::make_unique<pipeline::ConstantPolicy>(cfg.initialBaselineAction(),
                                                                  cfg.env.stateDim()));
    names.emplace_back(kBaselineRowName);
    for (const auto& path : checkpointPaths) {
      policies.push_back(pipeline::loadPolicyFile(path));
      names.push_back(fs::path(path).stem().string());
      checkPolicyCompatible(*policies.back(), cfg, path);
    }

    eval::LoggedImpressions impressions = eval::replayImpressions(dataset, cfg.env, cfg.reward);

    std::vector<const pipeline::Policy*> policyPtrs;
    for (const auto& p : policies) policyPtrs.push_back(p.get());
    std::vector<eval::RolloutMetrics> rollout =
        eval::abRollout(policyPtrs, names, cfg.env, cfg.reward, cfg.evaluation.rolloutSessions,
                        deriveSeed(cfg.seed, streams::kEvalSessions), cfg.evaluation.bootstrapSamples,
                        workers);

    std::vector<EvaluationRow> rows;
    for (std::size_t i = 0; i < policies.size(); ++i) {
      EvaluationRow row;
      row.checkpoint = names[i];
      try {
        row.ncis = eval::ncisEstimate(dataset, *policies[i], cfg.evaluation.ncis,
                                      cfg.reward.discount)
                       .estimate;
      } catch (const DegenerateEstimateError& e) {
        logWarn(names[i] + ": " + e.what());
      }
      try {
        row.mtfGauc = eval::mtfGaucForPolicy(impressions, *policies[i]);
      } catch (const DegenerateEstimateError& e) {
        logWarn(names[i] + ": " + e.what());
      }
      row.rolloutReturn = rollout[i].meanReturn;
      row.uvc = rollout[i].uvc;
      row.udt = rollout[i].udt;
      row.ciLow = rollout[i].ciLow;
      row.ciHigh = rollout[i].ciHigh;
      row.sessions = rollout[i].sessions;
      rows.push_back(std::move(row));
    }

    // efficiency of the two exploration policies over this action space
    ExplorationEfficiency efficiency = compareExplorationEfficiency(
        cfg.exploration.lower, cfg.exploration.upper, cfg.exploration.gauss,
        2 * cfg.env.behaviorCount, /*samples=*/200000, deriveSeed(cfg.seed, streams::kExplore));

    ensureParentDir(outBase);
    std::string jsonPath = outBase + ".json";
    std::string csvPath = outBase + ".csv";
    Json reportJson = evaluationReportJson(rows, datasetPath);
    reportJson["exploration_efficiency"] = {
        {"gaussian_joint_rate", efficiency.gaussianJointRate},
        {"measured_ratio", efficiency.measuredRatio},
        {"nominal_ratio", efficiency.nominalRatio}};
    writeJsonFile(jsonPath, reportJson);
    writeFileBytes(csvPath, evaluationCsv(rows));
    logInfo("evaluation report -> " + jsonPath);

    writeRunManifest(outBase + ".run.json", "evaluate", cfg.toJson(),
                     {{jsonPath, hashFile(jsonPath)}, {csvPath, hashFile(csvPath)}}, startedAt);
  });
}

int cmdReport(const std::string& runDir) {
  return runCommand([&] {
    fs::path dir(runDir);
    std::vector<std::string> missing;
    fs::path evalJson;
    // accept either a direct evaluation.json or any single *.json evaluation report
    if (fs::exists(dir / "evaluation.json")) {
      evalJson = dir / "evaluation.json";
    } else if (fs::is_directory(dir)) {
      for (const auto& entry : fs::directory_iterator(dir)) {
        if (entry.path().extension() == ".json") {
          Json j = readJsonFile(entry.path().string());
          if (j.value("kind", "") == "fuserl-evaluation") {
            evalJson = entry.path();
            break;
          }
        }
      }
    }
    if (evalJson.empty()) missing.push_back((dir / "evaluation.json").string());
    if (!missing.empty()) {
      throw MissingArtifactError("report: required run artifacts are absent", missing);
    }

    Json evalReport = readJsonFile(evalJson.string());
    std::vector<EvaluationRow> rows = evaluationRowsFromJson(evalReport);
    Json efficiency;
    bool hasEfficiency = evalReport.contains("exploration_efficiency");
    if (hasEfficiency) efficiency = evalReport.at("exploration_efficiency");
    Json lineage;
    bool hasLineage = fs::exists(dir / "lineage.json");
    if (hasLineage) lineage = readJsonFile((dir / "lineage.json").string());

    writeFileBytes((dir / "report.md").string(),
                   reportMarkdown(rows, hasLineage ? &lineage : nullptr,
                                  hasEfficiency ? &efficiency : nullptr));
    writeFileBytes((dir / "report_online.csv").string(), reportOnlineCsv(rows));
    writeFileBytes((dir / "report_offline.csv").string(), reportOfflineCsv(rows));
    logInfo("report -> " + (dir / "report.md").string());
  });
}

}  // namespace fuserl::cli
