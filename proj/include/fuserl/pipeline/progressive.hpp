#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "fuserl/config.hpp"

namespace fuserl::pipeline {

struct LineageEntry {
  int round = 0;
  std::string datasetPath;
  std::string datasetHash;
  std::string checkpointPath;
  std::string checkpointHash;
  double evalMeanReturn = 0.0;
  int evalSessions = 0;
};

struct CheckpointLineage {
  std::string initialPolicyPath;
  std::vector<LineageEntry> rounds;

  Json toJson() const;
  static CheckpointLineage fromJson(const Json& j);
};

/// Alternates bounded exploration (centered on the previous round's policy)
/// and offline training for schedule.rounds rounds, persisting per-round
/// datasets, checkpoints, logs, and the lineage index under outDir. On a
/// mid-run failure the lineage collected so far is already on disk.
CheckpointLineage runProgressive(const ExperimentConfig& config,
                                 const std::filesystem::path& outDir, int workers);

}  // namespace fuserl::pipeline
