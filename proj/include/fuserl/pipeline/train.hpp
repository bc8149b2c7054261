#pragma once

#include <memory>

#include "fuserl/agent/factory.hpp"
#include "fuserl/pipeline/dataset.hpp"

namespace fuserl::pipeline {

struct TrainingConfig {
  int batchSize = 256;
  long gradientSteps = 20000;
  int logInterval = 100;
  void validate() const;
};

struct TrainingLogRow {
  long step = 0;
  double actorLoss = 0.0;
  double meanTdLoss = 0.0;
  double meanGate = 1.0;
  double meanPenalty = 0.0;
};

struct TrainResult {
  std::unique_ptr<agent::OfflineAgent> agent;
  std::vector<TrainingLogRow> log;
};

/// Fixed-size mini-batches drawn from shuffled passes over [0, n). Every
/// index appears at least once per pass; the tail batch reuses the pass's
/// final batchSize positions.
class ShuffledBatchScheduler {
 public:
  ShuffledBatchScheduler(long n, int batchSize, RngStream shuffle);
  /// Writes batchSize indices for the next batch.
  void next(std::vector<long>& outIndices);
  std::string rngState() const { return shuffle_.serialize(); }

 private:
  std::vector<long> perm_;
  long n_;
  int batchSize_;
  long cursor_;
  RngStream shuffle_;
};

/// Offline training on a logged dataset: shuffled passes over the flattened
/// transition pool, fixed-size mini-batches (the tail batch reuses the last
/// batchSize indices of the pass so every transition is visited each pass).
/// With warmStart the agent continues from that checkpoint instead of a
/// fresh seed-derived initialization.
TrainResult trainOffline(const Dataset& dataset, const agent::AgentConfig& agentConfig,
                         const RewardConfig& rewardConfig, const TrainingConfig& trainingConfig,
                         std::uint64_t seed, int workers,
                         const agent::OfflineAgent* warmStart = nullptr);

std::string trainingLogCsv(const std::vector<TrainingLogRow>& rows);

}  // namespace fuserl::pipeline
