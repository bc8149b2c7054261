#include "fuserl/pipeline/train.hpp"

#include <algorithm>
#include <cstdio>
#include <numeric>
#include <sstream>

#include "fuserl/agent/batch.hpp"
#include "fuserl/util/log.hpp"

namespace fuserl::pipeline {

void TrainingConfig::validate() const {
  FUSERL_CHECK(batchSize >= 1, "TrainingConfig: batchSize must be >= 1");
  FUSERL_CHECK(gradientSteps >= 0, "TrainingConfig: gradientSteps must be >= 0");
  FUSERL_CHECK(logInterval >= 1, "TrainingConfig: logInterval must be >= 1");
}

ShuffledBatchScheduler::ShuffledBatchScheduler(long n, int batchSize, RngStream shuffle)
    : n_(n), batchSize_(batchSize), cursor_(n), shuffle_(shuffle) {
  FUSERL_CHECK(n_ >= batchSize_, "ShuffledBatchScheduler: batch larger than the pool");
  perm_.resize(n_);
  std::iota(perm_.begin(), perm_.end(), 0);
}

void ShuffledBatchScheduler::next(std::vector<long>& outIndices) {
  if (cursor_ >= n_) {
    for (long i = n_ - 1; i > 0; --i) {
      long j = static_cast<long>(shuffle_.nextU64() % static_cast<std::uint64_t>(i + 1));
      std::swap(perm_[i], perm_[j]);
    }
    cursor_ = 0;
  }
  long begin = std::min(cursor_, n_ - batchSize_);
  outIndices.assign(perm_.begin() + begin, perm_.begin() + begin + batchSize_);
  cursor_ += batchSize_;
}

TrainResult trainOffline(const Dataset& dataset, const agent::AgentConfig& agentConfig,
                         const RewardConfig& rewardConfig, const TrainingConfig& trainingConfig,
                         std::uint64_t seed, int workers,
                         const agent::OfflineAgent* warmStart) {
  trainingConfig.validate();
  FUSERL_CHECK(!dataset.sessions.empty(), "trainOffline: empty dataset");
  std::vector<const Transition*> pool = dataset.flattenTransitions();
  long n = static_cast<long>(pool.size());
  FUSERL_CHECK(trainingConfig.batchSize <= n,
               "trainOffline: batchSize exceeds the transition count");
  bool boundedData = dataset.collectionPolicy.variant == ExplorationVariant::Bounded;
  if (agentConfig.variant != agent::AgentVariant::DDPG) {
    FUSERL_CHECK(boundedData,
                 "trainOffline: penalty-based agents need bounded-exploration datasets "
                 "(per-transition exploration boxes)");
  }

  TrainResult result;
  result.agent = warmStart ? agent::agentFromCheckpointJson(warmStart->toCheckpointJson())
                           : agent::makeAgent(agentConfig, rewardConfig, seed);

  ShuffledBatchScheduler scheduler(n, trainingConfig.batchSize,
                                   deriveStream(seed, streams::kShuffle));
  std::vector<long> indices;
  std::vector<const Transition*> batchPtrs(trainingConfig.batchSize);
  for (long step = 0; step < trainingConfig.gradientSteps; ++step) {
    scheduler.next(indices);
    for (int b = 0; b < trainingConfig.batchSize; ++b) batchPtrs[b] = pool[indices[b]];
    agent::TransitionBatch batch = agent::TransitionBatch::fromTransitions(batchPtrs);
    agent::TrainDiagnostics diag = result.agent->trainStep(batch, workers);
    if ((step + 1) % trainingConfig.logInterval == 0 || step + 1 == trainingConfig.gradientSteps) {
      TrainingLogRow row;
      row.step = step + 1;
      row.actorLoss = diag.actorLoss;
      row.meanTdLoss = diag.criticTdLosses.mean();
      row.meanGate = diag.meanGate;
      row.meanPenalty = diag.meanPenalty;
      result.log.push_back(row);
    }
  }
  if (trainingConfig.gradientSteps > 0) {
    result.agent->setTrainRngState(scheduler.rngState());
  }
  return result;
}

std::string trainingLogCsv(const std::vector<TrainingLogRow>& rows) {
  std::ostringstream out;
  out << "step,actor_loss,mean_td_loss,mean_gate,mean_penalty\n";
  char buf[160];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof(buf), "%ld,%.10g,%.10g,%.10g,%.10g\n", r.step, r.actorLoss,
                  r.meanTdLoss, r.meanGate, r.meanPenalty);
    out << buf;
  }
  return out.str();
}

}  // namespace fuserl::pipeline
