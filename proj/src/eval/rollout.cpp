#include "fuserl/eval/rollout.hpp"

#include <algorithm>

#include "fuserl/env/session_runner.hpp"
#include "fuserl/util/parallel.hpp"

namespace fuserl::eval {

std::vector<RolloutMetrics> abRollout(const std::vector<const pipeline::Policy*>& policies,
                                      const std::vector<std::string>& names,
                                      const env::EnvConfig& envConfig,
                                      const RewardConfig& rewardConfig, int sessionsPerPolicy,
                                      std::uint64_t seed, int bootstrapSamples, int workers) {
  FUSERL_CHECK(policies.size() == names.size() && !policies.empty(),
               "abRollout: policies/names mismatch");
  FUSERL_CHECK(sessionsPerPolicy >= 100, "abRollout: needs at least 100 sessions per policy");
  FUSERL_CHECK(bootstrapSamples >= 1, "abRollout: bootstrapSamples must be >= 1");

  // Shared bootstrap resamples keep the confidence intervals paired too.
  std::vector<std::vector<int>> resamples(bootstrapSamples);
  {
    RngStream rng = deriveStream(seed, streams::kBootstrap);
    for (auto& sample : resamples) {
      sample.resize(sessionsPerPolicy);
      for (int i = 0; i < sessionsPerPolicy; ++i) {
        sample[i] = static_cast<int>(rng.nextU64() % static_cast<std::uint64_t>(sessionsPerPolicy));
      }
    }
  }

  std::vector<RolloutMetrics> report;
  report.reserve(policies.size());
  for (std::size_t p = 0; p < policies.size(); ++p) {
    const pipeline::Policy& policy = *policies[p];
    std::vector<double> returns(sessionsPerPolicy);
    std::vector<double> watch(sessionsPerPolicy);
    std::vector<double> consumptions(sessionsPerPolicy);
    parallelFor(static_cast<std::size_t>(sessionsPerPolicy), workers, [&](std::size_t idx) {
      env::ActionFn greedy = [&](int, const State& state) {
        FusionAction action = policy.act(state);
        BehaviorMeta meta;
        meta.bounds.baselineAction = action;
        meta.bounds.lower = 0.0;
        meta.bounds.upper = 0.0;
        return std::make_pair(action, meta);
      };
      env::SessionResult result = env::runSession(envConfig, rewardConfig, seed,
                                                  static_cast<std::int64_t>(idx), greedy);
      returns[idx] = result.discountedReturn;
      watch[idx] = result.totalWatchSeconds;
      consumptions[idx] = result.validConsumptionCount;
    });

    RolloutMetrics m;
    m.name = names[p];
    m.sessions = sessionsPerPolicy;
    double n = static_cast<double>(sessionsPerPolicy);
    for (int i = 0; i < sessionsPerPolicy; ++i) {
      m.meanReturn += returns[i];
      m.udt += watch[i];
      m.uvc += consumptions[i];
    }
    m.meanReturn /= n;
    m.udt /= n;
    m.uvc /= n;

    std::vector<double> bootMeans(bootstrapSamples);
    for (int s = 0; s < bootstrapSamples; ++s) {
      double sum = 0.0;
      for (int idx : resamples[s]) sum += returns[idx];
      bootMeans[s] = sum / n;
    }
    std::sort(bootMeans.begin(), bootMeans.end());
    auto percentile = [&](double q) {
      double pos = q * (bootstrapSamples - 1);
      int lo = static_cast<int>(pos);
      int hi = std::min(lo + 1, bootstrapSamples - 1);
      double frac = pos - lo;
      return bootMeans[lo] * (1.0 - frac) + bootMeans[hi] * frac;
    };
    m.ciLow = percentile(0.025);
    m.ciHigh = percentile(0.975);
    report.push_back(std::move(m));
  }
  return report;
}

}  // namespace fuserl::eval
