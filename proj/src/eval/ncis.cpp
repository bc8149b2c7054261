#include "fuserl/eval/ncis.hpp"

#include <cmath>

#include "fuserl/core/reward.hpp"

namespace fuserl::eval {

void NcisConfig::validate() const {
  FUSERL_CHECK(cap > 0.0, "NcisConfig: cap must be > 0");
  FUSERL_CHECK(smoothingWidth > 0.0, "NcisConfig: smoothingWidth must be > 0");
}

double selfNormalizedMean(std::span<const double> weights, std::span<const double> values) {
  FUSERL_CHECK(weights.size() == values.size() && !weights.empty(),
               "selfNormalizedMean: mismatched or empty inputs");
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    FUSERL_CHECK(weights[i] >= 0.0, "selfNormalizedMean: weights must be >= 0");
    num += weights[i] * values[i];
    den += weights[i];
  }
  if (den <= 0.0) {
    throw DegenerateEstimateError(
        "importance estimate degenerate: zero total weight (target policy outside the logged "
        "support)");
  }
  return num / den;
}

namespace {

double gaussianPdf(double x, double mean, double stddev) {
  double z = (x - mean) / stddev;
  return std::exp(-0.5 * z * z) / (stddev * 2.5066282746310005024157652848110);
}

double behaviorDensity(const Transition& t) {
  const BehaviorMeta& meta = t.behaviorMeta;
  Vector action = t.action.flat();
  Vector baseline = meta.bounds.baselineAction.flat();
  if (meta.variant == ExplorationVariant::Bounded) {
    double width = meta.bounds.width();
    FUSERL_CHECK(width > 0.0, "ncisEstimate: logged bounded transition with a degenerate box");
    double density = 1.0;
    for (int d = 0; d < action.size(); ++d) density /= width;
    return density;
  }
  FUSERL_CHECK(meta.gaussStd > 0.0, "ncisEstimate: logged gaussian transition without a stddev");
  double density = 1.0;
  for (int d = 0; d < action.size(); ++d) {
    density *= gaussianPdf(action[d], baseline[d], meta.gaussStd);
  }
  return density;
}

double targetDensity(const Transition& t, const FusionAction& targetAction, double delta) {
  Vector logged = t.action.flat();
  Vector target = targetAction.flat();
  double halfWidth = 0.5 * delta;
  double density = 1.0;
  for (int d = 0; d < logged.size(); ++d) {
    if (std::abs(logged[d] - target[d]) > halfWidth) return 0.0;
    density /= delta;
  }
  return density;
}

}  // namespace

NcisBreakdown ncisEstimate(const pipeline::Dataset& dataset, const pipeline::Policy& policy,
                           const NcisConfig& config, double gamma) {
  config.validate();
  FUSERL_CHECK(!dataset.sessions.empty(), "ncisEstimate: empty dataset");
  NcisBreakdown out;
  out.sessionWeights.reserve(dataset.sessions.size());
  out.sessionReturns.reserve(dataset.sessions.size());
  for (const auto& session : dataset.sessions) {
    double weight = 1.0;
    for (const auto& t : session.transitions) {
      FusionAction target = policy.act(t.state);
      double rho = 0.0;
      double behavior = behaviorDensity(t);
      double targetP = targetDensity(t, target, config.smoothingWidth);
      if (behavior > 0.0) {
        rho = targetP / behavior;
      } else if (targetP > 0.0) {
        rho = config.cap;
      }
      weight *= std::min(rho, config.cap);
      if (weight == 0.0) break;
    }
    out.sessionWeights.push_back(std::min(weight, config.cap));
    out.sessionReturns.push_back(sessionReturn(session, gamma));
  }
  out.estimate = selfNormalizedMean(out.sessionWeights, out.sessionReturns);
  return out;
}

}  // namespace fuserl::eval
