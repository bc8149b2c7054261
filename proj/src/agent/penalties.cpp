#include "fuserl/agent/penalties.hpp"

#include <cmath>

namespace fuserl::agent {

void ActorLossConfig::validate() const {
  FUSERL_CHECK(eta >= 0.0, "ActorLossConfig: eta must be >= 0");
  FUSERL_CHECK(lambda >= 0.0, "ActorLossConfig: lambda must be >= 0");
  FUSERL_CHECK(omega >= 0.0, "ActorLossConfig: omega must be >= 0");
  FUSERL_CHECK(beta > 0.0, "ActorLossConfig: beta must be > 0");
}

void CriticLossConfig::validate() const {
  FUSERL_CHECK(varpi >= 0.0, "CriticLossConfig: varpi must be >= 0");
  FUSERL_CHECK(gamma >= 0.0 && gamma <= 1.0, "CriticLossConfig: gamma must be in [0, 1]");
}

double boundPenalty(const FusionAction& action, const ExplorationBounds& bounds,
                    const ActorLossConfig& cfg) {
  double scale = cfg.beta * bounds.width();
  FUSERL_CHECK(scale > 0.0, "boundPenalty: degenerate exploration box");
  double total = 0.0;
  for (const auto& dim : penaltyDistance(action, bounds)) {
    if (dim.region == BoxRegion::Inside) continue;
    total += cfg.omega * std::exp(dim.deviation / scale);
  }
  return total;
}

Vector boundPenaltyGrad(const FusionAction& action, const ExplorationBounds& bounds,
                        const ActorLossConfig& cfg) {
  double scale = cfg.beta * bounds.width();
  FUSERL_CHECK(scale > 0.0, "boundPenaltyGrad: degenerate exploration box");
  auto dims = penaltyDistance(action, bounds);
  Vector grad = Vector::Zero(static_cast<int>(dims.size()));
  for (std::size_t d = 0; d < dims.size(); ++d) {
    if (dims[d].region == BoxRegion::Inside) continue;
    double slope = cfg.omega * std::exp(dims[d].deviation / scale) / scale;
    grad[static_cast<int>(d)] = dims[d].region == BoxRegion::AtOrAbove ? slope : -slope;
  }
  return grad;
}

double bootstrapGate(const FusionAction& action, const ExplorationBounds& bounds,
                     const CriticLossConfig& cfg) {
  if (!cfg.gateEnabled) return 1.0;
  double width = bounds.width();
  FUSERL_CHECK(width > 0.0, "bootstrapGate: degenerate exploration box");
  double gate = 1.0;
  for (const auto& dim : penaltyDistance(action, bounds)) {
    if (dim.region == BoxRegion::Inside) continue;
    gate *= cfg.varpi / std::exp(cfg.zeta + dim.deviation / width);
  }
  return gate;
}

}  // namespace fuserl::agent
