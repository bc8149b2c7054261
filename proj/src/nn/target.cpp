#include "fuserl/nn/target.hpp"

#include "fuserl/util/errors.hpp"

namespace fuserl::nn {

void TargetUpdateConfig::validate() const {
  FUSERL_CHECK(softRate > 0.0 && softRate <= 1.0, "TargetUpdateConfig: softRate must be in (0, 1]");
  FUSERL_CHECK(delaySteps >= 1, "TargetUpdateConfig: delaySteps must be >= 1");
}

void softUpdate(Network& target, const Network& online, const TargetUpdateConfig& cfg,
                long globalStep) {
  FUSERL_CHECK(target.sameArchitecture(online), "softUpdate: architecture mismatch");
  if (globalStep % cfg.delaySteps != 0) return;
  double tau = cfg.softRate;
  for (int l = 0; l < target.layerCount(); ++l) {
    target.layers()[l].w = (1.0 - tau) * target.layers()[l].w + tau * online.layers()[l].w;
    target.layers()[l].b = (1.0 - tau) * target.layers()[l].b + tau * online.layers()[l].b;
  }
}

}  // namespace fuserl::nn
