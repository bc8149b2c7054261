#pragma once

#include "fuserl/nn/network.hpp"

namespace fuserl::nn {

struct TargetUpdateConfig {
  double softRate = 0.08;
  int delaySteps = 15;
  void validate() const;
};

/// Delayed soft update: when globalStep is a multiple of delaySteps,
/// target <- (1 - tau) * target + tau * online; otherwise the target is left
/// untouched (bitwise).
void softUpdate(Network& target, const Network& online, const TargetUpdateConfig& cfg,
                long globalStep);

}  // namespace fuserl::nn
