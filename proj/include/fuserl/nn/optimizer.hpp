#pragma once

#include "fuserl/nn/network.hpp"

namespace fuserl::nn {

struct AdamConfig {
  double lr = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

struct AdamState {
  AdamConfig cfg;
  std::vector<LayerTensors> m;
  std::vector<LayerTensors> v;
  long step = 0;

  static AdamState forNetwork(const Network& net, AdamConfig cfg);
  Json toJson() const;
  static AdamState fromJson(const Json& j, const Network& net);
};

/// One bias-corrected Adam update; increments the step counter.
void adamStep(Network& net, const Gradients& grads, AdamState& opt);

}  // namespace fuserl::nn
