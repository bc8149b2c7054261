#include "fuserl/nn/optimizer.hpp"

#include <cmath>

#include "fuserl/util/errors.hpp"

namespace fuserl::nn {

AdamState AdamState::forNetwork(const Network& net, AdamConfig cfg) {
  AdamState state;
  state.cfg = cfg;
  state.m = zeroGradsLike(net);
  state.v = zeroGradsLike(net);
  return state;
}

namespace {

std::vector<double> tensorsToVec(const std::vector<LayerTensors>& tensors) {
  std::vector<double> out;
  for (const auto& t : tensors) {
    for (int r = 0; r < t.w.rows(); ++r)
      for (int c = 0; c < t.w.cols(); ++c) out.push_back(t.w(r, c));
    for (int r = 0; r < t.b.size(); ++r) out.push_back(t.b[r]);
  }
  return out;
}

void vecToTensors(const std::vector<double>& flat, std::vector<LayerTensors>& tensors) {
  std::size_t idx = 0;
  for (auto& t : tensors) {
    for (int r = 0; r < t.w.rows(); ++r)
      for (int c = 0; c < t.w.cols(); ++c) t.w(r, c) = flat.at(idx++);
    for (int r = 0; r < t.b.size(); ++r) t.b[r] = flat.at(idx++);
  }
  FUSERL_CHECK(idx == flat.size(), "AdamState: moment size mismatch");
}

}  // namespace

Json AdamState::toJson() const {
  Json j;
  j["lr"] = cfg.lr;
  j["beta1"] = cfg.beta1;
  j["beta2"] = cfg.beta2;
  j["eps"] = cfg.eps;
  j["step"] = step;
  j["m"] = tensorsToVec(m);
  j["v"] = tensorsToVec(v);
  return j;
}

AdamState AdamState::fromJson(const Json& j, const Network& net) {
  AdamState state = forNetwork(net, AdamConfig{j.at("lr").get<double>(), j.at("beta1").get<double>(),
                                               j.at("beta2").get<double>(), j.at("eps").get<double>()});
  state.step = j.at("step").get<long>();
  vecToTensors(j.at("m").get<std::vector<double>>(), state.m);
  vecToTensors(j.at("v").get<std::vector<double>>(), state.v);
  return state;
}

void adamStep(Network& net, const Gradients& grads, AdamState& opt) {
  FUSERL_CHECK(static_cast<int>(grads.size()) == net.layerCount(),
               "adamStep: gradient layer count mismatch");
  opt.step += 1;
  double b1 = opt.cfg.beta1;
  double b2 = opt.cfg.beta2;
  double correction1 = 1.0 - std::pow(b1, static_cast<double>(opt.step));
  double correction2 = 1.0 - std::pow(b2, static_cast<double>(opt.step));
  for (int l = 0; l < net.layerCount(); ++l) {
    auto& layer = net.layers()[l];
    FUSERL_CHECK(grads[l].w.rows() == layer.w.rows() && grads[l].w.cols() == layer.w.cols(),
                 "adamStep: gradient shape mismatch");
    opt.m[l].w = b1 * opt.m[l].w + (1.0 - b1) * grads[l].w;
    opt.v[l].w.array() = b2 * opt.v[l].w.array() + (1.0 - b2) * grads[l].w.array().square();
    layer.w.array() -= opt.cfg.lr * (opt.m[l].w.array() / correction1) /
                       ((opt.v[l].w.array() / correction2).sqrt() + opt.cfg.eps);

    opt.m[l].b = b1 * opt.m[l].b + (1.0 - b1) * grads[l].b;
    opt.v[l].b.array() = b2 * opt.v[l].b.array() + (1.0 - b2) * grads[l].b.array().square();
    layer.b.array() -= opt.cfg.lr * (opt.m[l].b.array() / correction1) /
                       ((opt.v[l].b.array() / correction2).sqrt() + opt.cfg.eps);
  }
}

}  // namespace fuserl::nn
