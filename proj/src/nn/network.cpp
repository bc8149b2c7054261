#include "fuserl/nn/network.hpp"

#include <cmath>

#include "fuserl/util/errors.hpp"
#include "fuserl/util/rng.hpp"

namespace fuserl::nn {

Network::Network(std::vector<int> sizes, OutputActivation output, double outMin, double outMax,
                 std::uint64_t initSeed)
    : sizes_(std::move(sizes)), output_(output), outMin_(outMin), outMax_(outMax) {
  FUSERL_CHECK(sizes_.size() >= 2, "Network: need at least input and output sizes");
  for (int s : sizes_) FUSERL_CHECK(s >= 1, "Network: layer sizes must be positive");
  FUSERL_CHECK(outMin_ < outMax_ || output_ == OutputActivation::Identity,
               "Network: invalid output range");
  layers_.resize(sizes_.size() - 1);
  for (std::size_t l = 0; l < layers_.size(); ++l) {
    int fanIn = sizes_[l];
    int fanOut = sizes_[l + 1];
    double bound = 1.0 / std::sqrt(static_cast<double>(fanIn));
    RngStream rng = deriveStream(initSeed, static_cast<std::uint64_t>(l));
    layers_[l].w.resize(fanOut, fanIn);
    for (int r = 0; r < fanOut; ++r) {
      for (int c = 0; c < fanIn; ++c) layers_[l].w(r, c) = rng.uniformRange(-bound, bound);
    }
    layers_[l].b.resize(fanOut);
    for (int r = 0; r < fanOut; ++r) layers_[l].b[r] = rng.uniformRange(-bound, bound);
  }
}

MatrixXd Network::forward(const MatrixXd& input, ForwardCache* cache) const {
  FUSERL_CHECK(input.cols() == inputDim(), "Network::forward: wrong input dimension");
  if (cache) {
    cache->input = input;
    cache->preact.assign(layers_.size(), MatrixXd());
    cache->act.assign(layers_.size(), MatrixXd());
  }
  MatrixXd x = input;
  for (std::size_t l = 0; l < layers_.size(); ++l) {
    MatrixXd z = x * layers_[l].w.transpose();
    z.rowwise() += layers_[l].b.transpose();
    bool last = (l + 1 == layers_.size());
    MatrixXd a;
    if (!last) {
      a = z.cwiseMax(0.0);
    } else if (output_ == OutputActivation::Identity) {
      a = z;
    } else {
      double center = 0.5 * (outMin_ + outMax_);
      double half = 0.5 * (outMax_ - outMin_);
      a = (z.array().tanh() * half + center).matrix();
    }
    if (cache) {
      cache->preact[l] = z;
      cache->act[l] = a;
    }
    x = std::move(a);
  }
  return x;
}

VectorXd Network::forward1(const VectorXd& input) const {
  MatrixXd out = forward(input.transpose());
  return out.row(0).transpose();
}

Gradients Network::backward(const ForwardCache& cache, const MatrixXd& upstream,
                            MatrixXd* inputGrad) const {
  FUSERL_CHECK(cache.preact.size() == layers_.size(),
               "Network::backward: cache does not match a forward pass");
  FUSERL_CHECK(upstream.rows() == cache.input.rows() && upstream.cols() == outputDim(),
               "Network::backward: upstream gradient shape mismatch");
  Gradients grads = zeroGradsLike(*this);
  MatrixXd delta;  // dL/dZ of current layer
  {
    std::size_t l = layers_.size() - 1;
    if (output_ == OutputActivation::Identity) {
      delta = upstream;
    } else {
      double half = 0.5 * (outMax_ - outMin_);
      MatrixXd t = cache.preact[l].array().tanh().matrix();
      delta = (upstream.array() * (1.0 - t.array().square()) * half).matrix();
    }
  }
  for (std::size_t l = layers_.size(); l-- > 0;) {
    const MatrixXd& layerInput = (l == 0) ? cache.input : cache.act[l - 1];
    grads[l].w = delta.transpose() * layerInput;
    grads[l].b = delta.colwise().sum().transpose();
    if (l > 0) {
      MatrixXd dPrev = delta * layers_[l].w;
      // rectifier derivative of the previous hidden layer
      delta = (dPrev.array() * (cache.preact[l - 1].array() > 0.0).cast<double>()).matrix();
    } else if (inputGrad) {
      *inputGrad = delta * layers_[0].w;
    }
  }
  return grads;
}

long Network::paramCount() const {
  long n = 0;
  for (const auto& layer : layers_) n += layer.w.size() + layer.b.size();
  return n;
}

VectorXd Network::paramsFlat() const {
  VectorXd flat(paramCount());
  long offset = 0;
  for (const auto& layer : layers_) {
    for (int r = 0; r < layer.w.rows(); ++r)
      for (int c = 0; c < layer.w.cols(); ++c) flat[offset++] = layer.w(r, c);
    for (int r = 0; r < layer.b.size(); ++r) flat[offset++] = layer.b[r];
  }
  return flat;
}

void Network::setParamsFlat(const VectorXd& flat) {
  FUSERL_CHECK(flat.size() == paramCount(), "Network::setParamsFlat: wrong parameter count");
  long offset = 0;
  for (auto& layer : layers_) {
    for (int r = 0; r < layer.w.rows(); ++r)
      for (int c = 0; c < layer.w.cols(); ++c) layer.w(r, c) = flat[offset++];
    for (int r = 0; r < layer.b.size(); ++r) layer.b[r] = flat[offset++];
  }
}

bool Network::sameArchitecture(const Network& other) const {
  return sizes_ == other.sizes_ && output_ == other.output_ && outMin_ == other.outMin_ &&
         outMax_ == other.outMax_;
}

bool Network::allFinite() const {
  for (const auto& layer : layers_) {
    if (!layer.w.allFinite() || !layer.b.allFinite()) return false;
  }
  return true;
}

Json Network::toJson() const {
  Json j;
  j["sizes"] = sizes_;
  j["output"] = output_ == OutputActivation::Identity ? "identity" : "tanh_range";
  j["out_min"] = outMin_;
  j["out_max"] = outMax_;
  Json layers = Json::array();
  for (const auto& layer : layers_) {
    Json lj;
    std::vector<double> w(layer.w.size());
    long idx = 0;
    for (int r = 0; r < layer.w.rows(); ++r)
      for (int c = 0; c < layer.w.cols(); ++c) w[idx++] = layer.w(r, c);
    lj["w"] = w;
    lj["b"] = std::vector<double>(layer.b.data(), layer.b.data() + layer.b.size());
    layers.push_back(std::move(lj));
  }
  j["layers"] = std::move(layers);
  return j;
}

Network Network::fromJson(const Json& j) {
  Network net;
  net.sizes_ = j.at("sizes").get<std::vector<int>>();
  std::string output = j.at("output").get<std::string>();
  net.output_ = output == "identity" ? OutputActivation::Identity : OutputActivation::TanhRange;
  net.outMin_ = j.at("out_min").get<double>();
  net.outMax_ = j.at("out_max").get<double>();
  const Json& layers = j.at("layers");
  FUSERL_CHECK(layers.is_array() && layers.size() + 1 == net.sizes_.size(),
               "Network::fromJson: layer count mismatch");
  net.layers_.resize(layers.size());
  for (std::size_t l = 0; l < layers.size(); ++l) {
    int fanIn = net.sizes_[l];
    int fanOut = net.sizes_[l + 1];
    auto w = layers[l].at("w").get<std::vector<double>>();
    auto b = layers[l].at("b").get<std::vector<double>>();
    FUSERL_CHECK(static_cast<int>(w.size()) == fanIn * fanOut &&
                     static_cast<int>(b.size()) == fanOut,
                 "Network::fromJson: parameter size mismatch");
    net.layers_[l].w.resize(fanOut, fanIn);
    long idx = 0;
    for (int r = 0; r < fanOut; ++r)
      for (int c = 0; c < fanIn; ++c) net.layers_[l].w(r, c) = w[idx++];
    net.layers_[l].b = Eigen::Map<VectorXd>(b.data(), fanOut);
  }
  return net;
}

Gradients zeroGradsLike(const Network& net) {
  Gradients grads(net.layerCount());
  for (int l = 0; l < net.layerCount(); ++l) {
    grads[l].w = MatrixXd::Zero(net.layers()[l].w.rows(), net.layers()[l].w.cols());
    grads[l].b = VectorXd::Zero(net.layers()[l].b.size());
  }
  return grads;
}

void accumulateGrads(Gradients& into, const Gradients& add) {
  FUSERL_CHECK(into.size() == add.size(), "accumulateGrads: layer count mismatch");
  for (std::size_t l = 0; l < into.size(); ++l) {
    into[l].w += add[l].w;
    into[l].b += add[l].b;
  }
}

void scaleGrads(Gradients& grads, double factor) {
  for (auto& g : grads) {
    g.w *= factor;
    g.b *= factor;
  }
}

}  // namespace fuserl::nn
