#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "fuserl/util/jsonx.hpp"

namespace fuserl::nn {

using Eigen::MatrixXd;
using Eigen::VectorXd;

enum class OutputActivation { Identity, TanhRange };

struct LayerTensors {
  MatrixXd w;  // out x in
  VectorXd b;  // out
};

using Gradients = std::vector<LayerTensors>;

/// Per-batch activation cache filled by forward() and consumed by backward().
struct ForwardCache {
  MatrixXd input;                // B x in
  std::vector<MatrixXd> preact;  // per layer, B x out
  std::vector<MatrixXd> act;     // per layer post-activation, B x out
};

/// Plain fully connected network: affine layers with rectifier hidden units
/// and either an identity output (critics) or a tanh squashed onto a target
/// interval (actors). Rows of every matrix argument are batch samples.
class Network {
 public:
  Network() = default;
  Network(std::vector<int> sizes, OutputActivation output, double outMin, double outMax,
          std::uint64_t initSeed);

  MatrixXd forward(const MatrixXd& input, ForwardCache* cache = nullptr) const;
  VectorXd forward1(const VectorXd& input) const;

  /// Backpropagates upstream dL/dOutput (B x out). Parameter gradients are
  /// summed over rows; pass inputGrad to also get dL/dInput (B x in).
  Gradients backward(const ForwardCache& cache, const MatrixXd& upstream,
                     MatrixXd* inputGrad = nullptr) const;

  int inputDim() const { return sizes_.front(); }
  int outputDim() const { return sizes_.back(); }
  const std::vector<int>& sizes() const { return sizes_; }
  OutputActivation outputActivation() const { return output_; }
  double outputMin() const { return outMin_; }
  double outputMax() const { return outMax_; }

  int layerCount() const { return static_cast<int>(layers_.size()); }
  std::vector<LayerTensors>& layers() { return layers_; }
  const std::vector<LayerTensors>& layers() const { return layers_; }

  long paramCount() const;
  VectorXd paramsFlat() const;
  void setParamsFlat(const VectorXd& flat);

  bool sameArchitecture(const Network& other) const;
  bool allFinite() const;

  Json toJson() const;
  static Network fromJson(const Json& j);

 private:
  std::vector<int> sizes_;
  std::vector<LayerTensors> layers_;
  OutputActivation output_ = OutputActivation::Identity;
  double outMin_ = -1.0;
  double outMax_ = 1.0;
};

Gradients zeroGradsLike(const Network& net);

/// Elementwise a += b over layer tensors.
void accumulateGrads(Gradients& into, const Gradients& add);
void scaleGrads(Gradients& grads, double factor);

}  // namespace fuserl::nn
