#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "fuserl/nn/network.hpp"
#include "fuserl/nn/optimizer.hpp"
#include "fuserl/nn/target.hpp"
#include "fuserl/util/rng.hpp"
#include "test_util.hpp"

using namespace fuserl;
using nn::Network;

namespace {

// Independently coded scalar forward pass (oracle for the batched one).
std::vector<double> forwardOracle(const Network& net, const std::vector<double>& input) {
  std::vector<double> x = input;
  for (int l = 0; l < net.layerCount(); ++l) {
    const auto& layer = net.layers()[l];
    std::vector<double> z(layer.b.size());
    for (int r = 0; r < layer.b.size(); ++r) {
      double acc = layer.b[r];
      for (int c = 0; c < layer.w.cols(); ++c) acc += layer.w(r, c) * x[c];
      z[r] = acc;
    }
    bool last = (l + 1 == net.layerCount());
    if (!last) {
      for (auto& v : z) v = v > 0 ? v : 0.0;
    } else if (net.outputActivation() == nn::OutputActivation::TanhRange) {
      double center = 0.5 * (net.outputMin() + net.outputMax());
      double half = 0.5 * (net.outputMax() - net.outputMin());
      for (auto& v : z) v = center + half * std::tanh(v);
    }
    x = std::move(z);
  }
  return x;
}

double squaredErrorLoss(const Network& net, const Eigen::MatrixXd& x, const Eigen::VectorXd& y) {
  Eigen::VectorXd pred = net.forward(x).col(0);
  return (pred - y).squaredNorm() / x.rows();
}

}  // namespace

TEST_CASE("forward of a zero network with identity output is zero") {
  Network net({3, 4, 2}, nn::OutputActivation::Identity, 0, 1, 7);
  for (auto& layer : net.layers()) {
    layer.w.setZero();
    layer.b.setZero();
  }
  Eigen::VectorXd out = net.forward1(testutil::vec({1.0, -2.0, 3.0}));
  CHECK(out.isZero());
}

TEST_CASE("single linear layer with identity weights passes the input through") {
  Network net({3, 3}, nn::OutputActivation::Identity, 0, 1, 7);
  net.layers()[0].w = Eigen::MatrixXd::Identity(3, 3);
  net.layers()[0].b.setZero();
  Eigen::VectorXd in = testutil::vec({0.5, -1.5, 2.0});
  CHECK((net.forward1(in) - in).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("batched forward matches an independently coded oracle") {
  for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
    Network net({2, 8, 1}, nn::OutputActivation::Identity, 0, 1, seed);
    RngStream rng(seed + 100);
    Eigen::MatrixXd batch(5, 2);
    for (int r = 0; r < 5; ++r)
      for (int c = 0; c < 2; ++c) batch(r, c) = rng.normal();
    Eigen::MatrixXd out = net.forward(batch);
    for (int r = 0; r < 5; ++r) {
      auto oracle = forwardOracle(net, {batch(r, 0), batch(r, 1)});
      CHECK(std::abs(out(r, 0) - oracle[0]) < 1e-12);
    }
  }
}

TEST_CASE("forward rejects wrong input width") {
  Network net({3, 2}, nn::OutputActivation::Identity, 0, 1, 7);
  Eigen::MatrixXd bad(1, 4);
  bad.setZero();
  CHECK_THROWS_AS(net.forward(bad), ContractError);
}

TEST_CASE("backward of a linear net reproduces the closed-form LSQ gradient") {
  Network net({3, 1}, nn::OutputActivation::Identity, 0, 1, 11);
  Eigen::MatrixXd x(1, 3);
  x << 0.5, -1.0, 2.0;
  double target = 0.7;
  nn::ForwardCache cache;
  double pred = net.forward(x, &cache)(0, 0);
  Eigen::MatrixXd upstream(1, 1);
  upstream << 2.0 * (pred - target);  // d/dpred of (pred - target)^2
  nn::Gradients grads = net.backward(cache, upstream);
  for (int c = 0; c < 3; ++c) {
    CHECK(grads[0].w(0, c) == doctest::Approx(2.0 * (pred - target) * x(0, c)).epsilon(1e-12));
  }
  CHECK(grads[0].b[0] == doctest::Approx(2.0 * (pred - target)).epsilon(1e-12));
}

TEST_CASE("input gradient of an identity-weight linear layer equals the upstream") {
  Network net({2, 2}, nn::OutputActivation::Identity, 0, 1, 7);
  net.layers()[0].w = Eigen::MatrixXd::Identity(2, 2);
  net.layers()[0].b.setZero();
  nn::ForwardCache cache;
  Eigen::MatrixXd x(1, 2);
  x << 0.3, 0.4;
  net.forward(x, &cache);
  Eigen::MatrixXd upstream(1, 2);
  upstream << 2.5, -1.0;
  Eigen::MatrixXd inputGrad;
  net.backward(cache, upstream, &inputGrad);
  CHECK((inputGrad - upstream).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("backward matches central finite differences on small random nets") {
  for (std::uint64_t seed : {5ULL, 6ULL, 7ULL, 8ULL}) {
    bool tanhOut = seed % 2 == 0;
    Network net({3, 6, 4, 2},
                tanhOut ? nn::OutputActivation::TanhRange : nn::OutputActivation::Identity, -1, 1,
                seed);
    RngStream rng(seed * 31 + 1);
    Eigen::MatrixXd x(4, 3);
    Eigen::MatrixXd targets(4, 2);
    for (int r = 0; r < 4; ++r) {
      for (int c = 0; c < 3; ++c) x(r, c) = rng.normal();
      for (int c = 0; c < 2; ++c) targets(r, c) = rng.normal();
    }
    auto loss = [&](const Network& n) {
      Eigen::MatrixXd pred = n.forward(x);
      return (pred - targets).squaredNorm() / x.rows();
    };
    nn::ForwardCache cache;
    Eigen::MatrixXd pred = net.forward(x, &cache);
    Eigen::MatrixXd upstream = 2.0 * (pred - targets) / x.rows();
    nn::Gradients grads = net.backward(cache, upstream);

    Eigen::VectorXd flatGrads(net.paramCount());
    {
      long offset = 0;
      for (const auto& g : grads) {
        for (int r = 0; r < g.w.rows(); ++r)
          for (int c = 0; c < g.w.cols(); ++c) flatGrads[offset++] = g.w(r, c);
        for (int r = 0; r < g.b.size(); ++r) flatGrads[offset++] = g.b[r];
      }
    }
    Eigen::VectorXd params = net.paramsFlat();
    const double h = 1e-5;
    Network probe = net;
    for (long p = 0; p < net.paramCount(); ++p) {
      Eigen::VectorXd shifted = params;
      shifted[p] = params[p] + h;
      probe.setParamsFlat(shifted);
      double up = loss(probe);
      shifted[p] = params[p] - h;
      probe.setParamsFlat(shifted);
      double down = loss(probe);
      double fd = (up - down) / (2 * h);
      double denom = std::max({std::abs(fd), std::abs(flatGrads[p]), 1e-3});
      CHECK(std::abs(fd - flatGrads[p]) / denom < 1e-4);
    }
  }
}

TEST_CASE("adamStep with zero gradients leaves parameters unchanged") {
  Network net({4, 8, 2}, nn::OutputActivation::Identity, 0, 1, 13);
  nn::AdamState opt = nn::AdamState::forNetwork(net, {});
  Eigen::VectorXd before = net.paramsFlat();
  nn::adamStep(net, nn::zeroGradsLike(net), opt);
  CHECK((net.paramsFlat() - before).cwiseAbs().maxCoeff() == 0.0);
  CHECK(opt.step == 1);
}

TEST_CASE("first adam step moves every parameter by about the learning rate") {
  Network net({2, 3}, nn::OutputActivation::Identity, 0, 1, 17);
  nn::AdamState opt = nn::AdamState::forNetwork(net, {0.001});
  nn::Gradients grads = nn::zeroGradsLike(net);
  grads[0].w.setOnes();
  grads[0].b.setOnes();
  Eigen::VectorXd before = net.paramsFlat();
  nn::adamStep(net, grads, opt);
  Eigen::VectorXd delta = (net.paramsFlat() - before).cwiseAbs();
  for (int i = 0; i < delta.size(); ++i) {
    CHECK(delta[i] == doctest::Approx(0.001).epsilon(1e-4));
  }
}

TEST_CASE("adam drives a quadratic regression loss down") {
  Network net({3, 16, 1}, nn::OutputActivation::Identity, 0, 1, 19);
  nn::AdamState opt = nn::AdamState::forNetwork(net, {0.01});
  RngStream rng(20);
  Eigen::MatrixXd x(16, 3);
  Eigen::VectorXd y(16);
  for (int r = 0; r < 16; ++r) {
    for (int c = 0; c < 3; ++c) x(r, c) = rng.normal();
    y[r] = 0.5 * x(r, 0) - 1.2 * x(r, 1) + 0.3;
  }
  double first = squaredErrorLoss(net, x, y);
  double afterFive = first;
  for (int step = 0; step < 100; ++step) {
    nn::ForwardCache cache;
    Eigen::VectorXd pred = net.forward(x, &cache).col(0);
    Eigen::MatrixXd upstream = (2.0 / x.rows()) * (pred - y);
    nn::Gradients grads = net.backward(cache, upstream);
    nn::adamStep(net, grads, opt);
    if (step == 4) afterFive = squaredErrorLoss(net, x, y);
  }
  double last = squaredErrorLoss(net, x, y);
  CHECK(last < afterFive);
  CHECK(last < 0.5 * first);
  CHECK(net.allFinite());
}

TEST_CASE("softUpdate with tau=1 copies the online network") {
  Network online({2, 4, 1}, nn::OutputActivation::Identity, 0, 1, 23);
  Network target({2, 4, 1}, nn::OutputActivation::Identity, 0, 1, 24);
  nn::softUpdate(target, online, {1.0, 1}, 1);
  CHECK((target.paramsFlat() - online.paramsFlat()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("softUpdate is skipped off the delay grid, bitwise") {
  Network online({2, 4, 1}, nn::OutputActivation::Identity, 0, 1, 23);
  Network target = online;
  target.layers()[0].w.array() += 0.25;
  Eigen::VectorXd before = target.paramsFlat();
  for (long step = 1; step <= 29; ++step) {
    if (step % 15 == 0) continue;
    nn::softUpdate(target, online, {0.08, 15}, step);
  }
  CHECK((target.paramsFlat() - before).cwiseAbs().maxCoeff() == 0.0);
  nn::softUpdate(target, online, {0.08, 15}, 30);
  CHECK((target.paramsFlat() - before).cwiseAbs().maxCoeff() > 0.0);
}

TEST_CASE("softUpdate blends with the configured rate") {
  Network online({1, 1}, nn::OutputActivation::Identity, 0, 1, 29);
  Network target = online;
  online.layers()[0].w(0, 0) = 1.0;
  online.layers()[0].b[0] = 1.0;
  target.layers()[0].w(0, 0) = 0.0;
  target.layers()[0].b[0] = 0.0;
  nn::softUpdate(target, online, {0.08, 1}, 1);
  CHECK(target.layers()[0].w(0, 0) == doctest::Approx(0.08).epsilon(1e-15));

  // contraction: ||target' - online|| = (1 - tau) * ||target - online||
  CHECK(std::abs(target.layers()[0].w(0, 0) - 1.0) == doctest::Approx(0.92).epsilon(1e-12));
}

TEST_CASE("softUpdate rejects architecture mismatch") {
  Network a({2, 3, 1}, nn::OutputActivation::Identity, 0, 1, 1);
  Network b({2, 4, 1}, nn::OutputActivation::Identity, 0, 1, 1);
  CHECK_THROWS_AS(nn::softUpdate(a, b, {0.08, 1}, 1), ContractError);
}

TEST_CASE("network JSON round trip is bit exact") {
  Network net({5, 32, 16, 3}, nn::OutputActivation::TanhRange, -1, 1, 31);
  Json j = net.toJson();
  Network back = Network::fromJson(j);
  CHECK(back.sameArchitecture(net));
  CHECK((back.paramsFlat() - net.paramsFlat()).cwiseAbs().maxCoeff() == 0.0);
  // serialized text re-parses to the same bits
  Network again = Network::fromJson(Json::parse(j.dump()));
  CHECK((again.paramsFlat() - net.paramsFlat()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("adam state JSON round trip is bit exact") {
  Network net({3, 8, 1}, nn::OutputActivation::Identity, 0, 1, 37);
  nn::AdamState opt = nn::AdamState::forNetwork(net, {0.003});
  RngStream rng(38);
  for (int i = 0; i < 7; ++i) {
    nn::Gradients grads = nn::zeroGradsLike(net);
    for (auto& g : grads) {
      for (int r = 0; r < g.w.rows(); ++r)
        for (int c = 0; c < g.w.cols(); ++c) g.w(r, c) = rng.normal();
      for (int r = 0; r < g.b.size(); ++r) g.b[r] = rng.normal();
    }
    nn::adamStep(net, grads, opt);
  }
  nn::AdamState back = nn::AdamState::fromJson(Json::parse(opt.toJson().dump()), net);
  CHECK(back.step == opt.step);
  for (std::size_t l = 0; l < opt.m.size(); ++l) {
    CHECK((back.m[l].w - opt.m[l].w).cwiseAbs().maxCoeff() == 0.0);
    CHECK((back.v[l].w - opt.v[l].w).cwiseAbs().maxCoeff() == 0.0);
    CHECK((back.m[l].b - opt.m[l].b).cwiseAbs().maxCoeff() == 0.0);
    CHECK((back.v[l].b - opt.v[l].b).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("rng stream state serialization round trips") {
  RngStream a(99);
  for (int i = 0; i < 1000; ++i) a.uniform01();
  RngStream b = RngStream::deserialize(a.serialize());
  for (int i = 0; i < 100; ++i) CHECK(a.nextU64() == b.nextU64());
}
