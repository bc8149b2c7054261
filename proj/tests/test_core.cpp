#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "fuserl/core/fusion.hpp"
#include "fuserl/core/reward.hpp"
#include "fuserl/util/rng.hpp"
#include "test_util.hpp"

using namespace fuserl;
using testutil::action;
using testutil::vec;

namespace {

// Independent direct evaluation of the fusion formula (oracle).
double fuseOracle(const Vector& scores, const Vector& powers, const Vector& biases) {
  double out = 1.0;
  for (int i = 0; i < scores.size(); ++i) {
    double base = scores[i] + biases[i];
    if (base < 1e-6) base = 1e-6;
    out *= std::pow(base, powers[i]);
  }
  return out;
}

PredScores scores(std::initializer_list<double> values) { return PredScores{vec(values)}; }

}  // namespace

TEST_CASE("fuseScore identity powers multiply the scores") {
  CHECK(fuseScore(scores({0.5, 0.2}), action({1, 1}, {0, 0})) == doctest::Approx(0.1).epsilon(1e-12));
}

TEST_CASE("fuseScore with all-zero powers is 1") {
  RngStream rng(7);
  for (int i = 0; i < 20; ++i) {
    PredScores s{vec({rng.uniformRange(0.01, 1.0), rng.uniformRange(0.01, 1.0)})};
    FusionAction a = action({0, 0}, {rng.uniformRange(-0.5, 0.5), rng.uniformRange(-0.5, 0.5)});
    CHECK(fuseScore(s, a) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("fuseScore matches hand-derived value") {
  double expected = std::pow(0.4, 2.0) * std::pow(0.4, 0.5);
  CHECK(fuseScore(scores({0.3, 0.4}), action({2, 0.5}, {0.1, 0.0})) ==
        doctest::Approx(expected).epsilon(1e-12));
  CHECK(expected == doctest::Approx(0.1011929).epsilon(1e-6));
}

TEST_CASE("fuseScore matches the direct oracle on random inputs") {
  RngStream rng(123);
  for (int trial = 0; trial < 500; ++trial) {
    int k = 1 + static_cast<int>(rng.nextU64() % 6);
    Vector s(k), p(k), b(k);
    for (int i = 0; i < k; ++i) {
      s[i] = rng.uniformRange(1e-3, 1.0);
      p[i] = rng.uniformRange(-1.0, 1.0);
      b[i] = rng.uniformRange(-1.0, 1.0);
    }
    double got = fuseScore(PredScores{s}, FusionAction{p, b});
    double want = fuseOracle(s, p, b);
    CHECK(got == doctest::Approx(want).epsilon(1e-12));
  }
}

TEST_CASE("fuseScore rejects dimension mismatch") {
  CHECK_THROWS_AS(fuseScore(scores({0.5}), action({1, 1}, {0, 0})), ContractError);
}

TEST_CASE("fuseScore is monotone in a score when its power is positive") {
  FusionAction a = action({0.7, 0.3}, {0.05, 0.0});
  double lo = fuseScore(scores({0.4, 0.5}), a);
  double hi = fuseScore(scores({0.6, 0.5}), a);
  CHECK(hi > lo);
  FusionAction neg = action({-0.7, 0.3}, {0.05, 0.0});
  CHECK(fuseScore(scores({0.6, 0.5}), neg) < fuseScore(scores({0.4, 0.5}), neg));
}

TEST_CASE("rankCandidates returns indices of the top fused scores") {
  std::vector<PredScores> c = {scores({0.2}), scores({0.9}), scores({0.5})};
  FusionAction a = action({1}, {0});
  CHECK(rankCandidates(c, a, 2) == std::vector<int>{1, 2});
}

TEST_CASE("rankCandidates breaks ties toward the lower index") {
  std::vector<PredScores> c = {scores({0.5}), scores({0.5})};
  CHECK(rankCandidates(c, action({1}, {0}), 1) == std::vector<int>{0});
}

TEST_CASE("rankCandidates matches a full-sort oracle") {
  RngStream rng(42);
  std::vector<PredScores> c;
  for (int i = 0; i < 50; ++i) {
    c.push_back(scores({rng.uniformRange(0.01, 1.0), rng.uniformRange(0.01, 1.0),
                        rng.uniformRange(0.01, 1.0)}));
  }
  FusionAction a = action({0.8, -0.3, 0.5}, {0.0, 0.1, -0.05});
  std::vector<double> fused(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) fused[i] = fuseScore(c[i], a);
  std::vector<int> order(c.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int x, int y) { return fused[x] > fused[y]; });
  order.resize(6);
  CHECK(rankCandidates(c, a, 6) == order);
}

TEST_CASE("rankCandidates rejects an oversized list request") {
  std::vector<PredScores> c = {scores({0.5})};
  CHECK_THROWS_AS(rankCandidates(c, action({1}, {0}), 2), ContractError);
}

TEST_CASE("rankCandidates is invariant under increasing transforms of the scores") {
  // Raising every fused score through exp(x) preserves order; emulate by
  // scaling all powers, which maps fused scores through x^c (increasing).
  RngStream rng(5);
  std::vector<PredScores> c;
  for (int i = 0; i < 30; ++i) {
    c.push_back(scores({rng.uniformRange(0.05, 1.0), rng.uniformRange(0.05, 1.0)}));
  }
  FusionAction a = action({0.6, 0.9}, {0, 0});
  FusionAction doubled = action({1.2, 1.8}, {0, 0});
  CHECK(rankCandidates(c, a, 10) == rankCandidates(c, doubled, 10));
}

TEST_CASE("instantReward weights and sums feedback") {
  RewardConfig cfg;
  cfg.weights = vec({1, 2});
  cfg.groups = {{0}, {1}};
  InstantReward r = instantReward({BehaviorFeedback{vec({3, 1})}}, cfg);
  CHECK(r.total == doctest::Approx(5.0).epsilon(1e-12));
  CHECK(r.components[0] == doctest::Approx(3.0));
  CHECK(r.components[1] == doctest::Approx(2.0));
}

TEST_CASE("instantReward of all-zero feedback is zero") {
  RewardConfig cfg = RewardConfig::defaults();
  std::vector<BehaviorFeedback> fb(4, BehaviorFeedback{Vector::Zero(5)});
  InstantReward r = instantReward(fb, cfg);
  CHECK(r.total == 0.0);
  CHECK(r.components.isZero());
}

TEST_CASE("instantReward matches hand summation over a list") {
  RewardConfig cfg;
  cfg.weights = vec({1, 0.5, 2});
  cfg.groups = {{0, 1, 2}};
  std::vector<BehaviorFeedback> fb = {BehaviorFeedback{vec({1, 2, 0})},
                                      BehaviorFeedback{vec({0, 4, 1})}};
  CHECK(instantReward(fb, cfg).total == doctest::Approx(6.0).epsilon(1e-12));
}

TEST_CASE("instantReward is linear in the weights and additive over items") {
  RngStream rng(9);
  RewardConfig cfg = RewardConfig::defaults();
  std::vector<BehaviorFeedback> a, b, both;
  for (int i = 0; i < 3; ++i) {
    Vector va(5), vb(5);
    for (int d = 0; d < 5; ++d) {
      va[d] = rng.uniformRange(0, 2);
      vb[d] = rng.uniformRange(0, 2);
    }
    a.push_back(BehaviorFeedback{va});
    b.push_back(BehaviorFeedback{vb});
    both.push_back(BehaviorFeedback{va});
    both.push_back(BehaviorFeedback{vb});
  }
  CHECK(instantReward(both, cfg).total ==
        doctest::Approx(instantReward(a, cfg).total + instantReward(b, cfg).total).epsilon(1e-12));

  RewardConfig scaled = cfg;
  scaled.weights *= 3.0;
  CHECK(instantReward(a, scaled).total == doctest::Approx(3.0 * instantReward(a, cfg).total));
}

namespace {

SessionTrajectory trajectoryWithRewards(std::initializer_list<double> rewards) {
  SessionTrajectory t;
  int n = static_cast<int>(rewards.size());
  int i = 0;
  for (double r : rewards) {
    Transition tr;
    tr.rewardTotal = r;
    tr.terminal = (++i == n);
    t.transitions.push_back(tr);
  }
  return t;
}

}  // namespace

TEST_CASE("cumulativeReward geometric sum") {
  auto t = trajectoryWithRewards({1, 1, 1});
  CHECK(cumulativeReward(t, 0, 0.9) == doctest::Approx(2.71).epsilon(1e-12));
}

TEST_CASE("cumulativeReward with zero discount is myopic") {
  auto t = trajectoryWithRewards({3.5, 7.0, 2.0});
  CHECK(cumulativeReward(t, 1, 0.0) == doctest::Approx(7.0));
}

TEST_CASE("cumulativeReward from an interior step") {
  auto t = trajectoryWithRewards({2, 0, 4});
  CHECK(cumulativeReward(t, 1, 0.5) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("cumulativeReward rejects an out-of-range step") {
  auto t = trajectoryWithRewards({1});
  CHECK_THROWS_AS(cumulativeReward(t, 1, 0.9), ContractError);
  CHECK_THROWS_AS(cumulativeReward(t, -1, 0.9), ContractError);
}

TEST_CASE("cumulativeReward satisfies the Bellman recursion") {
  RngStream rng(31);
  for (int trial = 0; trial < 50; ++trial) {
    int len = 2 + static_cast<int>(rng.nextU64() % 10);
    SessionTrajectory t;
    for (int i = 0; i < len; ++i) {
      Transition tr;
      tr.rewardTotal = rng.uniformRange(-2, 8);
      tr.terminal = (i == len - 1);
      t.transitions.push_back(tr);
    }
    double gamma = rng.uniformRange(0, 1);
    for (int s = 0; s + 1 < len; ++s) {
      double lhs = cumulativeReward(t, s, gamma);
      double rhs = t.transitions[s].rewardTotal + gamma * cumulativeReward(t, s + 1, gamma);
      CHECK(lhs == doctest::Approx(rhs).epsilon(1e-9));
    }
  }
}

TEST_CASE("Transition validate ties total to the component sum") {
  Transition t;
  t.state.features = Vector::Zero(4);
  t.nextState.features = Vector::Zero(4);
  t.rewardComponents = vec({1.0, 2.5});
  t.rewardTotal = 3.5;
  CHECK_NOTHROW(t.validate(4, 2));
  t.rewardTotal = 3.6;
  CHECK_THROWS_AS(t.validate(4, 2), ContractError);
}

TEST_CASE("SessionTrajectory requires exactly the last transition terminal") {
  auto good = trajectoryWithRewards({1, 2});
  CHECK_NOTHROW(good.validate(20));
  auto bad = trajectoryWithRewards({1, 2});
  bad.transitions[0].terminal = true;
  CHECK_THROWS_AS(bad.validate(20), ContractError);
  CHECK_THROWS_AS(good.validate(1), ContractError);
}

TEST_CASE("RewardConfig group weights renormalize behavior masses") {
  RewardConfig cfg = RewardConfig::defaults();
  Vector sw = cfg.setWeights();
  CHECK(sw.size() == 2);
  CHECK(sw.sum() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(sw[0] == doctest::Approx(0.02 / 2.62).epsilon(1e-12));
  RewardConfig bad = cfg;
  bad.groups = {{0, 1}, {1, 2, 3, 4}};
  CHECK_THROWS_AS(bad.validate(), ContractError);
}
