#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fuserl/cli/commands.hpp"
#include "fuserl/core/fusion.hpp"
#include "fuserl/core/reward.hpp"
#include "fuserl/eval/metrics.hpp"
#include "fuserl/agent/penalties.hpp"
#include "fuserl/explore/exploration.hpp"

namespace py = pybind11;
using namespace fuserl;

namespace {

Vector toVector(const std::vector<double>& v) {
  return Eigen::Map<const Vector>(v.data(), static_cast<int>(v.size()));
}

std::vector<double> fromVector(const Vector& v) {
  return std::vector<double>(v.data(), v.data() + v.size());
}

FusionAction makeAction(const std::vector<double>& powers, const std::vector<double>& biases) {
  FusionAction a;
  a.powers = toVector(powers);
  a.biases = toVector(biases);
  return a;
}

RewardConfig makeRewardConfig(const std::vector<double>& weights,
                              const std::vector<std::vector<int>>& groups, double discount) {
  RewardConfig cfg;
  cfg.weights = toVector(weights);
  cfg.groups = groups;
  cfg.discount = discount;
  cfg.validate();
  return cfg;
}

std::vector<eval::ImpressionRecord> makeRecords(const std::vector<int>& labels,
                                                const std::vector<double>& weights,
                                                const std::vector<double>& predictions) {
  if (labels.size() != weights.size() || labels.size() != predictions.size()) {
    throw ContractError("labels, weights, and predictions must have equal length");
  }
  std::vector<eval::ImpressionRecord> out(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    out[i].label = labels[i];
    out[i].sampleWeight = weights[i];
    out[i].prediction = predictions[i];
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_fuserl, m) {
  m.doc() = "Session-level fusion-weight RL on a synthetic recommender";
  m.attr("__version__") = cli::kToolVersion;

  py::register_exception<ContractError>(m, "ContractViolation", PyExc_ValueError);
  py::register_exception<DegenerateEstimateError>(m, "DegenerateEstimate", PyExc_ArithmeticError);

  m.def(
      "fuse_score",
      [](const std::vector<double>& scores, const std::vector<double>& powers,
         const std::vector<double>& biases) {
        return fuseScore(PredScores{toVector(scores)}, makeAction(powers, biases));
      },
      py::arg("scores"), py::arg("powers"), py::arg("biases"),
      "Combined ranking score prod_i (score_i + bias_i)^power_i.");

  m.def(
      "rank_candidates",
      [](const std::vector<std::vector<double>>& candidates, const std::vector<double>& powers,
         const std::vector<double>& biases, int listLength) {
        std::vector<PredScores> scores;
        scores.reserve(candidates.size());
        for (const auto& c : candidates) scores.push_back(PredScores{toVector(c)});
        return rankCandidates(scores, makeAction(powers, biases), listLength);
      },
      py::arg("candidates"), py::arg("powers"), py::arg("biases"), py::arg("list_length"));

  m.def(
      "instant_reward",
      [](const std::vector<std::vector<double>>& feedback, const std::vector<double>& weights,
         const std::vector<std::vector<int>>& groups) {
        RewardConfig cfg = makeRewardConfig(weights, groups, 0.9);
        std::vector<BehaviorFeedback> fb;
        fb.reserve(feedback.size());
        for (const auto& item : feedback) fb.push_back(BehaviorFeedback{toVector(item)});
        InstantReward r = instantReward(fb, cfg);
        return py::make_tuple(r.total, fromVector(r.components));
      },
      py::arg("feedback"), py::arg("weights"), py::arg("groups"),
      "Weighted list reward and its per-group components.");

  m.def(
      "cumulative_reward",
      [](const std::vector<double>& rewards, double gamma, int fromStep) {
        return discountedReturn(rewards, fromStep, gamma);
      },
      py::arg("rewards"), py::arg("gamma"), py::arg("from_step") = 0);

  m.def(
      "explore_bounded",
      [](const std::vector<double>& baselinePowers, const std::vector<double>& baselineBiases,
         double lower, double upper, double actionMin, double actionMax, std::uint64_t seed) {
        ExplorationBounds bounds;
        bounds.baselineAction = makeAction(baselinePowers, baselineBiases);
        bounds.lower = lower;
        bounds.upper = upper;
        RngStream rng(seed);
        return fromVector(
            exploreBounded(bounds, ActionRange{actionMin, actionMax}, rng).flat());
      },
      py::arg("baseline_powers"), py::arg("baseline_biases"), py::arg("lower") = -0.15,
      py::arg("upper") = 0.15, py::arg("action_min") = -1.0, py::arg("action_max") = 1.0,
      py::arg("seed") = 0);

  m.def(
      "explore_gaussian",
      [](const std::vector<double>& baselinePowers, const std::vector<double>& baselineBiases,
         double mean, double stddev, double actionMin, double actionMax, std::uint64_t seed) {
        RngStream rng(seed);
        return fromVector(exploreGaussian(makeAction(baselinePowers, baselineBiases),
                                          GaussianExplorationConfig{mean, stddev},
                                          ActionRange{actionMin, actionMax}, rng)
                              .flat());
      },
      py::arg("baseline_powers"), py::arg("baseline_biases"), py::arg("mean") = 0.0,
      py::arg("stddev") = 0.2, py::arg("action_min") = -1.0, py::arg("action_max") = 1.0,
      py::arg("seed") = 0);

  m.def(
      "bound_penalty",
      [](const std::vector<double>& action, const std::vector<double>& baseline, double lower,
         double upper, double omega, double beta) {
        ExplorationBounds bounds;
        bounds.baselineAction = FusionAction::fromFlat(toVector(baseline));
        bounds.lower = lower;
        bounds.upper = upper;
        agent::ActorLossConfig cfg;
        cfg.omega = omega;
        cfg.beta = beta;
        return agent::boundPenalty(FusionAction::fromFlat(toVector(action)), bounds, cfg);
      },
      py::arg("action"), py::arg("baseline"), py::arg("lower") = -0.15, py::arg("upper") = 0.15,
      py::arg("omega") = 1.0, py::arg("beta") = 0.3,
      "Actor bound penalty summed over action dimensions.");

  m.def(
      "bootstrap_gate",
      [](const std::vector<double>& action, const std::vector<double>& baseline, double lower,
         double upper, double varpi, double zeta) {
        ExplorationBounds bounds;
        bounds.baselineAction = FusionAction::fromFlat(toVector(baseline));
        bounds.lower = lower;
        bounds.upper = upper;
        agent::CriticLossConfig cfg;
        cfg.varpi = varpi;
        cfg.zeta = zeta;
        return agent::bootstrapGate(FusionAction::fromFlat(toVector(action)), bounds, cfg);
      },
      py::arg("action"), py::arg("baseline"), py::arg("lower") = -0.15, py::arg("upper") = 0.15,
      py::arg("varpi") = 1.0, py::arg("zeta") = 3.0,
      "TD bootstrap gate multiplied over action dimensions.");

  m.def(
      "weighted_auc",
      [](const std::vector<int>& labels, const std::vector<double>& weights,
         const std::vector<double>& predictions) -> py::object {
        auto auc = eval::weightedAuc(makeRecords(labels, weights, predictions));
        if (!auc) return py::none();
        return py::float_(*auc);
      },
      py::arg("labels"), py::arg("weights"), py::arg("predictions"),
      "Weighted pairwise AUC; None when the group is one-sided.");

  m.def(
      "mtf_gauc",
      [](const std::vector<std::tuple<std::vector<int>, std::vector<double>,
                                      std::vector<double>>>& groups) {
        std::vector<std::vector<eval::ImpressionRecord>> converted;
        converted.reserve(groups.size());
        for (const auto& [labels, weights, predictions] : groups) {
          converted.push_back(makeRecords(labels, weights, predictions));
        }
        return eval::mtfGauc(converted);
      },
      py::arg("groups"), "Impression-weighted mean of per-user weighted AUCs.");

  // pipeline entry points: same behavior as the fuserl CLI subcommands,
  // returning the process-style exit code
  m.def(
      "run_collect",
      [](const std::string& configPath, const std::string& outPath, py::object seed, int workers) {
        cli::CommonOptions opts;
        opts.configPath = configPath;
        if (!seed.is_none()) opts.seedOverride = seed.cast<std::uint64_t>();
        opts.workers = workers;
        return cli::cmdCollect(opts, outPath, std::nullopt);
      },
      py::arg("config_path"), py::arg("out_path"), py::arg("seed") = py::none(),
      py::arg("workers") = 0);

  m.def(
      "run_train",
      [](const std::string& configPath, const std::string& datasetPath, const std::string& outPath,
         py::object seed, int workers) {
        cli::CommonOptions opts;
        opts.configPath = configPath;
        if (!seed.is_none()) opts.seedOverride = seed.cast<std::uint64_t>();
        opts.workers = workers;
        return cli::cmdTrain(opts, datasetPath, outPath);
      },
      py::arg("config_path"), py::arg("dataset_path"), py::arg("out_path"),
      py::arg("seed") = py::none(), py::arg("workers") = 0);

  m.def(
      "run_progressive",
      [](const std::string& configPath, const std::string& outDir, py::object seed, int workers) {
        cli::CommonOptions opts;
        opts.configPath = configPath;
        if (!seed.is_none()) opts.seedOverride = seed.cast<std::uint64_t>();
        opts.workers = workers;
        return cli::cmdProgressive(opts, outDir);
      },
      py::arg("config_path"), py::arg("out_dir"), py::arg("seed") = py::none(),
      py::arg("workers") = 0);

  m.def(
      "run_evaluate",
      [](const std::string& configPath, const std::string& datasetPath,
         const std::vector<std::string>& checkpoints, const std::string& outBase, py::object seed,
         int workers) {
        cli::CommonOptions opts;
        opts.configPath = configPath;
        if (!seed.is_none()) opts.seedOverride = seed.cast<std::uint64_t>();
        opts.workers = workers;
        return cli::cmdEvaluate(opts, datasetPath, checkpoints, outBase);
      },
      py::arg("config_path"), py::arg("dataset_path"), py::arg("checkpoints"),
      py::arg("out_base"), py::arg("seed") = py::none(), py::arg("workers") = 0);

  m.def(
      "run_report", [](const std::string& runDir) { return cli::cmdReport(runDir); },
      py::arg("run_dir"));
}
