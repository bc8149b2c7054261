#include <CLI11.hpp>

#include "fuserl/cli/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"fuserl: session-level fusion-weight RL on a synthetic recommender"};
  app.require_subcommand(1);

  fuserl::cli::CommonOptions opts;
  std::uint64_t seedValue = 0;
  bool seedSet = false;
  auto addCommon = [&](CLI::App* cmd) {
    cmd->add_option("--config", opts.configPath, "Experiment config JSON")->required();
    cmd->add_option("--seed", seedValue, "Master seed override")->each([&](const std::string&) {
      seedSet = true;
    });
    cmd->add_option("--workers", opts.workers, "Worker thread cap (default: machine cores)");
  };

  std::string outPath;
  std::string datasetPath;
  std::string runDir;
  std::string baselinePath;
  std::vector<std::string> checkpoints;

  CLI::App* collect = app.add_subcommand("collect", "Run exploration sessions and log a dataset");
  addCommon(collect);
  collect->add_option("--out", outPath, "Dataset output path (JSON lines)")->required();
  collect->add_option("--baseline", baselinePath,
                      "Baseline policy checkpoint (default: the constant initial policy)");

  CLI::App* train = app.add_subcommand("train", "Train an agent offline on a logged dataset");
  addCommon(train);
  train->add_option("--dataset", datasetPath, "Dataset path")->required();
  train->add_option("--out", outPath, "Checkpoint output path")->required();

  CLI::App* progressive =
      app.add_subcommand("progressive", "Alternate exploration and training for several rounds");
  addCommon(progressive);
  progressive->add_option("--out", runDir, "Output directory")->required();

  CLI::App* evaluate =
      app.add_subcommand("evaluate", "Offline estimates plus simulator rollouts for checkpoints");
  addCommon(evaluate);
  evaluate->add_option("--dataset", datasetPath, "Logged dataset path")->required();
  evaluate->add_option("--out", outPath, "Report base path (writes .json and .csv)")->required();
  evaluate->add_option("checkpoints", checkpoints, "Checkpoint files to evaluate");

  CLI::App* report = app.add_subcommand("report", "Render markdown/CSV tables from a run directory");
  report->add_option("--run", runDir, "Run directory with evaluation output")->required();

  CLI11_PARSE(app, argc, argv);
  if (seedSet) opts.seedOverride = seedValue;

  if (collect->parsed()) {
    return fuserl::cli::cmdCollect(
        opts, outPath, baselinePath.empty() ? std::nullopt : std::make_optional(baselinePath));
  }
  if (train->parsed()) return fuserl::cli::cmdTrain(opts, datasetPath, outPath);
  if (progressive->parsed()) return fuserl::cli::cmdProgressive(opts, runDir);
  if (evaluate->parsed()) return fuserl::cli::cmdEvaluate(opts, datasetPath, checkpoints, outPath);
  if (report->parsed()) return fuserl::cli::cmdReport(runDir);
  return fuserl::cli::kExitFailure;
}
