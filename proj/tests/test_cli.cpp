#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "fuserl/util/hash.hpp"
#include "fuserl/util/jsonx.hpp"
#include "test_util.hpp"

using namespace fuserl;
namespace fs = std::filesystem;

namespace {

std::string cliBinary() {
  const char* env = std::getenv("FUSERL_CLI_BIN");
  REQUIRE(env != nullptr);
  return env;
}

int runCli(const std::string& args, const std::string& logPath) {
  std::string cmd = "\"" + cliBinary() + "\" " + args + " >>\"" + logPath + "\" 2>&1";
  int status = std::system(cmd.c_str());
  REQUIRE(status != -1);
  return WEXITSTATUS(status);
}

Json tinyConfig() {
  Json j;
  j["schema_version"] = 1;
  j["seed"] = 777;
  j["agent"] = Json{{"actor_hidden", Json::array({16, 8})},
                    {"critic_hidden", Json::array({16, 8})},
                    {"critics_per_set", 2}};
  j["training"] = Json{{"batch_size", 32}, {"gradient_steps", 30}, {"log_interval", 10}};
  j["collect"] = Json{{"num_sessions", 40}};
  j["progressive"] = Json{{"rounds", 1},
                          {"sessions_per_round", 30},
                          {"gradient_steps_per_round", 20},
                          {"eval_sessions", 100}};
  j["evaluation"] = Json{{"rollout_sessions", 120}, {"bootstrap_samples", 25},
                         {"ncis_delta", 0.3}};
  return j;
}

struct CliFixture {
  testutil::TempDir tmp;
  std::string configPath;
  std::string logPath;

  explicit CliFixture(Json config = tinyConfig()) {
    configPath = tmp.file("config.json");
    logPath = tmp.file("cli.log");
    writeJsonFile(configPath, config);
  }

  std::string logContents() const { return readFileBytes(logPath); }
};

std::vector<std::vector<std::string>> parseCsv(const std::string& path) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(readFileBytes(path));
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(std::move(cells));
  }
  return rows;
}

}  // namespace

TEST_CASE("collect writes a dataset, manifest, and run manifest; reruns are identical") {
  CliFixture fx;
  std::string out = fx.tmp.file("data.jsonl");
  int code = runCli("collect --config " + fx.configPath + " --out " + out, fx.logPath);
  CHECK(code == 0);
  CHECK(fs::exists(out));
  CHECK(fs::exists(out + ".manifest.json"));
  CHECK(fs::exists(out + ".run.json"));

  // run manifest artifact hashes verify on re-read
  Json run = readJsonFile(out + ".run.json");
  for (auto it = run.at("artifacts").begin(); it != run.at("artifacts").end(); ++it) {
    CHECK(hashFile(it.key()) == it.value().get<std::string>());
  }

  std::string firstHash = hashFile(out);
  std::string out2 = fx.tmp.file("data2.jsonl");
  CHECK(runCli("collect --config " + fx.configPath + " --out " + out2, fx.logPath) == 0);
  CHECK(hashFile(out2) == firstHash);

  // a different seed changes the content
  std::string out3 = fx.tmp.file("data3.jsonl");
  CHECK(runCli("collect --config " + fx.configPath + " --out " + out3 + " --seed 778",
               fx.logPath) == 0);
  CHECK(hashFile(out3) != firstHash);
}

TEST_CASE("invalid configs exit with code 2 and name the offending key") {
  Json bad = tinyConfig();
  bad["exploration"] = Json{{"bl", 0.2}, {"bu", 0.1}};
  CliFixture fx(bad);
  int code = runCli("collect --config " + fx.configPath + " --out " + fx.tmp.file("x.jsonl"),
                    fx.logPath);
  CHECK(code == 2);
  CHECK(fx.logContents().find("exploration.bl") != std::string::npos);
}

TEST_CASE("unknown config keys exit with code 2 and the key path") {
  Json bad = tinyConfig();
  bad["agent"]["ensembles"] = 3;
  CliFixture fx(bad);
  int code = runCli("collect --config " + fx.configPath + " --out " + fx.tmp.file("x.jsonl"),
                    fx.logPath);
  CHECK(code == 2);
  CHECK(fx.logContents().find("agent.ensembles") != std::string::npos);
}

TEST_CASE("missing config file exits with the I/O code") {
  CliFixture fx;
  int code = runCli("collect --config " + fx.tmp.file("absent.json") + " --out " +
                        fx.tmp.file("x.jsonl"),
                    fx.logPath);
  CHECK(code == 3);
}

TEST_CASE("train produces a checkpoint and log; corrupted datasets exit 4") {
  CliFixture fx;
  std::string data = fx.tmp.file("data.jsonl");
  REQUIRE(runCli("collect --config " + fx.configPath + " --out " + data, fx.logPath) == 0);

  std::string ckpt = fx.tmp.file("agent.json");
  CHECK(runCli("train --config " + fx.configPath + " --dataset " + data + " --out " + ckpt,
               fx.logPath) == 0);
  CHECK(fs::exists(ckpt));
  auto logRows = parseCsv(ckpt + ".training_log.csv");
  // header + steps/logInterval rows (final step coincides with the grid)
  CHECK(logRows.size() == 1 + 3);
  CHECK(logRows[0] == std::vector<std::string>{"step", "actor_loss", "mean_td_loss", "mean_gate",
                                               "mean_penalty"});

  // deterministic rerun
  std::string ckpt2 = fx.tmp.file("agent2.json");
  CHECK(runCli("train --config " + fx.configPath + " --dataset " + data + " --out " + ckpt2,
               fx.logPath) == 0);
  CHECK(hashFile(ckpt2) == hashFile(ckpt));

  // tamper with the dataset
  std::string bytes = readFileBytes(data);
  bytes[bytes.size() / 3] = '?';
  writeFileBytes(data, bytes);
  CHECK(runCli("train --config " + fx.configPath + " --dataset " + data + " --out " +
                   fx.tmp.file("agent3.json"),
               fx.logPath) == 4);
}

TEST_CASE("train with zero gradient steps checkpoints the initialization") {
  Json cfg = tinyConfig();
  cfg["training"]["gradient_steps"] = 0;
  CliFixture fx(cfg);
  std::string data = fx.tmp.file("data.jsonl");
  REQUIRE(runCli("collect --config " + fx.configPath + " --out " + data, fx.logPath) == 0);
  std::string a = fx.tmp.file("a.json");
  std::string b = fx.tmp.file("b.json");
  CHECK(runCli("train --config " + fx.configPath + " --dataset " + data + " --out " + a,
               fx.logPath) == 0);
  CHECK(runCli("train --config " + fx.configPath + " --dataset " + data + " --out " + b,
               fx.logPath) == 0);
  CHECK(hashFile(a) == hashFile(b));
  Json ckpt = readJsonFile(a);
  CHECK(ckpt.at("global_step").get<long>() == 0);
}

TEST_CASE("progressive with one round mirrors collect+train structure") {
  CliFixture fx;
  std::string runDir = fx.tmp.file("run");
  CHECK(runCli("progressive --config " + fx.configPath + " --out " + runDir, fx.logPath) == 0);
  CHECK(fs::exists(runDir + "/lineage.json"));
  CHECK(fs::exists(runDir + "/initial_policy.json"));
  CHECK(fs::exists(runDir + "/round_1/data.jsonl"));
  CHECK(fs::exists(runDir + "/round_1/data.jsonl.manifest.json"));
  CHECK(fs::exists(runDir + "/round_1/checkpoint.json"));
  CHECK(fs::exists(runDir + "/round_1/training_log.csv"));
  Json lineage = readJsonFile(runDir + "/lineage.json");
  CHECK(lineage.at("rounds").size() == 1);
  Json ckpt = readJsonFile(runDir + "/round_1/checkpoint.json");
  CHECK(ckpt.at("kind") == "fuserl-agent");
}

TEST_CASE("evaluate emits the pinned CSV schema and report renders deltas") {
  CliFixture fx;
  std::string data = fx.tmp.file("data.jsonl");
  REQUIRE(runCli("collect --config " + fx.configPath + " --out " + data, fx.logPath) == 0);
  std::string ckpt = fx.tmp.file("agent.json");
  REQUIRE(runCli("train --config " + fx.configPath + " --dataset " + data + " --out " + ckpt,
                 fx.logPath) == 0);

  std::string runDir = fx.tmp.file("evalrun");
  fs::create_directories(runDir);
  std::string outBase = runDir + "/evaluation";
  CHECK(runCli("evaluate --config " + fx.configPath + " --dataset " + data + " --out " + outBase +
                   " " + ckpt,
               fx.logPath) == 0);

  auto rows = parseCsv(outBase + ".csv");
  REQUIRE(rows.size() == 3);  // header + baseline + checkpoint
  CHECK(rows[0] == std::vector<std::string>{"checkpoint", "ncis", "mtf_gauc", "rollout_return",
                                            "uvc", "udt", "ci_low", "ci_high"});
  CHECK(rows[1][0] == "baseline-constant");
  CHECK(rows[2][0] == "agent");

  CHECK(runCli("report --run " + runDir, fx.logPath) == 0);
  CHECK(fs::exists(runDir + "/report.md"));
  auto online = parseCsv(runDir + "/report_online.csv");
  REQUIRE(online.size() == 3);

  // recompute the percentage deltas from the raw CSV; must match to 0.01%
  auto raw = parseCsv(outBase + ".csv");
  double baseReturn = std::stod(raw[1][3]);
  for (std::size_t r = 1; r < online.size(); ++r) {
    double value = std::stod(online[r][1]);
    double reported = std::stod(online[r][2]);
    double recomputed = 100.0 * (value - baseReturn) / baseReturn;
    CHECK(std::abs(reported - recomputed) < 0.01);
  }

  // baseline row delta is exactly zero
  CHECK(std::stod(online[1][2]) == doctest::Approx(0.0));
}

TEST_CASE("evaluate rejects checkpoints with mismatched architecture") {
  CliFixture fx;
  std::string data = fx.tmp.file("data.jsonl");
  REQUIRE(runCli("collect --config " + fx.configPath + " --out " + data, fx.logPath) == 0);
  Json wrong = Json{{"schema_version", 1},
                    {"kind", "fuserl-constant-policy"},
                    {"state_dim", 9},
                    {"behavior_count", 2},
                    {"action", Json::array({0.1, 0.1, 0.0, 0.0})}};
  std::string wrongPath = fx.tmp.file("wrong.json");
  writeJsonFile(wrongPath, wrong);
  CHECK(runCli("evaluate --config " + fx.configPath + " --dataset " + data + " --out " +
                   fx.tmp.file("rep") + " " + wrongPath,
               fx.logPath) == 5);
}

TEST_CASE("report on an empty run directory exits 6 listing absences") {
  CliFixture fx;
  std::string runDir = fx.tmp.file("empty");
  fs::create_directories(runDir);
  int code = runCli("report --run " + runDir, fx.logPath);
  CHECK(code == 6);
  CHECK(fx.logContents().find("missing") != std::string::npos);
}
