#pragma once

#include <optional>
#include <string>
#include <vector>

namespace fuserl::cli {

inline constexpr const char* kToolVersion = "0.1.0";

// Exit codes: 0 ok, 2 invalid config, 3 I/O failure, 4 data integrity,
// 5 model mismatch, 6 missing artifacts, 1 anything else.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitIo = 3;
inline constexpr int kExitIntegrity = 4;
inline constexpr int kExitModelMismatch = 5;
inline constexpr int kExitMissingArtifacts = 6;

struct CommonOptions {
  std::string configPath;
  std::optional<std::uint64_t> seedOverride;
  int workers = 0;  // 0 = hardware concurrency
};

int cmdCollect(const CommonOptions& opts, const std::string& outPath,
               const std::optional<std::string>& baselinePath);
int cmdTrain(const CommonOptions& opts, const std::string& datasetPath, const std::string& outPath);
int cmdProgressive(const CommonOptions& opts, const std::string& outDir);
int cmdEvaluate(const CommonOptions& opts, const std::string& datasetPath,
                const std::vector<std::string>& checkpointPaths, const std::string& outBase);
int cmdReport(const std::string& runDir);

}  // namespace fuserl::cli
