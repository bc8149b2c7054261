#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace fuserl {

/// Violation of an operation precondition or a type invariant.
struct ContractError : std::logic_error {
  using std::logic_error::logic_error;
};

/// Invalid experiment configuration; carries the offending key path.
struct ConfigError : std::runtime_error {
  ConfigError(std::string key_path, const std::string& message)
      : std::runtime_error(key_path + ": " + message), keyPath(std::move(key_path)) {}
  std::string keyPath;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Artifact content does not match its manifest hash.
struct IntegrityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Checkpoint incompatible with the requested architecture or kind.
struct ModelMismatchError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct MissingArtifactError : std::runtime_error {
  MissingArtifactError(const std::string& message, std::vector<std::string> missing_paths)
      : std::runtime_error(message), missing(std::move(missing_paths)) {}
  std::vector<std::string> missing;
};

/// Off-policy estimate has zero total weight (policy outside logged support).
struct DegenerateEstimateError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct TrainingDivergedError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace fuserl

#define FUSERL_CHECK(cond, msg)                        \
  do {                                                 \
    if (!(cond)) throw ::fuserl::ContractError((msg)); \
  } while (0)
