#pragma once

#include <string>
#include <vector>

#include "fuserl/core/types.hpp"
#include "fuserl/util/jsonx.hpp"

namespace fuserl::pipeline {

/// Descriptor of the behavior policy a dataset was collected with.
struct PolicyDescriptor {
  ExplorationVariant variant = ExplorationVariant::Bounded;
  double lower = -0.15;
  double upper = 0.15;
  double gaussMean = 0.0;
  double gaussStd = 0.2;
  std::string baselinePolicyId;  // content hash of the baseline checkpoint

  Json toJson() const;
  static PolicyDescriptor fromJson(const Json& j);
};

struct Dataset {
  std::vector<SessionTrajectory> sessions;
  PolicyDescriptor collectionPolicy;
  int roundId = 0;
  std::uint64_t seed = 0;

  long transitionCount() const;
  std::vector<const Transition*> flattenTransitions() const;
};

/// One session object per line; key set and value layout are part of the
/// on-disk contract (see README).
std::string datasetToJsonl(const Dataset& dataset);
void writeDatasetJsonl(const Dataset& dataset, const std::string& path);
Dataset datasetFromJsonl(const std::string& text);
Dataset readDatasetJsonl(const std::string& path);

struct DatasetManifest {
  int schemaVersion = 1;
  long sessions = 0;
  long transitions = 0;
  std::uint64_t seed = 0;
  int roundId = 0;
  PolicyDescriptor policy;
  std::string contentHash;

  Json toJson() const;
  static DatasetManifest fromJson(const Json& j);
};

std::string manifestPathFor(const std::string& datasetPath);
void writeDatasetWithManifest(const Dataset& dataset, const std::string& datasetPath);
DatasetManifest readManifest(const std::string& manifestPath);

/// Throws IntegrityError when the dataset bytes do not match the manifest.
DatasetManifest verifyDatasetIntegrity(const std::string& datasetPath);

}  // namespace fuserl::pipeline
