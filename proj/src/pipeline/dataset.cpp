#include "fuserl/pipeline/dataset.hpp"

#include <sstream>

#include "fuserl/util/hash.hpp"

namespace fuserl::pipeline {

namespace {

std::vector<double> vecToStd(const Vector& v) {
  return std::vector<double>(v.data(), v.data() + v.size());
}

Vector stdToVec(const std::vector<double>& v) {
  return Eigen::Map<const Vector>(v.data(), static_cast<int>(v.size()));
}

Json transitionToJson(const Transition& t) {
  Json j;
  j["state"] = vecToStd(t.state.features);
  j["action"] = vecToStd(t.action.flat());
  j["rewardComponents"] = vecToStd(t.rewardComponents);
  j["rewardTotal"] = t.rewardTotal;
  j["nextState"] = vecToStd(t.nextState.features);
  j["terminal"] = t.terminal;
  j["behaviorMeta"] = Json{{"variant", explorationVariantName(t.behaviorMeta.variant)},
                           {"baselineAction", vecToStd(t.behaviorMeta.bounds.baselineAction.flat())},
                           {"bl", t.behaviorMeta.bounds.lower},
                           {"bu", t.behaviorMeta.bounds.upper},
                           {"gaussStd", t.behaviorMeta.gaussStd}};
  return j;
}

Transition transitionFromJson(const Json& j) {
  Transition t;
  t.state.features = stdToVec(j.at("state").get<std::vector<double>>());
  t.action = FusionAction::fromFlat(stdToVec(j.at("action").get<std::vector<double>>()));
  t.rewardComponents = stdToVec(j.at("rewardComponents").get<std::vector<double>>());
  t.rewardTotal = j.at("rewardTotal").get<double>();
  t.nextState.features = stdToVec(j.at("nextState").get<std::vector<double>>());
  t.terminal = j.at("terminal").get<bool>();
  const Json& meta = j.at("behaviorMeta");
  t.behaviorMeta.variant = explorationVariantFromName(meta.at("variant").get<std::string>());
  t.behaviorMeta.bounds.baselineAction =
      FusionAction::fromFlat(stdToVec(meta.at("baselineAction").get<std::vector<double>>()));
  t.behaviorMeta.bounds.lower = meta.at("bl").get<double>();
  t.behaviorMeta.bounds.upper = meta.at("bu").get<double>();
  t.behaviorMeta.gaussStd = meta.at("gaussStd").get<double>();
  return t;
}

}  // namespace

Json PolicyDescriptor::toJson() const {
  return Json{{"variant", explorationVariantName(variant)}, {"bl", lower},
              {"bu", upper},                                {"gaussMean", gaussMean},
              {"gaussStd", gaussStd},                       {"baselinePolicyId", baselinePolicyId}};
}

PolicyDescriptor PolicyDescriptor::fromJson(const Json& j) {
  PolicyDescriptor d;
  d.variant = explorationVariantFromName(j.at("variant").get<std::string>());
  d.lower = j.at("bl").get<double>();
  d.upper = j.at("bu").get<double>();
  d.gaussMean = j.at("gaussMean").get<double>();
  d.gaussStd = j.at("gaussStd").get<double>();
  d.baselinePolicyId = j.at("baselinePolicyId").get<std::string>();
  return d;
}

long Dataset::transitionCount() const {
  long n = 0;
  for (const auto& s : sessions) n += s.length();
  return n;
}

std::vector<const Transition*> Dataset::flattenTransitions() const {
  std::vector<const Transition*> out;
  out.reserve(transitionCount());
  for (const auto& s : sessions) {
    for (const auto& t : s.transitions) out.push_back(&t);
  }
  return out;
}

std::string datasetToJsonl(const Dataset& dataset) {
  std::ostringstream out;
  for (const auto& session : dataset.sessions) {
    Json j;
    j["sessionId"] = session.sessionId;
    j["userId"] = session.userId;
    j["roundId"] = session.roundId;
    Json transitions = Json::array();
    for (const auto& t : session.transitions) transitions.push_back(transitionToJson(t));
    j["transitions"] = std::move(transitions);
    out << j.dump() << "\n";
  }
  return out.str();
}

void writeDatasetJsonl(const Dataset& dataset, const std::string& path) {
  writeFileBytes(path, datasetToJsonl(dataset));
}

Dataset datasetFromJsonl(const std::string& text) {
  Dataset dataset;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    Json j = parseJsonText(line, "dataset line");
    SessionTrajectory session;
    session.sessionId = j.at("sessionId").get<std::int64_t>();
    session.userId = j.at("userId").get<std::int64_t>();
    session.roundId = j.at("roundId").get<int>();
    for (const Json& tj : j.at("transitions")) {
      session.transitions.push_back(transitionFromJson(tj));
    }
    FUSERL_CHECK(!session.transitions.empty(), "dataset: session without transitions");
    dataset.sessions.push_back(std::move(session));
  }
  return dataset;
}

Dataset readDatasetJsonl(const std::string& path) {
  Dataset dataset = datasetFromJsonl(readFileBytes(path));
  std::string manifestPath = manifestPathFor(path);
  DatasetManifest manifest = readManifest(manifestPath);
  dataset.collectionPolicy = manifest.policy;
  dataset.roundId = manifest.roundId;
  dataset.seed = manifest.seed;
  return dataset;
}

Json DatasetManifest::toJson() const {
  Json j;
  j["schema_version"] = schemaVersion;
  j["kind"] = "fuserl-dataset-manifest";
  j["sessions"] = sessions;
  j["transitions"] = transitions;
  j["seed"] = seed;
  j["roundId"] = roundId;
  j["policy"] = policy.toJson();
  j["contentHash"] = contentHash;
  return j;
}

DatasetManifest DatasetManifest::fromJson(const Json& j) {
  DatasetManifest m;
  m.schemaVersion = j.at("schema_version").get<int>();
  m.sessions = j.at("sessions").get<long>();
  m.transitions = j.at("transitions").get<long>();
  m.seed = j.at("seed").get<std::uint64_t>();
  m.roundId = j.at("roundId").get<int>();
  m.policy = PolicyDescriptor::fromJson(j.at("policy"));
  m.contentHash = j.at("contentHash").get<std::string>();
  return m;
}

std::string manifestPathFor(const std::string& datasetPath) {
  return datasetPath + ".manifest.json";
}

void writeDatasetWithManifest(const Dataset& dataset, const std::string& datasetPath) {
  std::string body = datasetToJsonl(dataset);
  writeFileBytes(datasetPath, body);
  DatasetManifest manifest;
  manifest.sessions = static_cast<long>(dataset.sessions.size());
  manifest.transitions = dataset.transitionCount();
  manifest.seed = dataset.seed;
  manifest.roundId = dataset.roundId;
  manifest.policy = dataset.collectionPolicy;
  manifest.contentHash = contentHash(body);
  writeJsonFile(manifestPathFor(datasetPath), manifest.toJson());
}

DatasetManifest readManifest(const std::string& manifestPath) {
  return DatasetManifest::fromJson(readJsonFile(manifestPath));
}

DatasetManifest verifyDatasetIntegrity(const std::string& datasetPath) {
  DatasetManifest manifest = readManifest(manifestPathFor(datasetPath));
  std::string actual = hashFile(datasetPath);
  if (actual != manifest.contentHash) {
    throw IntegrityError("dataset content hash mismatch for " + datasetPath + " (manifest " +
                         manifest.contentHash + ", actual " + actual + ")");
  }
  return manifest;
}

}  // namespace fuserl::pipeline
