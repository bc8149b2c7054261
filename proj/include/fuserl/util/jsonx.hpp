#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "fuserl/util/errors.hpp"

namespace fuserl {

using Json = nlohmann::json;

/// Strict reader over a JSON object. Every field access is recorded; unknown
/// keys are rejected at finish() with the full key path, so config drift
/// fails loudly instead of being silently ignored.
class JsonReader {
 public:
  JsonReader(const Json& node, std::string path);

  bool has(const std::string& key) const;

  double number(const std::string& key) const;
  double number(const std::string& key, double fallback) const;
  std::int64_t integer(const std::string& key) const;
  std::int64_t integer(const std::string& key, std::int64_t fallback) const;
  std::uint64_t unsignedInteger(const std::string& key, std::uint64_t fallback) const;
  bool boolean(const std::string& key, bool fallback) const;
  std::string text(const std::string& key) const;
  std::string text(const std::string& key, const std::string& fallback) const;
  std::vector<double> numberArray(const std::string& key) const;
  std::vector<double> numberArray(const std::string& key, std::vector<double> fallback) const;
  std::vector<int> intArray(const std::string& key, std::vector<int> fallback) const;
  std::vector<std::vector<int>> intArray2(const std::string& key,
                                          std::vector<std::vector<int>> fallback) const;

  /// Child object reader (missing key yields an empty object).
  JsonReader object(const std::string& key) const;

  const Json& raw(const std::string& key) const;
  const Json& node() const { return node_; }
  std::string pathOf(const std::string& key) const;

  /// Throws ConfigError naming the first unknown key.
  void finish() const;

  [[noreturn]] void fail(const std::string& key, const std::string& message) const;

 private:
  const Json& node_;
  Json empty_;
  std::string path_;
  mutable std::set<std::string> seen_;
};

Json parseJsonText(const std::string& text, const std::string& what);
Json readJsonFile(const std::string& path);
void writeJsonFile(const std::string& path, const Json& value, int indent = 2);

}  // namespace fuserl
