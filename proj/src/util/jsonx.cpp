#include "fuserl/util/jsonx.hpp"

#include "fuserl/util/hash.hpp"

namespace fuserl {

JsonReader::JsonReader(const Json& node, std::string path)
    : node_(node), empty_(Json::object()), path_(std::move(path)) {
  if (!node_.is_object()) throw ConfigError(path_, "expected a JSON object");
}

std::string JsonReader::pathOf(const std::string& key) const {
  return path_.empty() ? key : path_ + "." + key;
}

bool JsonReader::has(const std::string& key) const { return node_.contains(key); }

void JsonReader::fail(const std::string& key, const std::string& message) const {
  throw ConfigError(pathOf(key), message);
}

const Json& JsonReader::raw(const std::string& key) const {
  seen_.insert(key);
  if (!node_.contains(key)) fail(key, "missing required field");
  return node_.at(key);
}

double JsonReader::number(const std::string& key) const {
  const Json& v = raw(key);
  if (!v.is_number()) fail(key, "expected a number");
  return v.get<double>();
}

double JsonReader::number(const std::string& key, double fallback) const {
  seen_.insert(key);
  if (!node_.contains(key)) return fallback;
  return number(key);
}

std::int64_t JsonReader::integer(const std::string& key) const {
  const Json& v = raw(key);
  if (!v.is_number_integer()) fail(key, "expected an integer");
  return v.get<std::int64_t>();
}

std::int64_t JsonReader::integer(const std::string& key, std::int64_t fallback) const {
  seen_.insert(key);
  if (!node_.contains(key)) return fallback;
  return integer(key);
}

std::uint64_t JsonReader::unsignedInteger(const std::string& key, std::uint64_t fallback) const {
  seen_.insert(key);
  if (!node_.contains(key)) return fallback;
  const Json& v = raw(key);
  if (!v.is_number_integer() && !v.is_number_unsigned()) fail(key, "expected an integer");
  if (v.is_number_integer() && v.get<std::int64_t>() < 0) fail(key, "expected a nonnegative integer");
  return v.get<std::uint64_t>();
}

bool JsonReader::boolean(const std::string& key, bool fallback) const {
  seen_.insert(key);
  if (!node_.contains(key)) return fallback;
  const Json& v = node_.at(key);
  if (!v.is_boolean()) fail(key, "expected a boolean");
  return v.get<bool>();
}

std::string JsonReader::text(const std::string& key) const {
  const Json& v = raw(key);
  if (!v.is_string()) fail(key, "expected a string");
  return v.get<std::string>();
}

std::string JsonReader::text(const std::string& key, const std::string& fallback) const {
  seen_.insert(key);
  if (!node_.contains(key)) return fallback;
  return text(key);
}

std::vector<double> JsonReader::numberArray(const std::string& key) const {
  const Json& v = raw(key);
  if (!v.is_array()) fail(key, "expected an array of numbers");
  std::vector<double> out;
  out.reserve(v.size());
  for (const auto& x : v) {
    if (!x.is_number()) fail(key, "expected an array of numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

std::vector<double> JsonReader::numberArray(const std::string& key,
                                            std::vector<double> fallback) const {
  seen_.insert(key);
  if (!node_.contains(key)) return fallback;
  return numberArray(key);
}

std::vector<int> JsonReader::intArray(const std::string& key, std::vector<int> fallback) const {
  seen_.insert(key);
  if (!node_.contains(key)) return fallback;
  const Json& v = raw(key);
  if (!v.is_array()) fail(key, "expected an array of integers");
  std::vector<int> out;
  for (const auto& x : v) {
    if (!x.is_number_integer()) fail(key, "expected an array of integers");
    out.push_back(x.get<int>());
  }
  return out;
}

std::vector<std::vector<int>> JsonReader::intArray2(const std::string& key,
                                                    std::vector<std::vector<int>> fallback) const {
  seen_.insert(key);
  if (!node_.contains(key)) return fallback;
  const Json& v = raw(key);
  if (!v.is_array()) fail(key, "expected an array of integer arrays");
  std::vector<std::vector<int>> out;
  for (const auto& row : v) {
    if (!row.is_array()) fail(key, "expected an array of integer arrays");
    std::vector<int> r;
    for (const auto& x : row) {
      if (!x.is_number_integer()) fail(key, "expected an array of integer arrays");
      r.push_back(x.get<int>());
    }
    out.push_back(std::move(r));
  }
  return out;
}

JsonReader JsonReader::object(const std::string& key) const {
  seen_.insert(key);
  if (!node_.contains(key)) return JsonReader(empty_, pathOf(key));
  const Json& v = node_.at(key);
  if (!v.is_object()) fail(key, "expected a JSON object");
  return JsonReader(v, pathOf(key));
}

void JsonReader::finish() const {
  for (auto it = node_.begin(); it != node_.end(); ++it) {
    if (!seen_.count(it.key())) {
      throw ConfigError(pathOf(it.key()), "unknown configuration key");
    }
  }
}

Json parseJsonText(const std::string& text, const std::string& what) {
  Json parsed = Json::parse(text, nullptr, false);
  if (parsed.is_discarded()) throw ConfigError(what, "invalid JSON");
  return parsed;
}

Json readJsonFile(const std::string& path) {
  return parseJsonText(readFileBytes(path), path);
}

void writeJsonFile(const std::string& path, const Json& value, int indent) {
  writeFileBytes(path, value.dump(indent) + "\n");
}

}  // namespace fuserl
