#include "fuserl/util/log.hpp"

#include <cstdio>
#include <cstdlib>
#include <cstring>

namespace fuserl {

LogLevel logLevel() {
  static LogLevel level = [] {
    const char* env = std::getenv("FUSERL_LOG");
    if (!env) return LogLevel::Info;
    if (std::strcmp(env, "debug") == 0) return LogLevel::Debug;
    if (std::strcmp(env, "warn") == 0) return LogLevel::Warn;
    if (std::strcmp(env, "error") == 0) return LogLevel::Error;
    return LogLevel::Info;
  }();
  return level;
}

void logMessage(LogLevel level, const std::string& message) {
  if (level < logLevel()) return;
  static const char* names[] = {"debug", "info", "warn", "error"};
  std::fprintf(stderr, "[fuserl %s] %s\n", names[static_cast<int>(level)], message.c_str());
}

}  // namespace fuserl
