#pragma once

#include <string>

namespace fuserl {

enum class LogLevel { Debug = 0, Info = 1, Warn = 2, Error = 3 };

/// Level comes from the FUSERL_LOG environment variable (debug|info|warn|error);
/// defaults to info.
LogLevel logLevel();

void logMessage(LogLevel level, const std::string& message);

inline void logDebug(const std::string& m) { logMessage(LogLevel::Debug, m); }
inline void logInfo(const std::string& m) { logMessage(LogLevel::Info, m); }
inline void logWarn(const std::string& m) { logMessage(LogLevel::Warn, m); }
inline void logError(const std::string& m) { logMessage(LogLevel::Error, m); }

}  // namespace fuserl
