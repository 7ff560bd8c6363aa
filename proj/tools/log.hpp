#pragma once

#include <cstdlib>
#include <iostream>
#include <string>

namespace lpt::app {

enum class LogLevel : int { Debug = 0, Info = 1, Warn = 2, Error = 3 };

/// Log threshold from the LPT_LOG environment variable
/// (debug|info|warn|error); warn when unset or unrecognized.
inline LogLevel log_level() {
  static const LogLevel level = [] {
    const char* raw = std::getenv("LPT_LOG");
    if (raw == nullptr) return LogLevel::Warn;
    const std::string value(raw);
    if (value == "debug") return LogLevel::Debug;
    if (value == "info") return LogLevel::Info;
    if (value == "error") return LogLevel::Error;
    return LogLevel::Warn;
  }();
  return level;
}

inline void log_at(LogLevel level, const char* tag, const std::string& message) {
  if (static_cast<int>(level) >= static_cast<int>(log_level())) {
    std::cerr << "[" << tag << "] " << message << "\n";
  }
}

inline void log_debug(const std::string& message) { log_at(LogLevel::Debug, "debug", message); }
inline void log_info(const std::string& message) { log_at(LogLevel::Info, "info", message); }
inline void log_warn(const std::string& message) { log_at(LogLevel::Warn, "warn", message); }

}  // namespace lpt::app
