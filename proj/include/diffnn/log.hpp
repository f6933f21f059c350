#ifndef DIFFNN_LOG_HPP
#define DIFFNN_LOG_HPP

#include <cstdlib>
#include <iostream>
#include <string>

namespace diffnn {

// Verbosity from the DIFFNN_LOG environment variable:
// unset/"" -> silent, "info"/"1" -> per-step diagnostics,
// "debug"/"2" -> per-neuron detail. Messages go to stderr.
enum class LogLevel { Silent = 0, Info = 1, Debug = 2 };

inline LogLevel log_level() {
  static const LogLevel level = [] {
    const char* env = std::getenv("DIFFNN_LOG");
    if (!env) return LogLevel::Silent;
    std::string v(env);
    if (v == "debug" || v == "2") return LogLevel::Debug;
    if (v == "info" || v == "1") return LogLevel::Info;
    return LogLevel::Silent;
  }();
  return level;
}

inline bool log_enabled(LogLevel level) {
  return static_cast<int>(log_level()) >= static_cast<int>(level);
}

inline void log_line(LogLevel level, const std::string& msg) {
  if (log_enabled(level)) std::cerr << "[diffnn] " << msg << "\n";
}

}  // namespace diffnn

#endif  // DIFFNN_LOG_HPP
