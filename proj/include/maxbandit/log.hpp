#pragma once

#include <cstdlib>
#include <iostream>
#include <string>

namespace maxbandit {

// Verbosity from MAXBANDIT_LOG: 0 = quiet, 1 = warnings (default), 2 = debug.
inline int log_level() {
  static const int level = [] {
    const char* env = std::getenv("MAXBANDIT_LOG");
    if (!env) return 1;
    try {
      return std::stoi(env);
    } catch (...) {
      return 1;
    }
  }();
  return level;
}

inline void warn(const std::string& msg) {
  if (log_level() >= 1) std::cerr << "[maxbandit] warning: " << msg << "\n";
}

inline void debug(const std::string& msg) {
  if (log_level() >= 2) std::cerr << "[maxbandit] " << msg << "\n";
}

}  // namespace maxbandit
