#pragma once

#include <cstdlib>
#include <iostream>
#include <string>

// Stderr tracing gated by the PQPIERCE_LOG environment variable: unset or 0
// is silent, 1 logs milestones, 2 and above logs per-step detail.

namespace pqpierce::log {

inline int level() {
  static const int lvl = [] {
    const char* env = std::getenv("PQPIERCE_LOG");
    if (!env || !*env) return 0;
    return std::atoi(env);
  }();
  return lvl;
}

inline void trace(int lvl, const std::string& msg) {
  if (level() >= lvl) std::cerr << "[pqpierce] " << msg << "\n";
}

}  // namespace pqpierce::log
