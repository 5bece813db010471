#include "eot/log.hpp"

#include <cstdlib>
#include <iostream>

namespace eot::log {

Level active_level() {
  static const Level lvl = [] {
    const char* env = std::getenv("EOT_LOG");
    if (env == nullptr) return Level::error;
    const std::string s(env);
    if (s == "debug") return Level::debug;
    if (s == "info") return Level::info;
    return Level::error;
  }();
  return lvl;
}

void write(Level lvl, const std::string& msg) {
  const char* tag = lvl == Level::error ? "error" : (lvl == Level::info ? "info" : "debug");
  std::cerr << "[eot:" << tag << "] " << msg << "\n";
}

}  // namespace eot::log
