#pragma once

#include <sstream>
#include <string>

namespace eot::log {

enum class Level { error = 0, info = 1, debug = 2 };

// Active level comes from the EOT_LOG environment variable
// ("error" | "info" | "debug"); unset or unrecognised means "error".
Level active_level();

void write(Level lvl, const std::string& msg);

template <typename... Args>
void emit(Level lvl, const Args&... args) {
  if (static_cast<int>(lvl) > static_cast<int>(active_level())) return;
  std::ostringstream os;
  (os << ... << args);
  write(lvl, os.str());
}

template <typename... Args>
void error(const Args&... args) {
  emit(Level::error, args...);
}
template <typename... Args>
void info(const Args&... args) {
  emit(Level::info, args...);
}
template <typename... Args>
void debug(const Args&... args) {
  emit(Level::debug, args...);
}

}  // namespace eot::log
