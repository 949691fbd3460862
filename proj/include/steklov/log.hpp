#pragma once

#include <cstdio>
#include <cstdlib>
#include <cstring>

namespace steklov::log {

enum class Level { error = 0, info = 1, debug = 2 };

// Level comes from STEKLOV_TRACE_LOG in {error, info, debug}; default error.
inline Level level() {
  static const Level lvl = [] {
    const char* env = std::getenv("STEKLOV_TRACE_LOG");
    if (env == nullptr) return Level::error;
    if (std::strcmp(env, "debug") == 0) return Level::debug;
    if (std::strcmp(env, "info") == 0) return Level::info;
    return Level::error;
  }();
  return lvl;
}

template <typename... Args>
void error(const char* fmt, Args... args) {
  std::fprintf(stderr, "[steklov:error] ");
  std::fprintf(stderr, fmt, args...);
  std::fprintf(stderr, "\n");
}

template <typename... Args>
void info(const char* fmt, Args... args) {
  if (level() >= Level::info) {
    std::fprintf(stderr, "[steklov:info] ");
    std::fprintf(stderr, fmt, args...);
    std::fprintf(stderr, "\n");
  }
}

template <typename... Args>
void debug(const char* fmt, Args... args) {
  if (level() >= Level::debug) {
    std::fprintf(stderr, "[steklov:debug] ");
    std::fprintf(stderr, fmt, args...);
    std::fprintf(stderr, "\n");
  }
}

}  // namespace steklov::log
