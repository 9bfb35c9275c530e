#include "ssns/log.hpp"

#include <cstdio>
#include <cstdlib>
#include <cstring>

namespace ssns {

LogLevel log_level() {
  static LogLevel level = [] {
    const char* env = std::getenv("SELFSIM_NS_LOG");
    if (!env) return LogLevel::warn;
    if (!std::strcmp(env, "off")) return LogLevel::off;
    if (!std::strcmp(env, "error")) return LogLevel::error;
    if (!std::strcmp(env, "warn")) return LogLevel::warn;
    if (!std::strcmp(env, "info")) return LogLevel::info;
    if (!std::strcmp(env, "debug")) return LogLevel::debug;
    return LogLevel::warn;
  }();
  return level;
}

void log_message(LogLevel level, const std::string& msg) {
  const char* tag = "";
  switch (level) {
    case LogLevel::error: tag = "error"; break;
    case LogLevel::warn: tag = "warn"; break;
    case LogLevel::info: tag = "info"; break;
    case LogLevel::debug: tag = "debug"; break;
    default: return;
  }
  std::fprintf(stderr, "[selfsim-ns %s] %s\n", tag, msg.c_str());
}

}  // namespace ssns
