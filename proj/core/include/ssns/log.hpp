#pragma once

// Minimal stderr logger. Level is taken from the SELFSIM_NS_LOG environment
// variable: off | error | warn | info | debug (default: warn).

#include <sstream>
#include <string>

namespace ssns {

enum class LogLevel { off = 0, error = 1, warn = 2, info = 3, debug = 4 };

LogLevel log_level();

void log_message(LogLevel level, const std::string& msg);

template <class... Args>
void log(LogLevel level, const char* component, Args&&... args) {
  if (static_cast<int>(level) > static_cast<int>(log_level())) return;
  std::ostringstream os;
  os << component << ": ";
  (os << ... << args);
  log_message(level, os.str());
}

}  // namespace ssns
