#include "dsdsc/log.hpp"

#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <cstring>

namespace dsdsc {

namespace {

LogLevel parse_level(const char* text) {
  if (text == nullptr || *text == '\0') return LogLevel::kWarn;
  if (std::strcmp(text, "error") == 0 || std::strcmp(text, "0") == 0)
    return LogLevel::kError;
  if (std::strcmp(text, "warn") == 0 || std::strcmp(text, "1") == 0)
    return LogLevel::kWarn;
  if (std::strcmp(text, "info") == 0 || std::strcmp(text, "2") == 0)
    return LogLevel::kInfo;
  if (std::strcmp(text, "debug") == 0 || std::strcmp(text, "3") == 0)
    return LogLevel::kDebug;
  return LogLevel::kWarn;
}

const char* level_tag(LogLevel level) {
  switch (level) {
    case LogLevel::kError:
      return "error";
    case LogLevel::kWarn:
      return "warn";
    case LogLevel::kInfo:
      return "info";
    case LogLevel::kDebug:
      return "debug";
  }
  return "?";
}

}  // namespace

LogLevel log_threshold() {
  static const LogLevel level = parse_level(std::getenv("DSDSC_LOG"));
  return level;
}

bool log_enabled(LogLevel level) {
  return static_cast<int>(level) <= static_cast<int>(log_threshold());
}

void log_message(LogLevel level, const char* fmt, ...) {
  if (!log_enabled(level)) return;
  std::fprintf(stderr, "[dsdsc %s] ", level_tag(level));
  std::va_list args;
  va_start(args, fmt);
  std::vfprintf(stderr, fmt, args);
  va_end(args);
  std::fputc('\n', stderr);
}

}  // namespace dsdsc
