#ifndef DSDSC_LOG_HPP
#define DSDSC_LOG_HPP

namespace dsdsc {

enum class LogLevel { kError = 0, kWarn = 1, kInfo = 2, kDebug = 3 };

/// Threshold parsed once from the DSDSC_LOG environment variable
/// ("error"|"warn"|"info"|"debug" or 0..3); default is warn.
LogLevel log_threshold();

bool log_enabled(LogLevel level);

/// printf-style logging to stderr, filtered by log_threshold().
void log_message(LogLevel level, const char* fmt, ...)
#if defined(__GNUC__)
    __attribute__((format(printf, 2, 3)))
#endif
    ;

}  // namespace dsdsc

#endif  // DSDSC_LOG_HPP
