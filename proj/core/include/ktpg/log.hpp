#pragma once

#include <cstdio>
#include <cstdlib>
#include <cstring>

namespace ktpg::log {

enum class Level { Debug = 0, Info = 1, Warn = 2, Error = 3, Off = 4 };

// Level comes from the KTPG_LOG environment variable (debug|info|warn|error|off);
// default warn.
inline Level threshold() {
    static const Level level = [] {
        const char* env = std::getenv("KTPG_LOG");
        if (env == nullptr) return Level::Warn;
        if (std::strcmp(env, "debug") == 0) return Level::Debug;
        if (std::strcmp(env, "info") == 0) return Level::Info;
        if (std::strcmp(env, "warn") == 0) return Level::Warn;
        if (std::strcmp(env, "error") == 0) return Level::Error;
        return Level::Off;
    }();
    return level;
}

template <typename... Args>
void emit(Level level, const char* tag, const char* fmt, Args... args) {
    if (level < threshold()) return;
    std::fprintf(stderr, "[%s] ", tag);
    std::fprintf(stderr, fmt, args...);
    std::fprintf(stderr, "\n");
}

template <typename... Args>
void debug(const char* fmt, Args... args) {
    emit(Level::Debug, "debug", fmt, args...);
}
template <typename... Args>
void info(const char* fmt, Args... args) {
    emit(Level::Info, "info", fmt, args...);
}
template <typename... Args>
void warn(const char* fmt, Args... args) {
    emit(Level::Warn, "warn", fmt, args...);
}
template <typename... Args>
void error(const char* fmt, Args... args) {
    emit(Level::Error, "error", fmt, args...);
}

}  // namespace ktpg::log
