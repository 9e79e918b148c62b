/*
 * log.cpp
 */
#include "qbrach/log.hpp"

#include <cstdlib>
#include <string>

#include <spdlog/sinks/stdout_color_sinks.h>

namespace qbrach {

spdlog::logger &logger() {
  static std::shared_ptr<spdlog::logger> lg = [] {
    auto l = spdlog::stderr_color_mt("qbrach");
    l->set_pattern("[%l] %v");
    const char *env = std::getenv("QBRACH_LOG");
    const std::string level = env ? env : "";
    if (level == "debug")
      l->set_level(spdlog::level::debug);
    else if (level == "info")
      l->set_level(spdlog::level::info);
    else if (level == "error")
      l->set_level(spdlog::level::err);
    else {
      l->set_level(spdlog::level::warn);
      if (!level.empty()) l->warn("unknown QBRACH_LOG value '{}', using warn", level);
    }
    return l;
  }();
  return *lg;
}

}  // namespace qbrach
