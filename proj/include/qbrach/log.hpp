/*
 * log.hpp - shared logger, level taken from QBRACH_LOG (error, info, debug).
 */
#pragma once

#include <spdlog/spdlog.h>

namespace qbrach {

spdlog::logger &logger();

}  // namespace qbrach
