#pragma once

#include <string_view>

#include "chow/config.hpp"
#include "chow/report.hpp"

namespace chow {

/// Runs one named suite. Throws ConfigError for an unknown name.
Report run_suite(std::string_view name, const RunConfig& cfg);

/// Runs cfg.suites (every suite when empty), or only `only` when given.
Report run_suites(const RunConfig& cfg, std::string_view only = {});

}  // namespace chow
