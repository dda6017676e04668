#pragma once

#include <cstdint>
#include <string_view>

#include "hua/config.hpp"
#include "hua/harness.hpp"
#include "hua/report.hpp"

namespace hua::detail {

struct SuiteContext {
  const Config& config;
  std::string_view name;
  std::uint64_t seed;
};

using SuiteFn = void (*)(Recorder&, const SuiteContext&);

/// The registered body of a suite. The table is checked on first use: every
/// SuiteId must have exactly one entry, otherwise std::logic_error is thrown.
SuiteFn suite_function(SuiteId id);

}  // namespace hua::detail
