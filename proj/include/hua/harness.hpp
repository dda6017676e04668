#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hua/report.hpp"

namespace hua {

class Config;

enum class SuiteId {
  reproduce_szego,
  reproduce_bergman,
  law_bergman,
  law_berezin,
  injectivity_probe,
  normalization,
  mass_bounds,
  boundary_continuity,
  pseudometric,
  maximal_domination,
  admissible_limits,
  metric_identities,
  divergence,
  annihilation,
  shell_estimate,
  mean_value,
  fixed_point,
  psh,
};

inline constexpr std::array kAllSuites{
    SuiteId::reproduce_szego,     SuiteId::reproduce_bergman, SuiteId::law_bergman,      SuiteId::law_berezin,
    SuiteId::injectivity_probe,   SuiteId::normalization,     SuiteId::mass_bounds,      SuiteId::boundary_continuity,
    SuiteId::pseudometric,        SuiteId::maximal_domination, SuiteId::admissible_limits, SuiteId::metric_identities,
    SuiteId::divergence,          SuiteId::annihilation,      SuiteId::shell_estimate,   SuiteId::mean_value,
    SuiteId::fixed_point,         SuiteId::psh,
};

std::string_view suite_name(SuiteId id);
std::optional<SuiteId> parse_suite(std::string_view name);

/// Seed used inside a suite: config seed XOR FNV-1a of the suite name.
std::uint64_t suite_seed(std::uint64_t seed, SuiteId id);

/// Runs one suite. Throws ConfigError before any check when the config is invalid;
/// any other exception is recorded in Report::error and fails the suite.
Report run_suite(SuiteId id, const Config& config);

struct RunSummary {
  std::vector<Report> reports;  ///< in the order of the selection
  int passed = 0;
  int failed = 0;
  double wall_seconds = 0.0;
  bool all_pass() const { return failed == 0; }
};

/// Runs the selected suites (all when empty) on up to `jobs` threads (config value when 0).
RunSummary run_all(const Config& config, std::span<const SuiteId> selection = {}, int jobs = 0);

std::string summary_json(const RunSummary& s, const Config& config, bool timings);
std::string summary_csv(const RunSummary& s);

}  // namespace hua
