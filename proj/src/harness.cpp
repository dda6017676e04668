#include "hua/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "hua/config.hpp"
#include "hua/errors.hpp"
#include "suites.hpp"

namespace hua {

namespace {

constexpr std::array<std::string_view, kAllSuites.size()> kNames{
    "reproduce_szego",   "reproduce_bergman",  "law_bergman",       "law_berezin",   "injectivity_probe",
    "normalization",     "mass_bounds",        "boundary_continuity", "pseudometric", "maximal_domination",
    "admissible_limits", "metric_identities",  "divergence",        "annihilation",  "shell_estimate",
    "mean_value",        "fixed_point",        "psh",
};

}  // namespace

std::string_view suite_name(SuiteId id) { return kNames.at(static_cast<std::size_t>(id)); }

std::optional<SuiteId> parse_suite(std::string_view name) {
  for (SuiteId id : kAllSuites)
    if (suite_name(id) == name) return id;
  return std::nullopt;
}

std::uint64_t suite_seed(std::uint64_t seed, SuiteId id) {
  const std::string digest = fnv1a_hex(suite_name(id));
  return seed ^ std::stoull(digest, nullptr, 16);
}

Report run_suite(SuiteId id, const Config& config) {
  config.validate();
  const auto fn = detail::suite_function(id);
  Report report;
  report.suite = std::string(suite_name(id));
  report.seed = config.seed();
  report.config_echo = config.echo(report.suite);
  const auto start = std::chrono::steady_clock::now();
  Recorder rec(report);
  try {
    fn(rec, detail::SuiteContext{config, report.suite, suite_seed(config.seed(), id)});
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    report.error = e.what();
  }
  report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  report.pass = report.error.empty() && !report.checks.empty() &&
                std::all_of(report.checks.begin(), report.checks.end(),
                            [](const CheckRecord& c) { return c.observation || c.pass; });
  if (report.checks.empty() && report.error.empty()) report.error = "suite recorded no checks";
  return report;
}

RunSummary run_all(const Config& config, std::span<const SuiteId> selection, int jobs) {
  config.validate();
  std::vector<SuiteId> ids(selection.begin(), selection.end());
  if (ids.empty()) ids.assign(kAllSuites.begin(), kAllSuites.end());
  for (SuiteId id : ids) (void)detail::suite_function(id);
  if (jobs <= 0) jobs = config.jobs();
  jobs = std::clamp(jobs, 1, static_cast<int>(ids.size()));

  RunSummary summary;
  summary.reports.resize(ids.size());
  const auto start = std::chrono::steady_clock::now();
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= ids.size()) return;
      try {
        summary.reports[i] = run_suite(ids[i], config);
      } catch (...) {
        std::lock_guard lock(failure_mu);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
  summary.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  for (const auto& r : summary.reports) (r.pass ? summary.passed : summary.failed)++;
  return summary;
}

std::string summary_json(const RunSummary& s, const Config& config, bool timings) {
  nlohmann::json j;
  j["schema_version"] = kReportSchemaVersion;
  j["seed"] = config.seed();
  j["suites_run"] = s.reports.size();
  j["passed"] = s.passed;
  j["failed"] = s.failed;
  j["all_pass"] = s.all_pass();
  if (timings) j["wall_seconds"] = s.wall_seconds;
  auto& reports = j["reports"] = nlohmann::json::array();
  for (const auto& r : s.reports) reports.push_back(report_to_json(r, timings));
  return j.dump(2) + "\n";
}

std::string summary_csv(const RunSummary& s) {
  std::string out = csv_header();
  for (const auto& r : s.reports) out += report_to_csv_rows(r);
  return out;
}

}  // namespace hua
