#pragma once

#include <chrono>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace hua {

inline constexpr int kReportSchemaVersion = 1;

struct CheckRecord {
  std::string name;
  std::string inputs;  ///< human-readable description of the inputs
  std::string digest;  ///< FNV-1a 64 of `inputs`
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = true;
  bool observation = false;  ///< recorded value without a pass/fail verdict
  bool lower_bound = false;  ///< passes iff residual ≥ tolerance
  std::string note;
  double wall_seconds = 0.0;
};

struct Report {
  std::string suite;
  std::uint64_t seed = 0;
  nlohmann::json config_echo;
  std::vector<CheckRecord> checks;
  bool pass = false;
  std::string error;  ///< set when a check threw; the suite then fails
  double wall_seconds = 0.0;
};

std::string fnv1a_hex(std::string_view text);

/// Appends checks to a Report, timing each since the previous record.
class Recorder {
 public:
  explicit Recorder(Report& report);

  /// Passes iff residual ≤ tolerance (NaN fails).
  bool check(std::string name, std::string inputs, double residual, double tolerance, std::string note = {});
  /// Passes iff value ≥ bound (NaN fails).
  bool check_min(std::string name, std::string inputs, double value, double bound, std::string note = {});
  /// Passes iff the condition holds; residual 0/1.
  bool require(std::string name, std::string inputs, bool condition, std::string note = {});
  void observe(std::string name, std::string inputs, double value, std::string note = {});

  Report& report() { return report_; }

 private:
  CheckRecord& push(std::string name, std::string inputs);

  Report& report_;
  std::chrono::steady_clock::time_point mark_;
};

/// Timings are emitted only when `timings` is set, so default output is byte-stable.
nlohmann::json report_to_json(const Report& r, bool timings);
std::string csv_header();
std::string report_to_csv_rows(const Report& r);

}  // namespace hua
