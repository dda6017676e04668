#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "hua/quadrature_spec.hpp"

namespace hua {

/// The compiled-in default configuration (config/default_config.json).
std::string_view default_config_json();

/// Run configuration: seed, job bound, quadrature rules, per-suite tolerances.
///
/// A suite may override any global quadrature rule under
/// suites.<name>.quadrature.<rule>; the override is merged key by key.
class Config {
 public:
  static Config defaults();
  /// Defaults merged with the JSON file at `path`.
  static Config from_file(const std::string& path);

  /// RFC 7386 merge of `patch` onto the current data, then validate().
  void merge(const nlohmann::json& patch);
  /// Throws ConfigError for non-positive tolerances, out-of-bounds orders or unknown suites.
  void validate() const;

  std::uint64_t seed() const;
  void set_seed(std::uint64_t seed);
  int jobs() const;

  double tolerance(std::string_view suite, std::string_view key) const;
  double number(std::string_view suite, std::string_view key) const;
  int count(std::string_view suite, std::string_view key) const;
  QuadratureSpec rule(std::string_view suite, std::string_view name) const;
  double fault(std::string_view key) const;

  /// The data block echoed into reports: global quadrature plus the suite's own section.
  nlohmann::json echo(std::string_view suite) const;
  const nlohmann::json& data() const { return data_; }

 private:
  nlohmann::json data_;
};

/// Defaults, then the file named by HUA_CONFIG if set, else `cli_path` if given.
Config resolve_config(const std::optional<std::string>& cli_path);

}  // namespace hua
