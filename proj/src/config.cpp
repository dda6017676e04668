#include "hua/config.hpp"

#include <cstdlib>
#include <fstream>

#include "hua/errors.hpp"
#include "hua/harness.hpp"

namespace hua {

using nlohmann::json;

namespace {

const json& suite_section(const json& data, std::string_view suite) {
  const auto& suites = data.at("suites");
  auto it = suites.find(std::string(suite));
  if (it == suites.end()) throw ConfigError("config: no section for suite '" + std::string(suite) + "'");
  return *it;
}

QuadratureSpec spec_from_json(const json& j) {
  QuadratureSpec q;
  if (j.contains("samples")) {
    q = QuadratureSpec::monte_carlo(j.at("samples").get<std::size_t>(), 0);
    return q;
  }
  q.radial_order = j.value("radial_order", q.radial_order);
  q.slice_order = j.value("slice_order", q.slice_order);
  if (j.contains("angular_points")) q.angular_points = j.at("angular_points").get<std::vector<int>>();
  return q;
}

}  // namespace

Config Config::defaults() {
  Config c;
  try {
    c.data_ = json::parse(default_config_json());
  } catch (const json::exception& e) {
    throw ConfigError(std::string("built-in config is not valid JSON: ") + e.what());
  }
  c.validate();
  return c;
}

Config Config::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  json patch;
  try {
    patch = json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError("config file '" + path + "': " + e.what());
  }
  Config c = defaults();
  c.merge(patch);
  return c;
}

void Config::merge(const json& patch) {
  if (!patch.is_object()) throw ConfigError("config patch must be a JSON object");
  data_.merge_patch(patch);
  validate();
}

void Config::validate() const {
  try {
    if (data_.at("schema_version").get<int>() != 1) throw ConfigError("unsupported config schema_version");
    (void)data_.at("seed").get<std::uint64_t>();
    if (data_.at("jobs").get<int>() < 1) throw ConfigError("jobs must be at least 1");

    for (const auto& [name, rule] : data_.at("quadrature").items()) {
      const QuadratureSpec q = spec_from_json(rule);
      if (q.kind == RuleKind::monte_carlo) {
        q.validate(3);
      } else if (name == "zonal") {
        if (q.radial_order < 2) throw ConfigError("quadrature.zonal.radial_order must be at least 2");
      } else {
        q.validate(name.rfind("disc", 0) == 0 ? 1 : 2);
      }
    }

    for (const auto& [name, section] : data_.at("suites").items()) {
      if (!parse_suite(name)) throw ConfigError("config names unknown suite '" + name + "'");
      for (const auto& [key, value] : section.at("tolerance").items())
        if (!value.is_number() || !(value.get<double>() > 0.0))
          throw ConfigError("tolerance " + name + "." + key + " must be a positive number");
      if (section.contains("quadrature"))
        for (const auto& [rname, patch] : section.at("quadrature").items()) (void)rule(name, rname);
    }
    for (SuiteId id : kAllSuites)
      if (!data_.at("suites").contains(std::string(suite_name(id))))
        throw ConfigError("config lacks a section for suite '" + std::string(suite_name(id)) + "'");

    if (!(fault("metric_prefactor_scale") > 0.0)) throw ConfigError("metric_prefactor_scale must be positive");
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
}

std::uint64_t Config::seed() const { return data_.at("seed").get<std::uint64_t>(); }

void Config::set_seed(std::uint64_t seed) { data_["seed"] = seed; }

int Config::jobs() const { return data_.at("jobs").get<int>(); }

double Config::tolerance(std::string_view suite, std::string_view key) const {
  const auto& tol = suite_section(data_, suite).at("tolerance");
  auto it = tol.find(std::string(key));
  if (it == tol.end())
    throw ConfigError("config: no tolerance '" + std::string(key) + "' for suite '" + std::string(suite) + "'");
  return it->get<double>();
}

double Config::number(std::string_view suite, std::string_view key) const {
  const auto& s = suite_section(data_, suite);
  auto it = s.find(std::string(key));
  if (it == s.end() || !it->is_number())
    throw ConfigError("config: no numeric '" + std::string(key) + "' for suite '" + std::string(suite) + "'");
  return it->get<double>();
}

int Config::count(std::string_view suite, std::string_view key) const {
  const double v = number(suite, key);
  if (!(v >= 1.0) || v != static_cast<double>(static_cast<long long>(v)))
    throw ConfigError("config: '" + std::string(key) + "' for suite '" + std::string(suite) + "' must be a positive integer");
  return static_cast<int>(v);
}

QuadratureSpec Config::rule(std::string_view suite, std::string_view name) const {
  const std::string key(name);
  const auto& global = data_.at("quadrature");
  auto it = global.find(key);
  if (it == global.end()) throw ConfigError("config: no quadrature rule '" + key + "'");
  json merged = *it;
  const auto& s = data_.at("suites");
  auto sit = s.find(std::string(suite));
  if (sit != s.end() && sit->contains("quadrature") && sit->at("quadrature").contains(key))
    merged.merge_patch(sit->at("quadrature").at(key));
  QuadratureSpec q = spec_from_json(merged);
  if (q.kind == RuleKind::monte_carlo) q.validate(3);
  else if (key != "zonal") q.validate(key.rfind("disc", 0) == 0 ? 1 : 2);
  return q;
}

double Config::fault(std::string_view key) const {
  const auto& f = data_.at("fault_injection");
  auto it = f.find(std::string(key));
  if (it == f.end()) throw ConfigError("config: no fault knob '" + std::string(key) + "'");
  return it->get<double>();
}

json Config::echo(std::string_view suite) const {
  json out;
  out["quadrature"] = data_.at("quadrature");
  out["suite"] = suite_section(data_, suite);
  out["fault_injection"] = data_.at("fault_injection");
  return out;
}

Config resolve_config(const std::optional<std::string>& cli_path) {
  if (const char* env = std::getenv("HUA_CONFIG"); env != nullptr && *env != '\0') return Config::from_file(env);
  if (cli_path) return Config::from_file(*cli_path);
  return Config::defaults();
}

}  // namespace hua
