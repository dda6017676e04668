#include "hua/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace hua {

std::string fnv1a_hex(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

Recorder::Recorder(Report& report) : report_(report), mark_(std::chrono::steady_clock::now()) {}

CheckRecord& Recorder::push(std::string name, std::string inputs) {
  const auto now = std::chrono::steady_clock::now();
  CheckRecord rec;
  rec.name = std::move(name);
  rec.digest = fnv1a_hex(inputs);
  rec.inputs = std::move(inputs);
  rec.wall_seconds = std::chrono::duration<double>(now - mark_).count();
  mark_ = now;
  report_.checks.push_back(std::move(rec));
  return report_.checks.back();
}

bool Recorder::check(std::string name, std::string inputs, double residual, double tolerance, std::string note) {
  auto& rec = push(std::move(name), std::move(inputs));
  rec.residual = residual;
  rec.tolerance = tolerance;
  rec.pass = residual <= tolerance;  // false for NaN
  rec.note = std::move(note);
  return rec.pass;
}

bool Recorder::check_min(std::string name, std::string inputs, double value, double bound, std::string note) {
  auto& rec = push(std::move(name), std::move(inputs));
  rec.residual = value;
  rec.tolerance = bound;
  rec.lower_bound = true;
  rec.pass = value >= bound;
  rec.note = std::move(note);
  return rec.pass;
}

bool Recorder::require(std::string name, std::string inputs, bool condition, std::string note) {
  auto& rec = push(std::move(name), std::move(inputs));
  rec.residual = condition ? 0.0 : 1.0;
  rec.tolerance = 0.0;
  rec.pass = condition;
  rec.note = std::move(note);
  return condition;
}

void Recorder::observe(std::string name, std::string inputs, double value, std::string note) {
  auto& rec = push(std::move(name), std::move(inputs));
  rec.residual = value;
  rec.observation = true;
  rec.note = std::move(note);
}

namespace {

nlohmann::json number_or_string(double v) {
  if (std::isfinite(v)) return v;
  return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

nlohmann::json report_to_json(const Report& r, bool timings) {
  nlohmann::json j;
  j["schema_version"] = kReportSchemaVersion;
  j["suite"] = r.suite;
  j["pass"] = r.pass;
  j["seed"] = r.seed;
  j["config"] = r.config_echo;
  if (!r.error.empty()) j["error"] = r.error;
  auto& checks = j["checks"] = nlohmann::json::array();
  for (const auto& c : r.checks) {
    nlohmann::json row;
    row["name"] = c.name;
    row["inputs"] = c.inputs;
    row["digest"] = c.digest;
    row["residual"] = number_or_string(c.residual);
    if (c.observation) {
      row["observation"] = true;
    } else {
      row["tolerance"] = number_or_string(c.tolerance);
      if (c.lower_bound) row["bound"] = "lower";
      row["pass"] = c.pass;
    }
    if (!c.note.empty()) row["note"] = c.note;
    if (timings) row["wall_seconds"] = c.wall_seconds;
    checks.push_back(std::move(row));
  }
  if (timings) j["wall_seconds"] = r.wall_seconds;
  return j;
}

std::string csv_header() { return "suite,check,inputs,residual,tolerance,verdict\n"; }

std::string report_to_csv_rows(const Report& r) {
  std::string out;
  for (const auto& c : r.checks) {
    out += csv_escape(r.suite) + ',' + csv_escape(c.name) + ',' + csv_escape(c.inputs) + ',' + fmt(c.residual) + ',';
    out += c.observation ? std::string() : fmt(c.tolerance);
    out += ',';
    out += c.observation ? "observation" : (c.pass ? "pass" : "fail");
    out += '\n';
  }
  if (!r.error.empty()) out += csv_escape(r.suite) + ",error," + csv_escape(r.error) + ",,,fail\n";
  return out;
}

}  // namespace hua
