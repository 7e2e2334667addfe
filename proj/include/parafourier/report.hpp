#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "parafourier/finite_field.hpp"
#include "parafourier/function_space.hpp"

namespace parafourier {

using Json = nlohmann::ordered_json;

inline constexpr const char* kReportSchemaVersion = "1.0";

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string details;
};

/// Outcome of one suite on one field.
struct SuiteReport {
  std::string suite;
  FieldSpec field = FieldSpec::prime_field(2);
  Json parameters = Json::object();
  std::vector<CheckResult> checks;
  std::int64_t wall_time_ms = 0;

  bool pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
  std::size_t failures() const {
    std::size_t n = 0;
    for (const auto& c : checks) n += c.pass ? 0 : 1;
    return n;
  }
};

inline Json field_to_json(const FieldSpec& f) {
  Json j = {{"p", f.p()}, {"m", f.m()}, {"q", f.q()}};
  if (f.m() > 1) j["modulus"] = f.modulus();
  return j;
}

inline FieldSpec field_from_json(const Json& j) {
  const int p = j.at("p").get<int>(), m = j.at("m").get<int>();
  if (m == 1) return FieldSpec::prime_field(p);
  return FieldSpec(p, m, j.at("modulus").get<std::vector<int>>());
}

inline Json to_json(const SuiteReport& r) {
  Json checks = Json::array();
  for (const auto& c : r.checks)
    checks.push_back({{"name", c.name}, {"status", c.pass ? "pass" : "fail"}, {"details", c.details}});
  return {{"schema_version", kReportSchemaVersion},
          {"suite", r.suite},
          {"field", field_to_json(r.field)},
          {"parameters", r.parameters},
          {"checks", checks},
          {"status", r.pass() ? "pass" : "fail"},
          {"wall_time_ms", r.wall_time_ms}};
}

inline SuiteReport suite_report_from_json(const Json& j) {
  if (j.at("schema_version").get<std::string>() != kReportSchemaVersion)
    throw std::invalid_argument("unsupported report schema version");
  SuiteReport r;
  r.suite = j.at("suite").get<std::string>();
  r.field = field_from_json(j.at("field"));
  r.parameters = j.at("parameters");
  for (const auto& c : j.at("checks")) {
    const std::string status = c.at("status").get<std::string>();
    if (status != "pass" && status != "fail") throw std::invalid_argument("check status must be pass or fail");
    r.checks.push_back({c.at("name").get<std::string>(), status == "pass", c.at("details").get<std::string>()});
  }
  r.wall_time_ms = j.at("wall_time_ms").get<std::int64_t>();
  if ((j.at("status").get<std::string>() == "pass") != r.pass()) throw std::invalid_argument("overall status disagrees with checks");
  return r;
}

/// Several suite reports in one document.
inline Json aggregate_to_json(const std::vector<SuiteReport>& reports) {
  Json list = Json::array();
  bool ok = true;
  for (const auto& r : reports) {
    list.push_back(to_json(r));
    ok = ok && r.pass();
  }
  return {{"schema_version", kReportSchemaVersion}, {"reports", list}, {"status", ok ? "pass" : "fail"}};
}

/// Values keyed by point index, each an array of rational coefficient strings
/// in the power basis of Q(zeta_p). Zero values are omitted.
inline Json function_to_json(const FunctionOnSet& f) {
  Json values = Json::object();
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f[i].is_zero()) continue;
    Json coeffs = Json::array();
    for (const auto& c : f[i].coefficients()) coeffs.push_back(c.to_string());
    values[std::to_string(i)] = coeffs;
  }
  return {{"set", f.set()->description()}, {"prime", f.prime()}, {"size", f.size()}, {"values", values}};
}

inline FunctionOnSet function_from_json(const Json& j, const SetPtr& set) {
  if (j.at("size").get<std::size_t>() != set->size() || j.at("set").get<std::string>() != set->description())
    throw std::invalid_argument("serialized function belongs to a different set");
  const int p = set->field()->p();
  std::vector<CyclotomicNumber> values(set->size(), CyclotomicNumber::zero(p));
  for (const auto& [key, coeffs] : j.at("values").items()) {
    std::vector<BigRational> c;
    for (const auto& s : coeffs) c.push_back(BigRational::parse(s.get<std::string>()));
    values.at(std::stoul(key)) = CyclotomicNumber(p, std::move(c));
  }
  return FunctionOnSet(set, std::move(values));
}

}  // namespace parafourier
