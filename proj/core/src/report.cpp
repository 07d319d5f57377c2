#include "axb/report.hpp"

#include <cstdio>

#include "json.hpp"

namespace axb {

std::string report_schema_version() { return "1.0.0"; }

std::string build_git_describe() {
#ifdef AXB_GIT_DESCRIBE
  return AXB_GIT_DESCRIBE;
#else
  return "unknown";
#endif
}

std::string report_to_json(const EstimateReport& rep,
                           const std::string& config_echo) {
  nlohmann::json j;
  j["schema_version"] = report_schema_version();
  j["git_describe"] = build_git_describe();
  j["config"] = config_echo;
  j["task"] = rep.task;
  j["grid"] = rep.grid;
  j["fitted_constant"] = rep.fitted_constant;
  j["refined_constant"] = rep.refined_constant;
  j["growth_exponent_fit"] = rep.growth_exponent_fit;
  j["exponent_band"] = rep.exponent_band;
  j["predicted_exponent"] = rep.predicted_exponent;
  j["pass"] = rep.pass;
  j["runtime_seconds"] = rep.runtime_seconds;
  nlohmann::json det = nlohmann::json::object();
  for (const auto& [k, v] : rep.details) det[k] = v;
  j["details"] = det;
  return j.dump(2);
}

std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += "\"";
  return out;
}

std::string csv_row(const std::vector<std::string>& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out += ",";
    out += csv_field(fields[i]);
  }
  out += "\r\n";
  return out;
}

}  // namespace axb
