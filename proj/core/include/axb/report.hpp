#pragma once

// Report plumbing shared by the CLI and tests: schema version, JSON
// serialization of estimate reports, and RFC-4180 CSV helpers with
// 17-significant-digit numeric fields.

#include <string>
#include <vector>

#include "axb/estimates.hpp"

namespace axb {

std::string report_schema_version();  // bumped on any schema change
std::string build_git_describe();

// full JSON document: schema version, git describe, config echo, report body
std::string report_to_json(const EstimateReport& rep,
                           const std::string& config_echo);

std::string format_g17(double v);            // shortest 17-significant form
std::string csv_field(const std::string& s);  // RFC-4180 quoting
std::string csv_row(const std::vector<std::string>& fields);

}  // namespace axb
