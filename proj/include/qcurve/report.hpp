// Serializable result document shared by every CLI subcommand.
#pragma once

#include <json.hpp>

#include <map>
#include <string>
#include <vector>

namespace qcurve {

struct ReportSection {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<nlohmann::json>> rows;  // each row has columns.size() cells
  std::map<std::string, double> tolerances;       // column (or check) -> tolerance applied
  bool operator==(const ReportSection&) const = default;
};

struct VerdictSummary {
  int pass = 0;
  int fail = 0;
  bool operator==(const VerdictSummary&) const = default;
};

struct ReportDocument {
  std::string toolVersion;
  std::string timestamp;
  std::string command;
  nlohmann::json range = nlohmann::json::object();       // dims or sweep range plus run settings
  nlohmann::json highlights = nlohmann::json::object();  // headline scalars, emitted at top level
  std::vector<ReportSection> sections;
  VerdictSummary verdictSummary;

  void verdict(bool ok) { ++(ok ? verdictSummary.pass : verdictSummary.fail); }
  const ReportSection* section(const std::string& name) const;
  bool operator==(const ReportDocument&) const = default;
};

nlohmann::json to_json(const ReportDocument& doc);
ReportDocument report_from_json(const nlohmann::json& j);

std::string render_json(const ReportDocument& doc);
// the named section as CSV with its header row
std::string render_csv(const ReportDocument& doc, const std::string& sectionName);
std::string render_human(const ReportDocument& doc);

// ISO-8601 UTC, seconds resolution
std::string utc_timestamp();

}  // namespace qcurve
