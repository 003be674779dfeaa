#include "qcurve/report.hpp"

#include "qcurve/error.hpp"

#include <algorithm>
#include <cmath>
#include <ctime>
#include <iomanip>
#include <set>
#include <sstream>

namespace qcurve {

using nlohmann::json;

namespace {

const std::set<std::string> kReserved{"toolVersion", "timestamp", "command", "range", "sections", "verdictSummary"};

std::string cell_text(const json& c) {
  if (c.is_string()) return c.get<std::string>();
  if (c.is_null()) return "";
  if (c.is_boolean()) return c.get<bool>() ? "true" : "false";
  if (c.is_number_float()) {
    std::ostringstream os;
    os << std::setprecision(17) << c.get<double>();
    return os.str();
  }
  return c.dump();
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

std::string human_cell(const json& c) {
  if (c.is_null()) return "-";
  if (c.is_number_float()) {
    std::ostringstream os;
    os << std::setprecision(10) << c.get<double>();
    return os.str();
  }
  return cell_text(c);
}

}  // namespace

const ReportSection* ReportDocument::section(const std::string& name) const {
  for (const auto& s : sections)
    if (s.name == name) return &s;
  return nullptr;
}

json to_json(const ReportDocument& doc) {
  json j = json::object();
  j["toolVersion"] = doc.toolVersion;
  j["timestamp"] = doc.timestamp;
  j["command"] = doc.command;
  j["range"] = doc.range;
  for (const auto& [k, v] : doc.highlights.items()) {
    if (kReserved.count(k)) throw InternalError("report: highlight key collides with '" + k + "'");
    j[k] = v;
  }
  json secs = json::array();
  for (const auto& s : doc.sections) {
    for (const auto& r : s.rows)
      if (r.size() != s.columns.size()) throw InternalError("report: ragged row in section " + s.name);
    secs.push_back({{"name", s.name}, {"columns", s.columns}, {"rows", s.rows}, {"tolerances", s.tolerances}});
  }
  j["sections"] = secs;
  j["verdictSummary"] = {{"pass", doc.verdictSummary.pass}, {"fail", doc.verdictSummary.fail}};
  return j;
}

ReportDocument report_from_json(const json& j) {
  ReportDocument d;
  d.toolVersion = j.at("toolVersion").get<std::string>();
  d.timestamp = j.at("timestamp").get<std::string>();
  d.command = j.at("command").get<std::string>();
  d.range = j.at("range");
  for (const auto& [k, v] : j.items())
    if (!kReserved.count(k)) d.highlights[k] = v;
  for (const auto& s : j.at("sections")) {
    ReportSection sec;
    sec.name = s.at("name").get<std::string>();
    sec.columns = s.at("columns").get<std::vector<std::string>>();
    sec.rows = s.at("rows").get<std::vector<std::vector<json>>>();
    sec.tolerances = s.at("tolerances").get<std::map<std::string, double>>();
    d.sections.push_back(std::move(sec));
  }
  d.verdictSummary.pass = j.at("verdictSummary").at("pass").get<int>();
  d.verdictSummary.fail = j.at("verdictSummary").at("fail").get<int>();
  return d;
}

std::string render_json(const ReportDocument& doc) { return to_json(doc).dump(2) + "\n"; }

std::string render_csv(const ReportDocument& doc, const std::string& sectionName) {
  const ReportSection* s = doc.section(sectionName);
  if (!s) throw InternalError("report: no section named " + sectionName);
  std::ostringstream os;
  for (std::size_t i = 0; i < s->columns.size(); ++i) os << (i ? "," : "") << csv_escape(s->columns[i]);
  os << "\n";
  for (const auto& r : s->rows) {
    for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << csv_escape(cell_text(r[i]));
    os << "\n";
  }
  return os.str();
}

std::string render_human(const ReportDocument& doc) {
  std::ostringstream os;
  os << "qcurve " << doc.toolVersion << "  " << doc.command << "  " << doc.range.dump() << "\n";
  for (const auto& [k, v] : doc.highlights.items()) os << "  " << k << " = " << human_cell(v) << "\n";
  for (const auto& s : doc.sections) {
    os << "\n[" << s.name << "]\n";
    std::vector<std::size_t> width(s.columns.size());
    std::vector<std::vector<std::string>> cells;
    for (std::size_t i = 0; i < s.columns.size(); ++i) width[i] = s.columns[i].size();
    for (const auto& r : s.rows) {
      cells.emplace_back();
      for (std::size_t i = 0; i < r.size(); ++i) {
        cells.back().push_back(human_cell(r[i]));
        width[i] = std::max(width[i], cells.back().back().size());
      }
    }
    auto line = [&](const std::vector<std::string>& row) {
      for (std::size_t i = 0; i < row.size(); ++i) os << "  " << std::setw(static_cast<int>(width[i])) << row[i];
      os << "\n";
    };
    line(s.columns);
    for (const auto& r : cells) line(r);
    for (const auto& [k, v] : s.tolerances) os << "  tolerance " << k << " = " << v << "\n";
  }
  os << "\nverdicts: " << doc.verdictSummary.pass << " pass, " << doc.verdictSummary.fail << " fail\n";
  return os.str();
}

std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace qcurve
