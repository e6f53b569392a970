#ifndef FTC_REPORT_HPP
#define FTC_REPORT_HPP

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace ftc {

/// One name/value/error triple of a report document.
struct ReportRow {
  std::string quantity;
  std::optional<double> paper_value;
  double computed_value = 0.0;
  std::string note;

  std::optional<double> abs_error() const {
    if (!paper_value) return std::nullopt;
    return std::abs(*paper_value - computed_value);
  }
};

inline nlohmann::json to_json(const ReportRow& row) {
  nlohmann::json j;
  j["quantity"] = row.quantity;
  j["paper_value"] = row.paper_value ? nlohmann::json(*row.paper_value) : nlohmann::json(nullptr);
  j["computed_value"] = row.computed_value;
  const auto err = row.abs_error();
  j["abs_error"] = err ? nlohmann::json(*err) : nlohmann::json(nullptr);
  j["note"] = row.note;
  return j;
}

inline std::string render_report(const std::vector<ReportRow>& rows) {
  nlohmann::json doc = nlohmann::json::array();
  for (const auto& r : rows) doc.push_back(to_json(r));
  return doc.dump(2) + "\n";
}

inline const ReportRow* find_row(const std::vector<ReportRow>& rows, const std::string& quantity) {
  for (const auto& r : rows)
    if (r.quantity == quantity) return &r;
  return nullptr;
}

}  // namespace ftc

#endif  // FTC_REPORT_HPP
