#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"
#include "wbm/report.hpp"
#include "wbm/surface.hpp"

namespace wbm {

enum class OutputFormat { csv, json };

OutputFormat output_format_from_string(const std::string& s);

/// Everything that determines a run; echoed into every report header.
struct RunConfig {
  std::string subcommand;
  std::uint64_t seed = 0x5eed2024ULL;
  std::string out;  ///< empty: standard output
  OutputFormat format = OutputFormat::csv;
  std::optional<int> budget;
  double tolerance_scale = 1.0;
  nlohmann::json args = nlohmann::json::object();  ///< subcommand-specific flags

  nlohmann::json to_json() const;
};

/// One output row. Value rows (a single computed quantity) have no rhs and verdict "value".
struct ReportRow {
  std::string claim_id;
  std::string inequality;
  std::string measure;
  std::string body_ids;
  EvalResult lhs;
  std::optional<EvalResult> rhs;
  double margin = 0.0;
  std::string verdict;
  std::map<std::string, EvalResult> terms;
  std::string note;

  static ReportRow from_report(const std::string& claim_id, const InequalityReport& r);
  static ReportRow value(const std::string& claim_id, const std::string& quantity, const std::string& measure,
                         const std::string& body_ids, const EvalResult& v, std::string note = {});
};

inline constexpr const char* kCsvVersion = "wbm-report/1";

/// Column order is fixed: claim_id, inequality, measure, body_ids, lhs, lhs_err, rhs, rhs_err,
/// margin, verdict, followed by lhs_method, rhs_method.
void write_csv(std::ostream& os, const RunConfig& cfg, const std::vector<ReportRow>& rows);
void write_json(std::ostream& os, const RunConfig& cfg, const std::vector<ReportRow>& rows);
void write_rows(std::ostream& os, const RunConfig& cfg, const std::vector<ReportRow>& rows);

nlohmann::json eval_to_json(const EvalResult& r);
nlohmann::json spherical_measure_to_json(const SphericalMeasure& m);

/// Shortest text that reads back to the same double.
std::string format_double(double v);

}  // namespace wbm
