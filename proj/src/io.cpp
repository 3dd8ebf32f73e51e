#include "wbm/io.hpp"

#include <charconv>
#include <cmath>

#include "wbm/errors.hpp"
#include "wbm/quadrature.hpp"

namespace wbm {

OutputFormat output_format_from_string(const std::string& s) {
  if (s == "csv") return OutputFormat::csv;
  if (s == "json" || s == "structured-text") return OutputFormat::json;
  throw ParseError("unknown format '" + s + "' (expected csv or json)");
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

nlohmann::json RunConfig::to_json() const {
  nlohmann::json j;
  j["subcommand"] = subcommand;
  j["seed"] = seed;
  j["format"] = format == OutputFormat::csv ? "csv" : "json";
  j["budget"] = budget ? nlohmann::json(*budget) : nlohmann::json(nullptr);
  j["tolerance_scale"] = tolerance_scale;
  j["args"] = args;
  return j;
}

ReportRow ReportRow::from_report(const std::string& claim_id, const InequalityReport& r) {
  ReportRow row;
  row.claim_id = claim_id;
  row.inequality = r.name;
  row.measure = r.measure;
  row.body_ids = r.bodies;
  row.lhs = r.lhs;
  row.rhs = r.rhs;
  row.margin = r.margin;
  row.verdict = std::string(to_string(r.verdict));
  row.terms = r.terms;
  row.note = r.note;
  return row;
}

ReportRow ReportRow::value(const std::string& claim_id, const std::string& quantity, const std::string& measure,
                           const std::string& body_ids, const EvalResult& v, std::string note) {
  ReportRow row;
  row.claim_id = claim_id;
  row.inequality = quantity;
  row.measure = measure;
  row.body_ids = body_ids;
  row.lhs = v;
  row.margin = std::numeric_limits<double>::quiet_NaN();
  row.verdict = "value";
  row.note = std::move(note);
  return row;
}

namespace {

// RFC 4180 quoting for fields that need it.
std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

struct Tally {
  int holds = 0, violated = 0, inconclusive = 0, values = 0;
  void add(const std::string& v) {
    if (v == "holds") ++holds;
    else if (v == "violated") ++violated;
    else if (v == "inconclusive") ++inconclusive;
    else ++values;
  }
};

}  // namespace

void write_csv(std::ostream& os, const RunConfig& cfg, const std::vector<ReportRow>& rows) {
  os << "# " << kCsvVersion << "\n";
  os << "# config: " << cfg.to_json().dump() << "\n";
  os << "claim_id,inequality,measure,body_ids,lhs,lhs_err,rhs,rhs_err,margin,verdict,lhs_method,rhs_method\n";
  Tally t;
  for (const auto& r : rows) {
    t.add(r.verdict);
    os << csv_field(r.claim_id) << ',' << csv_field(r.inequality) << ',' << csv_field(r.measure) << ','
       << csv_field(r.body_ids) << ',' << format_double(r.lhs.value) << ',' << format_double(r.lhs.abs_error) << ',';
    if (r.rhs) {
      os << format_double(r.rhs->value) << ',' << format_double(r.rhs->abs_error) << ',';
    } else {
      os << ",,";
    }
    os << (std::isnan(r.margin) ? "" : format_double(r.margin)) << ',' << r.verdict << ',' << to_string(r.lhs.method)
       << ',' << (r.rhs ? std::string(to_string(r.rhs->method)) : std::string()) << '\n';
  }
  os << "# summary: holds=" << t.holds << " violated=" << t.violated << " inconclusive=" << t.inconclusive
     << " values=" << t.values << "\n";
}

nlohmann::json eval_to_json(const EvalResult& r) {
  return {{"value", r.value}, {"abs_error", r.abs_error}, {"method", std::string(to_string(r.method))}};
}

void write_json(std::ostream& os, const RunConfig& cfg, const std::vector<ReportRow>& rows) {
  nlohmann::json j;
  j["version"] = kCsvVersion;
  j["config"] = cfg.to_json();
  j["reports"] = nlohmann::json::array();
  Tally t;
  for (const auto& r : rows) {
    t.add(r.verdict);
    nlohmann::json row{{"claim_id", r.claim_id},   {"inequality", r.inequality}, {"measure", r.measure},
                       {"body_ids", r.body_ids},   {"lhs", eval_to_json(r.lhs)}, {"verdict", r.verdict}};
    row["rhs"] = r.rhs ? eval_to_json(*r.rhs) : nlohmann::json(nullptr);
    row["margin"] = std::isnan(r.margin) ? nlohmann::json(nullptr) : nlohmann::json(r.margin);
    if (!r.terms.empty()) {
      nlohmann::json terms = nlohmann::json::object();
      for (const auto& [k, v] : r.terms) terms[k] = eval_to_json(v);
      row["terms"] = terms;
    }
    if (!r.note.empty()) row["note"] = r.note;
    j["reports"].push_back(row);
  }
  j["summary"] = {{"holds", t.holds}, {"violated", t.violated}, {"inconclusive", t.inconclusive}, {"values", t.values}};
  os << j.dump(2) << "\n";
}

void write_rows(std::ostream& os, const RunConfig& cfg, const std::vector<ReportRow>& rows) {
  if (cfg.format == OutputFormat::csv) {
    write_csv(os, cfg, rows);
  } else {
    write_json(os, cfg, rows);
  }
}

nlohmann::json spherical_measure_to_json(const SphericalMeasure& m) {
  nlohmann::json j;
  j["dim"] = m.dim;
  j["atoms"] = nlohmann::json::array();
  for (const auto& a : m.atoms()) {
    j["atoms"].push_back({{"normal", std::vector<double>(a.u.data(), a.u.data() + a.u.size())},
                          {"weight", a.w},
                          {"abs_error", a.err}});
  }
  j["arcs"] = nlohmann::json::array();
  for (const auto& arc : m.arcs) {
    const double mass = quad::line(arc.density, arc.t0, arc.t1, 64);
    j["arcs"].push_back({{"theta0", arc.t0}, {"theta1", arc.t1}, {"mass", mass}});
  }
  if (!m.sphere.empty()) j["sphere_density_parts"] = m.sphere.size();
  j["total_mass"] = eval_to_json(m.total_mass());
  return j;
}

}  // namespace wbm
