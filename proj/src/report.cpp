#include "wbm/report.hpp"

#include <atomic>
#include <cmath>
#include <limits>

namespace wbm {

namespace {
std::atomic<double> g_tolerance_scale{1.0};
}

double tolerance_scale() { return g_tolerance_scale.load(); }
void set_tolerance_scale(double s) { g_tolerance_scale.store(s); }

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::holds:
      return "holds";
    case Verdict::violated:
      return "violated";
    case Verdict::inconclusive:
      return "inconclusive";
  }
  return "?";
}

double verdict_threshold(const EvalResult& lhs, const EvalResult& rhs, double scale) {
  const double round = 64 * std::numeric_limits<double>::epsilon() * (std::abs(lhs.value) + std::abs(rhs.value));
  return scale * tolerance_scale() * (3 * (lhs.abs_error + rhs.abs_error) + round);
}

Verdict decide(double margin, double threshold) {
  if (!std::isfinite(margin)) return Verdict::inconclusive;
  if (std::abs(margin) <= threshold) return Verdict::inconclusive;
  return margin > 0 ? Verdict::holds : Verdict::violated;
}

InequalityReport report_le(std::string name, const EvalResult& lhs, const EvalResult& rhs) {
  InequalityReport r;
  r.name = std::move(name);
  r.lhs = lhs;
  r.rhs = rhs;
  r.margin = rhs.value - lhs.value;
  r.verdict = decide(r.margin, verdict_threshold(lhs, rhs));
  return r;
}

InequalityReport report_ge(std::string name, const EvalResult& lhs, const EvalResult& rhs) {
  InequalityReport r;
  r.name = std::move(name);
  r.lhs = lhs;
  r.rhs = rhs;
  r.margin = lhs.value - rhs.value;
  r.verdict = decide(r.margin, verdict_threshold(lhs, rhs));
  return r;
}

InequalityReport report_eq(std::string name, const EvalResult& lhs, const EvalResult& rhs, double tol) {
  InequalityReport r;
  r.name = std::move(name);
  r.lhs = lhs;
  r.rhs = rhs;
  const double allowed = tol + verdict_threshold(lhs, rhs);
  r.margin = allowed - std::abs(lhs.value - rhs.value);
  r.verdict = r.margin >= 0 ? Verdict::holds : Verdict::violated;
  return r;
}

void VerdictCounts::add(Verdict v) {
  switch (v) {
    case Verdict::holds:
      ++holds;
      break;
    case Verdict::violated:
      ++violated;
      break;
    case Verdict::inconclusive:
      ++inconclusive;
      break;
  }
}

}  // namespace wbm
