#pragma once

#include <map>
#include <string>
#include <vector>

#include "wbm/eval_result.hpp"

namespace wbm {

enum class Verdict { holds, violated, inconclusive };

std::string_view to_string(Verdict v);

/// Outcome of checking one inequality instance. `margin` is oriented so that a positive
/// margin means the inequality holds.
struct InequalityReport {
  std::string name;
  EvalResult lhs;
  EvalResult rhs;
  double margin = 0.0;
  Verdict verdict = Verdict::inconclusive;
  std::string measure;
  std::string bodies;
  /// Named intermediate quantities (mixed measures etc.) for itemized output.
  std::map<std::string, EvalResult> terms;
  std::string note;
};

/// Error budget below which a margin is not trusted: three times the combined error bars,
/// plus a rounding floor proportional to the magnitudes being compared.
double verdict_threshold(const EvalResult& lhs, const EvalResult& rhs, double tolerance_scale = 1.0);

/// Applies the verdict rule to a margin.
Verdict decide(double margin, double threshold);

/// Report for "lhs <= rhs" (margin = rhs - lhs).
InequalityReport report_le(std::string name, const EvalResult& lhs, const EvalResult& rhs);
/// Report for "lhs >= rhs" (margin = lhs - rhs).
InequalityReport report_ge(std::string name, const EvalResult& lhs, const EvalResult& rhs);
/// Report for "lhs == rhs" at an absolute tolerance: holds when |lhs - rhs| <= tol plus error bars.
InequalityReport report_eq(std::string name, const EvalResult& lhs, const EvalResult& rhs, double tol);

/// Global multiplier applied to every verdict threshold (CLI --tolerance-scale).
double tolerance_scale();
void set_tolerance_scale(double s);

struct VerdictCounts {
  int holds = 0, violated = 0, inconclusive = 0;
  void add(Verdict v);
  int total() const { return holds + violated + inconclusive; }
  double inconclusive_fraction() const { return total() ? static_cast<double>(inconclusive) / total() : 0.0; }
};

}  // namespace wbm
