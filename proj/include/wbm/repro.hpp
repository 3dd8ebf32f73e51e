#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "wbm/io.hpp"

namespace wbm {

struct ReproOptions {
  std::uint64_t seed = 0x5eed2024ULL;
  /// Overrides every instance count / search budget of the claim.
  std::optional<int> budget;
};

/// Outcome of one named reproduction.
struct ClaimOutcome {
  std::string id;
  bool passed = true;
  std::vector<ReportRow> rows;
  /// One line per sub-check: "ok|FAIL <name>: <detail>".
  std::vector<std::string> checks;
  double seconds = 0.0;
};

struct ClaimInfo {
  std::string id;
  std::vector<std::string> aliases;
  std::string title;
  std::string expectation;
  std::function<void(class ClaimContext&)> run;
};

/// Accumulates rows and sub-check results while a claim runs.
class ClaimContext {
 public:
  ClaimContext(std::string id, ReproOptions opt) : opt_(opt) { out_.id = std::move(id); }

  const ReproOptions& options() const { return opt_; }
  int count(int default_count) const { return opt_.budget.value_or(default_count); }
  std::uint64_t seed(std::uint64_t salt) const { return opt_.seed ^ (salt * 0x9e3779b97f4a7c15ULL); }

  void row(const InequalityReport& r) { out_.rows.push_back(ReportRow::from_report(out_.id, r)); }
  void row(ReportRow r) {
    r.claim_id = out_.id;
    out_.rows.push_back(std::move(r));
  }
  /// Records a sub-check; the claim passes only if every sub-check does.
  bool check(const std::string& name, bool ok, const std::string& detail = {});

  ClaimOutcome finish(double seconds);

 private:
  ReproOptions opt_;
  ClaimOutcome out_;
};

const std::vector<ClaimInfo>& claim_registry();
const ClaimInfo& find_claim(const std::string& id_or_alias);
ClaimOutcome run_claim(const std::string& id_or_alias, const ReproOptions& opt = {});

}  // namespace wbm
