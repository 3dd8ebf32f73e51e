// End-to-end acceptance run: each criterion combines the library's named reproduction with
// oracles computed here, and prints one PASS/FAIL line.
#include <cstdio>
#include <functional>
#include <random>
#include <string>

#include "test_support.hpp"
#include "wbm/convexfn.hpp"
#include "wbm/inequalities.hpp"
#include "wbm/mixed.hpp"
#include "wbm/repro.hpp"
#include "wbm/special.hpp"

using namespace wbm;
using namespace testsupport;

namespace {

struct Criterion {
  std::string id;
  std::string claim;
  double max_seconds;
  std::function<std::string(const ClaimOutcome&)> oracle;  ///< empty string: pass
};

std::string first_failure(const ClaimOutcome& o) {
  for (const auto& c : o.checks) {
    if (c.rfind("FAIL", 0) == 0) return c;
  }
  return "claim failed";
}

std::string oracle_ac1(const ClaimOutcome& o) {
  return o.rows.size() == 150 ? "" : "expected 150 comparison rows, got " + std::to_string(o.rows.size());
}

std::string oracle_ac2(const ClaimOutcome&) {
  std::mt19937_64 rng(2002);
  const MeasureSpec leb = MeasureSpec::lebesgue(2);
  for (int i = 0; i < 20; ++i) {
    const auto P = random_polygon_vertices(rng);
    const Body K = as_polytope(P);
    if (std::abs(mixed1_formula(leb, K, K).value - 2 * shoelace(P)) > 1e-9) return "lambda(K;K) off the shoelace value";
    if (std::abs(mixed1_formula(leb, K, Body::unit_ball(2)).value - perimeter(P)) > 1e-9) return "lambda(K;B) off the perimeter";
  }
  return "";
}

std::string oracle_ac3(const ClaimOutcome& o) {
  // int over the boundary of [-1,1]^2 of x^2 + y^2: four sides of int_{-1}^{1} (1 + t^2) dt
  const double golden = 4 * (2 + 2.0 / 3);
  int seen = 0;
  for (const auto& r : o.rows) {
    if (r.inequality.rfind("mu+(boundary", 0) != 0) continue;
    ++seen;
    if (std::abs(r.lhs.value - golden) > 1e-6) return "route '" + r.note + "' misses 32/3";
  }
  return seen == 3 ? "" : "expected three routes";
}

std::string no_violations(const ClaimOutcome& o) {
  for (const auto& r : o.rows) {
    if (r.verdict == "violated") return "violated row " + r.inequality + " " + r.body_ids;
  }
  return "";
}

std::string oracle_ac5(const ClaimOutcome&) {
  // gamma_1([-x, x]) = erf(x / sqrt 2) is concave in x, so the submodular form holds on the grid
  auto g = [](double x) { return std::erf(x / std::sqrt(2.0)); };
  for (int i = 1; i <= 20; ++i)
    for (int j = 1; j <= 20; ++j)
      for (int k = 1; k <= 20; ++k) {
        const double a = 0.1 * i, b = 0.1 * j, c = 0.1 * k;
        if (g(a + b + c) + g(a) > g(a + b) + g(a + c) + 1e-15) return "erf oracle violates submodularity";
      }
  return "";
}

std::string oracle_ac6(const ClaimOutcome& o) {
  for (const auto& r : o.rows) {
    if (r.verdict == "violated" && r.lhs.value < -3 * (r.lhs.abs_error + (r.rhs ? r.rhs->abs_error : 0.0))) return "";
  }
  return "no row negative beyond three error bars";
}

std::string oracle_ac8(const ClaimOutcome& o) {
  if (auto v = no_violations(o); !v.empty()) return v;
  for (const auto& r : o.rows) {
    if (r.inequality == "bm_constant" && r.lhs.value > 1 + 1e-6) return "c(A,B,C) above 1 + 1e-6";
  }
  // gamma_1 with an interval A and symmetric B, C, through erf
  for (double lo : {-2.0, -0.5, 0.0, 1.0})
    for (double len : {0.3, 2.0})
      for (double b : {0.2, 1.0})
        for (double c : {0.4, 1.5}) {
          const double l = gauss_interval(lo, lo + len) * gauss_interval(lo - b - c, lo + len + b + c);
          const double r = gauss_interval(lo - b, lo + len + b) * gauss_interval(lo - c, lo + len + c);
          if (l > r * (1 + 1e-14)) return "erf oracle violates the interval case";
        }
  return "";
}

std::string oracle_ac9(const ClaimOutcome& o) {
  if (auto v = no_violations(o); !v.empty()) return v;
  // equality family: both sides equal (1 + alpha^2)(b - a)^2
  for (double alpha : {-3.0, -1.0, 0.0, 0.5, 3.0}) {
    const auto r = appendixB_check(equality_family(alpha, -0.5, 1.5))[0];
    const double expect = (1 + alpha * alpha) * 4.0;
    if (std::abs(r.lhs.value - expect) > 1e-9 || std::abs(r.rhs.value - expect) > 1e-9) return "equality family closed form";
  }
  return "";
}

std::string oracle_ac10(const ClaimOutcome& o) {
  const double phi = std::exp(-0.5) / std::sqrt(2 * M_PI);
  const double expect = -phi * (normal_cdf(0.8) - normal_cdf(-0.2));
  for (const auto& r : o.rows) {
    if (r.measure.rfind("gaussian", 0) == 0) {
      return std::abs(r.lhs.value - expect) <= 3 * r.lhs.abs_error + 1e-12 ? "" : "Gaussian flux off the closed form";
    }
  }
  return "missing Gaussian row";
}

std::string oracle_ac11(const ClaimOutcome& o) {
  for (const auto& r : o.rows) {
    if (r.lhs.value > 1e-9) return "support gap " + std::to_string(r.lhs.value);
  }
  return o.rows.size() == 50 ? "" : "expected 50 zonotopes";
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {"AC1", "ac1", 120, oracle_ac1},   {"AC2", "ac2", 600, oracle_ac2},     {"AC3", "ac3", 600, oracle_ac3},
      {"AC4", "ac4", 600, no_violations}, {"AC5", "ac5", 600, oracle_ac5},     {"AC6", "ac6", 180, oracle_ac6},
      {"AC7", "ac7", 600, nullptr},       {"AC8", "ac8", 600, oracle_ac8},     {"AC9", "ac9", 60, oracle_ac9},
      {"AC10", "ac10", 600, oracle_ac10}, {"AC11", "ac11", 600, oracle_ac11},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const ClaimOutcome o = run_claim(c.claim);
    std::string why;
    if (!o.passed) why = first_failure(o);
    else if (o.seconds > c.max_seconds) why = "runtime " + std::to_string(o.seconds) + " s over budget";
    else if (c.oracle) why = c.oracle(o);
    const bool ok = why.empty();
    failed += ok ? 0 : 1;
    std::printf("%-5s %s  %-55s %8.2f s%s%s\n", c.id.c_str(), ok ? "PASS" : "FAIL", find_claim(c.claim).title.c_str(),
                o.seconds, ok ? "" : "  -- ", why.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
