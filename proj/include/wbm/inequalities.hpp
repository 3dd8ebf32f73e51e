#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wbm/generators.hpp"
#include "wbm/mixed.hpp"
#include "wbm/report.hpp"

namespace wbm {

/// The concavity profile F in "mu((1-t)K + tL) >= F^{-1}((1-t)F(mu(K)) + tF(mu(L)))".
class FConcavity {
 public:
  enum class Kind { power, log, normal_inv };

  static FConcavity power(double s);
  static FConcavity log();
  static FConcavity normal_inv();

  Kind kind() const { return kind_; }
  double s() const { return s_; }
  bool increasing() const { return kind_ != Kind::power || s_ > 0; }

  double F(double x) const;
  double dF(double x) const;
  double d2F(double x) const;
  double inverse(double y) const;
  /// -F''/F', the coefficient in Minkowski's second inequality.
  double curvature_ratio(double x) const;

  std::string name() const;

 private:
  Kind kind_ = Kind::log;
  double s_ = 0.0;
};

FConcavity f_concavity_from_string(const std::string& s);

enum class MixedPath { fd, formula, automatic };

struct CheckOptions {
  MixedPath path = MixedPath::fd;
  MixedOptions mixed{};
  std::vector<double> t_grid{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
};

/// mu(K; L) and mu(A; B, C) by the requested path (automatic: formula when implemented).
EvalResult mixed1(const MeasureSpec& mu, const Body& K, const Body& L, const CheckOptions& opt);
EvalResult mixed2(const MeasureSpec& mu, const Body& A, const Body& B, const Body& C, const CheckOptions& opt);

/// Worst margin of the F-concavity inequality over the t grid.
InequalityReport check_f_concavity(const MeasureSpec& mu, const FConcavity& F, const Body& K, const Body& L,
                                   const CheckOptions& opt = {});

/// mu(K; L) >= mu(K; K) + (F(mu(L)) - F(mu(K))) / F'(mu(K)).
InequalityReport minkowski_first(const MeasureSpec& mu, const FConcavity& F, const Body& K, const Body& L,
                                 const CheckOptions& opt = {});

/// mu(K) mu(K; L, L) <= (1 - s) mu(K; L)^2 for F = x^s, and
/// -(F''/F') mu(K; L)^2 >= mu(K; L, L) otherwise.
InequalityReport minkowski_second(const MeasureSpec& mu, const FConcavity& F, const Body& K, const Body& L,
                                  const CheckOptions& opt = {});

/// Non-negativity of the Hessian determinant of F(mu(A + sB + tC)), divided by F'^2.
InequalityReport reverse_quadratic(const MeasureSpec& mu, const FConcavity& F, const Body& A, const Body& B,
                                   const Body& C, const CheckOptions& opt = {});

/// Two-sided discriminant bracket, the Fenchel-type upper bound and, for Lebesgue measure,
/// the classical Fenchel inequality. Bodies must contain the origin.
std::vector<InequalityReport> fenchel_bounds(const MeasureSpec& mu, double s, const Body& A, const Body& B,
                                             const Body& C, const CheckOptions& opt = {});

enum class Modularity { super, sub };

/// mu(A+B+C) + mu(A) >= mu(A+B) + mu(A+C) (reversed for sub).
InequalityReport supermod_global(const MeasureSpec& mu, const Body& A, const Body& B, const Body& C,
                                 Modularity dir = Modularity::super, const EvalOptions& eo = {});
/// mu(A+C; B) >= mu(A; B).
InequalityReport supermod_local2(const MeasureSpec& mu, const Body& A, const Body& B, const Body& C,
                                 const CheckOptions& opt = {});
/// mu(A; B, C) >= 0.
InequalityReport supermod_local3(const MeasureSpec& mu, const Body& A, const Body& B, const Body& C,
                                 const CheckOptions& opt = {});
/// Holds when the non-inconclusive verdicts among the three forms agree.
InequalityReport supermod_consistency(const std::vector<InequalityReport>& forms);

/// mu^+(boundary of (K + L)) >= mu^+(boundary of K).
InequalityReport surface_monotonicity(const MeasureSpec& mu, const Body& K, const Body& L);

struct RadialModularity {
  /// "increasing", "decreasing" or "neither": behaviour of r -> phi(r) r^(n-1) on the grid.
  std::string profile_class;
  std::vector<InequalityReport> ball_tests;
  bool found_super_violation = false;
  bool found_sub_violation = false;
};

/// Classifies phi(r) r^(n-1) on (0, r_max] and cross-checks with ball triples aB, bB, cB.
RadialModularity radial_modularity(const MeasureSpec& mu, double r_max = 5.0, int grid = 400);

/// mu(A) mu(A+B+C) <= mu(A+B) mu(A+C).
InequalityReport log_submodularity(const MeasureSpec& mu, const Body& A, const Body& B, const Body& C,
                                   const EvalOptions& eo = {});
/// Vol(A) Vol(A+B+C) / (Vol(A+B) Vol(A+C)).
EvalResult bm_constant(const Body& A, const Body& B, const Body& C);
/// mu(A) mu(A; B, C) <= mu(A; B) mu(A; C).
InequalityReport log_submod_local(const MeasureSpec& mu, const Body& A, const Body& B, const Body& C,
                                  const CheckOptions& opt = {});

/// Checkers that counterexample_search can target.
std::vector<std::string> search_targets();

struct SearchConfig {
  std::string target;
  MeasureSpec measure = MeasureSpec::lebesgue(2);
  GenConfig bodies{};
  /// Generator for the second operand when it differs (surface monotonicity's L).
  std::optional<GenConfig> second{};
  int budget = 500;
  std::uint64_t seed = 0x5eed2024ULL;
  /// F for the concavity-based targets; defaults to the class-consistent choice.
  std::optional<FConcavity> F{};
  std::optional<double> s{};
  CheckOptions check{};
  /// For mixed2_negativity: radii of A = R B.
  std::vector<double> radii{0.5, 1.0, 1.5, 2.0, 2.5, 3.0, 3.5, 4.0, 4.5, 5.0};
};

struct SearchResult {
  std::vector<InequalityReport> all;       ///< one report per instance, by index
  std::vector<InequalityReport> violated;  ///< violated instances, by index
  VerdictCounts counts;
};

/// Runs the target on `budget` generated instances. Throws BudgetExhausted when no instance
/// is violated (absence of a violation is not a proof).
SearchResult counterexample_search(const SearchConfig& cfg);
/// Same sweep without the BudgetExhausted convention.
SearchResult sweep(const SearchConfig& cfg);

/// s for which mu is s-concave on the class produced by `kind`, when known.
std::optional<double> class_concavity(const MeasureSpec& mu, GenKind kind);

}  // namespace wbm
