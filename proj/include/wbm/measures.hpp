#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "json.hpp"
#include "wbm/bodies.hpp"
#include "wbm/eval_result.hpp"

namespace wbm {

enum class DensityKind { lebesgue, gaussian, radial_power, radial_exp };

/// Profile families for radial measures with density exp(-W(|x|)).
enum class WFamily { half_square, power, log1p };

/// A measure on R^n with a radial density phi(x) = profile(|x|).
class MeasureSpec {
 public:
  static MeasureSpec lebesgue(int n);
  static MeasureSpec gaussian(int n);
  static MeasureSpec radial_power(int n, double p);
  /// W(r) = r^2 / 2
  static MeasureSpec radial_exp_half_square(int n);
  /// W(r) = r^q, q >= 1
  static MeasureSpec radial_exp_power(int n, double q);
  /// W(r) = c log(1 + r), c > 0
  static MeasureSpec radial_exp_log(int n, double c);

  DensityKind kind() const { return kind_; }
  WFamily family() const { return family_; }
  int dim() const { return dim_; }
  double p() const { return param_; }  ///< exponent of |x|^p
  double q() const { return param_; }  ///< exponent of r^q
  double c() const { return param_; }  ///< coefficient of log(1 + r)

  MeasureSpec with_dim(int n) const;

  double profile(double r) const;
  double profile_derivative(double r) const;
  double density(const Vec& x) const { return profile(x.norm()); }
  double density(const Vec2& x) const { return profile(x.norm()); }
  Vec gradient(const Vec& x) const;
  Vec2 gradient(const Vec2& x) const;
  /// W for radial_exp; -log(profile) in general.
  double W(double r) const;

  /// alpha with mu(tK) = t^alpha mu(K), when the measure is homogeneous.
  std::optional<double> homogeneity() const;
  bool constant_density() const;
  /// Density is a polynomial (|x|^p with even integer p, or constant).
  bool polynomial_density() const;
  /// Density is smooth away from the origin and C^1 there.
  bool smooth_at_origin() const;
  /// phi is C^1 everywhere, so mixed measures of second order exist.
  bool c1_density() const;
  /// Total mass of R^n (infinite for Lebesgue and |x|^p).
  double total_mass() const;

  std::string name() const;

 private:
  DensityKind kind_ = DensityKind::lebesgue;
  WFamily family_ = WFamily::half_square;
  int dim_ = 1;
  double param_ = 0.0;
};

/// Checks the radial-exp class: W increasing and t -> W(e^t) convex, on a sample grid.
bool in_radial_class(const MeasureSpec& mu);

struct EvalOptions {
  std::uint64_t seed = 0x5eed2024ULL;
  int qmc_points = 1 << 14;   ///< points per randomized replicate
  int qmc_replicates = 8;
  int quad_order = 32;        ///< Gauss-Legendre order per triangle side
  bool allow_exact = true;    ///< use closed forms when available
  bool force_qmc = false;
};

EvalResult measure(const MeasureSpec& mu, const Body& K, const EvalOptions& opt = {});
/// Quasi-Monte-Carlo over the bounding box with randomized shifts (always available as a
/// cross-check where membership can be decided).
EvalResult measure_qmc(const MeasureSpec& mu, const Body& K, const EvalOptions& opt = {});
/// Piecewise Gauss-Legendre quadrature of a planar body, bypassing closed forms.
EvalResult measure_quadrature2d(const MeasureSpec& mu, const PolyBall& K, const EvalOptions& opt = {});

/// Integral of the monomial x^a y^b over a convex polygon (counter-clockwise), exact up to rounding.
double polygon_monomial(const std::vector<Vec2>& poly, int a, int b);
/// Integral of x^a y^b over the circular sector with apex c, radius r, angles [t0, t1].
double sector_monomial(const Vec2& c, double r, double t0, double t1, int a, int b);

MeasureSpec measure_from_json(const nlohmann::json& j, int dim);
nlohmann::json measure_to_json(const MeasureSpec& mu);
MeasureSpec parse_measure(const std::string& text, int dim);

}  // namespace wbm
