#pragma once

#include <functional>
#include <random>
#include <vector>

#include "wbm/bodies.hpp"
#include "wbm/report.hpp"

namespace wbm {

/// Piecewise-linear convex function on [x.front(), x.back()].
class ConvexPL {
 public:
  /// Throws NotConvex if the slopes decrease, Negative if `nonnegative` and a value is < 0.
  ConvexPL(std::vector<double> x, std::vector<double> y, bool nonnegative = false);

  /// Linear interpolant of f on n equal pieces of [a, b].
  static ConvexPL sample(const std::function<double(double)>& f, double a, double b, int n, bool nonnegative = false);

  double a() const { return x_.front(); }
  double b() const { return x_.back(); }
  const std::vector<double>& x() const { return x_; }
  const std::vector<double>& y() const { return y_; }
  int pieces() const { return static_cast<int>(x_.size()) - 1; }
  double slope(int i) const { return (y_[i + 1] - y_[i]) / (x_[i + 1] - x_[i]); }

  double operator()(double t) const;
  /// Integral of sqrt(1 + h'^2).
  double arc_length() const;
  /// Integral of h sqrt(1 + h'^2): per piece, sqrt(1 + m^2) times the trapezoid of h.
  double weighted_arc_length() const;

  /// h + c (the nonnegativity flag is dropped).
  ConvexPL shifted(double c) const;
  /// Same function with every piece split in two.
  ConvexPL refined() const;

 private:
  std::vector<double> x_, y_;
};

/// 2((b-a)/2)^2 + h(a)^2 + h(b)^2 >= 2 int h sqrt(1 + h'^2), followed by the weaker
/// a^2 + b^2 + h(a)^2 + h(b)^2 >= 2 int h sqrt(1 + h'^2). h must be nonnegative.
std::vector<InequalityReport> appendixB_check(const ConvexPL& h);

/// h(x) = alpha x + ((sqrt(1+alpha^2) - alpha)/2) b - ((sqrt(1+alpha^2) + alpha)/2) a.
ConvexPL equality_family(double alpha, double a, double b);

/// c minimizing the shifted main inequality: (h(0) + h(1))/2 - L(h)/2.
double c_opt(const ConvexPL& h);

/// int [(h(0)+h(1))/2 - h] sqrt(1+h'^2) >= (L(h)^2 - L(h_lin)^2)/4 on [0, 1], any sign.
/// Also reports the round trip through the main inequality applied to h - c_opt and the
/// normalization h_opt(0) + h_opt(1) = L(h).
std::vector<InequalityReport> optimized_form_check(const ConvexPL& h);

/// Boundary term versus area term of the open higher-dimensional inequality for
/// n = 3, C = [0,1] x [0,eps], h = x1^alpha + lambda x2^beta.
InequalityReport naz_probe(int alpha, int beta, double lambda, double eps);

/// Planar polygon seen from direction u: after rotating u to e2, K lies between a convex
/// lower chain g and a concave upper chain f over [a, b].
struct ArcLengthWitness {
  double a = 0.0, b = 0.0;
  ConvexPL lower;    ///< g
  ConvexPL neg_upper;  ///< -f
  Eigen::Matrix2d rotation;  ///< maps the original frame to the one with u = e2
  /// Vertices of K reconstructed from the chains, in the original frame.
  std::vector<Vec2> reconstruct() const;
  /// a^2 + b^2 + f(a)^2 + f(b)^2 + 2 int f sqrt(1+f'^2), in the rotated frame.
  double reduced_expression() const;
  /// The main-inequality variant applied to h = max(-f, 0), whose margin bounds the reduced expression.
  InequalityReport reduced_check() const;
};

ArcLengthWitness arclength_witness(const Body& K, const Vec& u);

/// Random convex PL function with 1..12 pieces: on [0, 1] when `unit_interval`, otherwise on a
/// random interval in [-2, 2]; shifted to be nonnegative when `nonnegative`.
ConvexPL random_convex_pl(std::mt19937_64& rng, bool nonnegative, bool unit_interval);

}  // namespace wbm
