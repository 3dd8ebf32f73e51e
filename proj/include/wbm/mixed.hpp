#pragma once

#include <functional>
#include <vector>

#include "wbm/bodies.hpp"
#include "wbm/measures.hpp"
#include "wbm/report.hpp"
#include "wbm/surface.hpp"

namespace wbm {

/// Step sizes for one-sided difference quotients and the extrapolation depth.
struct FDSchedule {
  std::vector<double> epsilons;  ///< strictly decreasing, positive
  int order = 3;                 ///< number of Richardson elimination steps
  bool two_sided = true;         ///< also extrapolate the quotient based at K + eps L
  static FDSchedule standard();  ///< 0.2 * 2^-k, k = 0..6
  void validate() const;
};

/// Polynomial (Neville) extrapolation to eps = 0 of g(eps) = g0 + c1 eps + c2 eps^2 + ...
/// `errs` are absolute error bounds of the samples. Throws Inconclusive when the
/// extrapolants stop contracting above the noise level.
EvalResult richardson(const std::vector<double>& eps, const std::vector<double>& g, const std::vector<double>& errs,
                      int order);

struct MixedOptions {
  FDSchedule schedule = FDSchedule::standard();
  EvalOptions eval{};
};

/// mu(K; L) = d/d eps mu(K + eps L) at 0+.
EvalResult mixed1_fd(const MeasureSpec& mu, const Body& K, const Body& L, const MixedOptions& opt = {});
/// mu(K; L) as the integral of h_L against S^mu_K.
EvalResult mixed1_formula(const MeasureSpec& mu, const Body& K, const Body& L);

/// mu(A; B, C) from the coupled second difference with s = t = eps.
EvalResult mixed2_fd(const MeasureSpec& mu, const Body& A, const Body& B, const Body& C, const MixedOptions& opt = {});
/// Same limit on the product grid s = eps, t = eps / 2 (not symmetric in B and C).
EvalResult mixed2_fd_grid(const MeasureSpec& mu, const Body& A, const Body& B, const Body& C, const MixedOptions& opt = {});
/// mu(A; B, C) by a representation formula: n = 1 closed form, n = 2 via dS^mu_{A;B},
/// n >= 3 when B is a segment with an endpoint at the origin.
EvalResult mixed2_formula(const MeasureSpec& mu, const Body& A, const Body& B, const Body& C);
/// mu(A; [0, v], C) by the segment formula (planar A, or a 3-D polytope A).
EvalResult mixed2_segment(const MeasureSpec& mu, const Body& A, const Vec& v, const Body& C);

/// mu^+(boundary of K) = mu(K; B) by finite differences.
EvalResult weighted_surface_area_fd(const MeasureSpec& mu, const Body& K, const MixedOptions& opt = {});

/// Integral of <grad phi, v> over the (n-1)-disk of radius r centered at x, normal to v.
EvalResult disk_normal_flux(const MeasureSpec& mu, const Vec& v, double r, const Vec& x);

/// Homogeneity identities for an alpha-homogeneous measure, each as an equality report.
std::vector<InequalityReport> homogeneity_suite(const MeasureSpec& mu, const Body& A, const Body& B, const Body& C,
                                                double rel_tol = 1e-3, const MixedOptions& opt = {});

/// Integral over t in [0, 1] of f(t) by Gauss-Legendre with `points` nodes.
EvalResult gauss_t_integral(const std::function<EvalResult(double)>& f, int points = 33);

}  // namespace wbm
