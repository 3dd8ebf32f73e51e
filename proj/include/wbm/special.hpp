#pragma once

namespace wbm {

/// Standard normal CDF, computed from the complementary error function.
double normal_cdf(double x);
double normal_pdf(double x);
/// Inverse of normal_cdf on (0, 1); rational initial guess refined by Newton steps.
double normal_quantile(double p);

/// Surface area of the unit sphere in R^n and volume of the unit ball.
double sphere_area(int n);
double ball_volume(int n);

double binomial(int n, int k);

}  // namespace wbm
