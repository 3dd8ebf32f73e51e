#include "wbm/quadrature.hpp"

#include <array>
#include <complex>
#include <mutex>
#include <stdexcept>

namespace wbm::quad {

namespace {

Rule build(int n) {
  Rule r;
  r.nodes.resize(n);
  r.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    // Newton iteration on P_n from the Chebyshev-like initial guess
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double pk = ((2.0 * k - 1) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
      }
      if (n == 1) {
        p1 = x;
        p0 = 1.0;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double pk = ((2.0 * k - 1) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
      }
      if (n == 1) p0 = 1.0, p1 = x;
      dp = n * (x * p1 - p0) / (x * x - 1.0);
    }
    r.nodes[n - 1 - i] = 0.5 * (x + 1.0);
    r.weights[n - 1 - i] = 1.0 / ((1.0 - x * x) * dp * dp);  // (2/((1-x^2)P'^2)) / 2
  }
  return r;
}

}  // namespace

const Rule& gauss_legendre(int n) {
  constexpr int kMax = 128;
  if (n < 1 || n > kMax) throw std::out_of_range("gauss_legendre order out of range");
  static std::array<Rule, kMax + 1> table;
  static std::array<std::once_flag, kMax + 1> flags;
  std::call_once(flags[n], [n] { table[n] = build(n); });
  return table[n];
}

double trig_monomial(int i, int j, double t0, double t1) {
  // cos^i sin^j = sum_k c_k e^{ikt}; integrate each harmonic exactly
  using C = std::complex<double>;
  std::vector<C> coef(1, C(1.0, 0.0));  // coefficients of e^{i m t}, offset by degree
  int deg = 0;
  auto mul = [&](C a_plus, C a_minus) {
    std::vector<C> next(coef.size() + 2, C(0.0));
    for (std::size_t m = 0; m < coef.size(); ++m) {
      next[m + 2] += coef[m] * a_plus;
      next[m] += coef[m] * a_minus;
    }
    coef.swap(next);
    ++deg;
  };
  for (int k = 0; k < i; ++k) mul(C(0.5, 0.0), C(0.5, 0.0));
  for (int k = 0; k < j; ++k) mul(C(0.0, -0.5), C(0.0, 0.5));
  C total(0.0);
  for (std::size_t m = 0; m < coef.size(); ++m) {
    const int freq = static_cast<int>(m) - deg;
    if (coef[m] == C(0.0)) continue;
    if (freq == 0) {
      total += coef[m] * (t1 - t0);
    } else {
      const C iw(0.0, static_cast<double>(freq));
      total += coef[m] * (std::exp(iw * t1) - std::exp(iw * t0)) / iw;
    }
  }
  return total.real();
}

}  // namespace wbm::quad
