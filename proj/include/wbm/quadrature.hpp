#pragma once

#include <vector>

#include "wbm/vec.hpp"

namespace wbm::quad {

/// Gauss-Legendre rule on [0, 1].
struct Rule {
  std::vector<double> nodes;
  std::vector<double> weights;
  int size() const { return static_cast<int>(nodes.size()); }
};

/// Cached rule of order n (1 <= n <= 128). Exact for polynomials of degree 2n-1.
const Rule& gauss_legendre(int n);

/// Integral of f over [a, b].
template <class F>
double line(F&& f, double a, double b, int order) {
  const Rule& r = gauss_legendre(order);
  double s = 0.0;
  for (int i = 0; i < r.size(); ++i) s += r.weights[i] * f(a + (b - a) * r.nodes[i]);
  return s * (b - a);
}

/// Integral of f over the segment [p, q] with respect to arc length.
template <class F>
double segment(F&& f, const Vec2& p, const Vec2& q, int order) {
  const Rule& r = gauss_legendre(order);
  const Vec2 d = q - p;
  double s = 0.0;
  for (int i = 0; i < r.size(); ++i) s += r.weights[i] * f(Vec2(p + r.nodes[i] * d));
  return s * d.norm();
}

/// Integral over triangle (apex, b, c) by the collapsed (Duffy) map with the
/// singular corner at `apex`; exact for polynomials of degree 2n-2.
template <class F>
double triangle(F&& f, const Vec2& apex, const Vec2& b, const Vec2& c, int order) {
  const Rule& r = gauss_legendre(order);
  const double jac = std::abs(cross2(b - apex, c - apex));
  double s = 0.0;
  for (int i = 0; i < r.size(); ++i) {
    const double u = r.nodes[i];
    double inner = 0.0;
    for (int j = 0; j < r.size(); ++j) {
      const double v = r.nodes[j];
      inner += r.weights[j] * f(Vec2(apex + u * ((1 - v) * (b - apex) + v * (c - apex))));
    }
    s += r.weights[i] * u * inner;
  }
  return s * jac;
}

/// Integral over the parallelogram p + a*e1 + b*e2, (a, b) in [0,1]^2.
template <class F>
double parallelogram(F&& f, const Vec2& p, const Vec2& e1, const Vec2& e2, int order) {
  const Rule& r = gauss_legendre(order);
  const double jac = std::abs(cross2(e1, e2));
  double s = 0.0;
  for (int i = 0; i < r.size(); ++i) {
    double inner = 0.0;
    for (int j = 0; j < r.size(); ++j) inner += r.weights[j] * f(Vec2(p + r.nodes[i] * e1 + r.nodes[j] * e2));
    s += r.weights[i] * inner;
  }
  return s * jac;
}

/// Integral over the circular sector {c + rho*u(theta): rho <= radius, theta in [t0, t1]}.
template <class F>
double sector(F&& f, const Vec2& c, double radius, double t0, double t1, int order) {
  const Rule& r = gauss_legendre(order);
  double s = 0.0;
  for (int i = 0; i < r.size(); ++i) {
    const Vec2 u = unit_at(t0 + (t1 - t0) * r.nodes[i]);
    double inner = 0.0;
    for (int j = 0; j < r.size(); ++j) {
      const double rho = radius * r.nodes[j];
      inner += r.weights[j] * rho * f(Vec2(c + rho * u));
    }
    s += r.weights[i] * inner;
  }
  return s * (t1 - t0) * radius;
}

/// Integral over the tetrahedron (apex, b, c, d) via the collapsed cube map.
template <class F>
double tetrahedron(F&& f, const Vec3& apex, const Vec3& b, const Vec3& c, const Vec3& d, int order) {
  const Rule& r = gauss_legendre(order);
  const double jac = std::abs((b - apex).dot((c - apex).cross(d - apex)));
  double s = 0.0;
  for (int i = 0; i < r.size(); ++i) {
    const double u = r.nodes[i];
    for (int j = 0; j < r.size(); ++j) {
      const double v = r.nodes[j];
      for (int k = 0; k < r.size(); ++k) {
        const double w = r.nodes[k];
        // barycentric point on the opposite triangle, then scaled towards the apex
        const Vec3 tri = (1 - v) * (b - apex) + v * ((1 - w) * (c - apex) + w * (d - apex));
        s += r.weights[i] * r.weights[j] * r.weights[k] * u * u * v * f(Vec3(apex + u * tri));
      }
    }
  }
  return s * jac;
}

/// Integral of a polynomial-in-trig monomial cos^i(t) sin^j(t) over [t0, t1], exactly.
double trig_monomial(int i, int j, double t0, double t1);

}  // namespace wbm::quad
