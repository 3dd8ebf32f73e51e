#pragma once

#include <functional>
#include <vector>

#include "wbm/bodies.hpp"
#include "wbm/eval_result.hpp"
#include "wbm/measures.hpp"

namespace wbm {

/// Point mass on the unit sphere; `err` bounds the error in `w`.
struct Atom {
  Vec u;
  double w = 0.0;
  double err = 0.0;
};

/// Density with respect to d(theta) on the angular interval [t0, t1] of the unit circle.
struct Arc {
  double t0 = 0.0, t1 = 0.0;
  std::function<double(double)> density;
};

/// Density with respect to the spherical area element on S^2, with its own error bound.
struct SphereDensity {
  std::function<double(const Vec3&)> density;
};

/// A (possibly signed) measure on S^{n-1}. Atoms are stored as two nonnegative parts;
/// arcs and sphere densities may be signed.
struct SphericalMeasure {
  int dim = 2;
  std::vector<Atom> positive;
  std::vector<Atom> negative;
  std::vector<Arc> arcs;
  std::vector<SphereDensity> sphere;

  void add_atom(const Vec& u, double w, double err = 0.0);
  /// All atoms with signed weights, in insertion order of their parts.
  std::vector<Atom> atoms() const;
  bool exact_atoms() const;

  /// Integral of f against the measure. `breakpoints` are angles where f has kinks (n = 2).
  EvalResult integrate(const std::function<double(const Vec&)>& f, const std::vector<double>& breakpoints = {}) const;
  EvalResult total_mass() const;
  /// Sum of w*u over atoms (closedness check for unweighted surface measures).
  Vec atom_moment() const;
};

/// Angles of the outer edge normals of a planar body (kinks of its support function).
std::vector<double> normal_angles(const PolyBall& K);

/// Integral of the support function of C against m (splits arcs at the kinks of h_C).
EvalResult integrate_support(const SphericalMeasure& m, const Body& C);

/// S_K: facet normals with facet volumes; arcs for planar bodies with a round part.
SphericalMeasure surface_measure(const Body& K);
/// S^mu_K: the push-forward of phi dH^{n-1} on the boundary under the Gauss map.
SphericalMeasure weighted_surface_measure(const MeasureSpec& mu, const Body& K);
/// Integral over the boundary of f(n_K(y)) phi(y).
EvalResult weighted_boundary_integral(const MeasureSpec& mu, const Body& K, const std::function<double(const Vec&)>& f);
/// mu^+(boundary of K), by the boundary integral.
EvalResult weighted_surface_area(const MeasureSpec& mu, const Body& K);

/// The signed measure dS^mu_{A;B} with mu(A;B,C) = integral of h_C (planar A, B).
SphericalMeasure weighted_mixed_surface_measure(const MeasureSpec& mu, const Body& A, const Body& B);

/// Endpoints of the face of a planar polygon in direction u, ordered counter-clockwise.
std::pair<Vec2, Vec2> face2(const std::vector<Vec2>& P, const Vec2& u);

}  // namespace wbm
