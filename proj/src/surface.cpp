#include "wbm/surface.hpp"

#include <algorithm>
#include <cmath>

#include "wbm/errors.hpp"
#include "wbm/quadrature.hpp"

namespace wbm {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr int kArcOrder = 32;
constexpr int kEdgeOrder = 16;

double angle_tol() { return 1e-12; }

}  // namespace

void SphericalMeasure::add_atom(const Vec& u, double w, double err) {
  if (w >= 0) {
    positive.push_back({u, w, err});
  } else {
    negative.push_back({u, -w, err});
  }
}

std::vector<Atom> SphericalMeasure::atoms() const {
  std::vector<Atom> out = positive;
  for (const auto& a : negative) out.push_back({a.u, -a.w, a.err});
  return out;
}

bool SphericalMeasure::exact_atoms() const {
  auto zero = [](const Atom& a) { return a.err == 0.0; };
  return std::all_of(positive.begin(), positive.end(), zero) && std::all_of(negative.begin(), negative.end(), zero);
}

Vec SphericalMeasure::atom_moment() const {
  Vec m = Vec::Zero(dim);
  for (const auto& a : positive) m += a.w * a.u;
  for (const auto& a : negative) m -= a.w * a.u;
  return m;
}

EvalResult SphericalMeasure::integrate(const std::function<double(const Vec&)>& f,
                                       const std::vector<double>& breakpoints) const {
  double value = 0.0, err = 0.0, mag = 0.0;
  bool exact = true;
  // atoms: positive and negative parts summed separately, then combined
  double pos = 0.0, neg = 0.0;
  for (const auto& a : positive) {
    const double fv = f(a.u);
    pos += a.w * fv;
    err += a.err * std::abs(fv);
    if (a.err > 0) exact = false;
  }
  for (const auto& a : negative) {
    const double fv = f(a.u);
    neg += a.w * fv;
    err += a.err * std::abs(fv);
    if (a.err > 0) exact = false;
  }
  value = pos - neg;
  mag = std::abs(pos) + std::abs(neg);
  const std::size_t n_atoms = positive.size() + negative.size();

  for (const auto& arc : arcs) {
    exact = false;
    std::vector<double> cuts{arc.t0, arc.t1};
    for (double b : breakpoints) {
      for (int k = -1; k <= 2; ++k) {
        const double t = b + 2 * kPi * k;
        if (t > arc.t0 + angle_tol() && t < arc.t1 - angle_tol()) cuts.push_back(t);
      }
    }
    std::sort(cuts.begin(), cuts.end());
    auto g = [&](double t) { return arc.density(t) * f(from2(unit_at(t))); };
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
      const double a = cuts[i], b = cuts[i + 1];
      if (b - a <= 0) continue;
      const double coarse = quad::line(g, a, b, kArcOrder);
      const double m = 0.5 * (a + b);
      const double fine = quad::line(g, a, m, kArcOrder) + quad::line(g, m, b, kArcOrder);
      value += fine;
      err += std::abs(fine - coarse);
      mag += std::abs(fine);
    }
  }
  for (const auto& sd : sphere) {
    exact = false;
    auto integrate_sphere = [&](int nz, int nphi) {
      const auto& rule = quad::gauss_legendre(nz);
      double s = 0.0;
      for (int i = 0; i < rule.size(); ++i) {
        const double z = -1 + 2 * rule.nodes[i];
        const double rho = std::sqrt(std::max(0.0, 1 - z * z));
        double ring = 0.0;
        for (int j = 0; j < nphi; ++j) {
          const double ph = 2 * kPi * (j + 0.5) / nphi;
          const Vec3 u(rho * std::cos(ph), rho * std::sin(ph), z);
          ring += sd.density(u) * f(from3(u));
        }
        s += rule.weights[i] * 2 * ring * (2 * kPi / nphi);
      }
      return s;
    };
    const double coarse = integrate_sphere(32, 64);
    const double fine = integrate_sphere(48, 96);
    value += fine;
    err += std::abs(fine - coarse);
    mag += std::abs(fine);
  }
  if (exact) {
    // atoms with exact weights: only rounding in the sum
    if (n_atoms == 0) return EvalResult::exact(0.0);
    const double round = 4 * kEps * mag * static_cast<double>(n_atoms);
    return round == 0.0 ? EvalResult::exact(value) : EvalResult::approx(value, round, Method::quadrature);
  }
  err += 16 * kEps * mag;
  return EvalResult::approx(value, err, Method::quadrature);
}

EvalResult SphericalMeasure::total_mass() const {
  return integrate([](const Vec&) { return 1.0; });
}

std::vector<double> normal_angles(const PolyBall& K) {
  std::vector<double> out;
  for (int i = 0; i < K.edge_count(); ++i) out.push_back(angle_of(K.edge_normal(i)));
  return out;
}

EvalResult integrate_support(const SphericalMeasure& m, const Body& C) {
  std::vector<double> bp;
  if (C.dim() == 2 && m.dim == 2) bp = normal_angles(to_polyball(C));
  return m.integrate([&](const Vec& u) { return support(C, u); }, bp);
}

std::pair<Vec2, Vec2> face2(const std::vector<Vec2>& P, const Vec2& u) {
  double h = -std::numeric_limits<double>::infinity();
  double scale = 0.0;
  for (const auto& p : P) {
    h = std::max(h, p.dot(u));
    scale = std::max(scale, p.norm());
  }
  const double tol = 1e-12 * std::max(1.0, scale);
  const Vec2 t(-u.y(), u.x());  // counter-clockwise tangent
  Vec2 lo = Vec2::Zero(), hi = Vec2::Zero();
  double tlo = std::numeric_limits<double>::infinity(), thi = -tlo;
  for (const auto& p : P) {
    if (p.dot(u) < h - tol) continue;
    const double s = p.dot(t);
    if (s < tlo) {
      tlo = s;
      lo = p;
    }
    if (s > thi) {
      thi = s;
      hi = p;
    }
  }
  return {lo, hi};
}

namespace {

struct LineIntegral {
  double value = 0.0, err = 0.0;
};

// integral over tau in [0,1] of g(tau), with an order-doubling error estimate
template <class G>
LineIntegral unit_line(G&& g, bool polynomial) {
  const double coarse = quad::line(g, 0.0, 1.0, kEdgeOrder);
  const double fine = quad::line(g, 0.0, 1.0, 2 * kEdgeOrder);
  LineIntegral r;
  r.value = fine;
  r.err = polynomial ? 0.0 : std::abs(fine - coarse) + 16 * kEps * std::abs(fine);
  return r;
}

// Sorted, deduplicated union of angle lists in [0, 2pi).
std::vector<double> merge_angles(std::vector<double> a) {
  std::sort(a.begin(), a.end());
  std::vector<double> out;
  for (double t : a) {
    if (out.empty() || t - out.back() > 1e-12) out.push_back(t);
  }
  if (out.size() > 1 && out.front() + 2 * kPi - out.back() <= 1e-12) out.pop_back();
  return out;
}

Vec2 extreme_vertex(const std::vector<Vec2>& P, const Vec2& u) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < P.size(); ++i) {
    if (P[i].dot(u) > P[best].dot(u)) best = i;
  }
  return P[best];
}

// Angular intervals between consecutive normals (the whole circle when there are none).
std::vector<std::pair<double, double>> gaps(std::vector<double> normals) {
  if (normals.empty()) return {{0.0, 2 * kPi}};
  std::sort(normals.begin(), normals.end());
  std::vector<std::pair<double, double>> out;
  for (std::size_t i = 0; i < normals.size(); ++i) {
    const double a = normals[i];
    double b = i + 1 < normals.size() ? normals[i + 1] : normals[0] + 2 * kPi;
    if (b - a > 1e-12) out.emplace_back(a, b);
  }
  return out;
}

SphericalMeasure surface_measure_1d(const Body& K, const MeasureSpec* mu) {
  const Interval I = to_interval(K);
  SphericalMeasure m;
  m.dim = 1;
  m.add_atom(make_vec({1.0}), mu ? mu->profile(std::abs(I.hi)) : 1.0);
  m.add_atom(make_vec({-1.0}), mu ? mu->profile(std::abs(I.lo)) : 1.0);
  return m;
}

SphericalMeasure planar_weighted(const MeasureSpec* mu, const PolyBall& K) {
  SphericalMeasure m;
  m.dim = 2;
  const bool poly = !mu || mu->polynomial_density();
  for (int i = 0; i < K.edge_count(); ++i) {
    const Vec2 u = K.edge_normal(i);
    const Vec2 p = K.edge_start(i) + K.r * u, q = K.edge_end(i) + K.r * u;
    const double len = (q - p).norm();
    if (!mu) {
      m.add_atom(from2(u), len);
      continue;
    }
    auto li = unit_line([&](double t) { return mu->profile(((1 - t) * p + t * q).norm()); }, poly);
    m.add_atom(from2(u), len * li.value, len * li.err);
  }
  if (K.r > 0) {
    const double r = K.r;
    for (const auto& [a, b] : gaps(normal_angles(K))) {
      const double mid = 0.5 * (a + b);
      const Vec2 w = extreme_vertex(K.P, unit_at(mid));
      if (!mu) {
        m.arcs.push_back({a, b, [r](double) { return r; }});
      } else {
        const MeasureSpec muc = *mu;
        m.arcs.push_back({a, b, [muc, w, r](double t) { return r * muc.profile((w + r * unit_at(t)).norm()); }});
      }
    }
  }
  return m;
}

double facet_integral3(const MeasureSpec& mu, const std::vector<Vec3>& loop, int order) {
  double s = 0.0;
  for (std::size_t i = 1; i + 1 < loop.size(); ++i) {
    const Vec3 a = loop[0], b = loop[i], c = loop[i + 1];
    const double jac = (b - a).cross(c - a).norm();
    s += jac * quad::triangle(
                   [&](const Vec2& st) { return mu.profile((a + st.x() * (b - a) + st.y() * (c - a)).norm()); },
                   Vec2(0, 0), Vec2(1, 0), Vec2(0, 1), order);
  }
  return s;
}

SphericalMeasure spatial_weighted(const MeasureSpec* mu, const Body& K) {
  const PolyBall3 pb = to_polyball3(K);
  SphericalMeasure m;
  m.dim = 3;
  if (pb.r == 0.0) {
    if (pb.P.dimension == 3) {
      for (const auto& f : pb.P.facets) {
        std::vector<Vec3> loop;
        for (int v : f.loop) loop.push_back(pb.P.vertices[v]);
        if (!mu) {
          m.add_atom(from3(f.normal), f.area);
        } else {
          const double coarse = facet_integral3(*mu, loop, kEdgeOrder);
          const double fine = facet_integral3(*mu, loop, 2 * kEdgeOrder);
          m.add_atom(from3(f.normal), fine, mu->polynomial_density() ? 0.0 : std::abs(fine - coarse) + 16 * kEps * fine);
        }
      }
      return m;
    }
    if (pb.P.dimension == 2) {
      // a planar polygon contributes both of its sides
      const auto& V = pb.P.vertices;
      Vec3 nrm = Vec3::Zero();
      for (std::size_t i = 1; i < V.size() && nrm.norm() < 1e-9; ++i) {
        for (std::size_t j = i + 1; j < V.size() && nrm.norm() < 1e-9; ++j) nrm = (V[i] - V[0]).cross(V[j] - V[0]);
      }
      nrm.normalize();
      const Vec3 e1 = (std::abs(nrm.x()) < 0.9 ? Vec3::UnitX() : Vec3::UnitY()).cross(nrm).normalized();
      const Vec3 e2 = nrm.cross(e1);
      std::vector<Vec2> proj;
      for (const auto& v : V) proj.emplace_back((v - V[0]).dot(e1), (v - V[0]).dot(e2));
      std::vector<Vec3> loop;
      for (const auto& q : hull2d(proj)) loop.push_back(V[0] + q.x() * e1 + q.y() * e2);
      double w = std::abs(polygon_area(hull2d(proj))), err = 0.0;
      if (mu) {
        const double coarse = facet_integral3(*mu, loop, kEdgeOrder);
        w = facet_integral3(*mu, loop, 2 * kEdgeOrder);
        err = mu->polynomial_density() ? 0.0 : std::abs(w - coarse) + 16 * kEps * w;
      }
      m.add_atom(from3(nrm), w, err);
      m.add_atom(from3(Vec3(-nrm)), w, err);
      return m;
    }
    return m;  // segments and points have no surface measure in R^3
  }
  if (pb.P.dimension == 0) {
    const Vec3 c = pb.P.vertices[0];
    const double r = pb.r;
    if (!mu) {
      m.sphere.push_back({[r](const Vec3&) { return r * r; }});
    } else {
      const MeasureSpec muc = *mu;
      m.sphere.push_back({[muc, c, r](const Vec3& u) { return r * r * muc.profile((c + r * u).norm()); }});
    }
    return m;
  }
  throw UnsupportedRepresentation("surface measure of a polytope plus a ball in R^3");
}

SphericalMeasure dispatch(const MeasureSpec* mu, const Body& K) {
  if (mu && mu->dim() != K.dim()) throw DimensionMismatch("measure and body dimensions differ");
  switch (K.dim()) {
    case 1:
      return surface_measure_1d(K, mu);
    case 2:
      return planar_weighted(mu, to_polyball(K));
    case 3:
      return spatial_weighted(mu, K);
    default:
      break;
  }
  if (K.polytopal() || (K.kind() == BodyKind::ball && K.radius() > 0)) {
    throw UnsupportedRepresentation("surface measures are implemented for n <= 3");
  }
  throw UnsupportedRepresentation("surface measure of " + describe(K));
}

}  // namespace

SphericalMeasure surface_measure(const Body& K) { return dispatch(nullptr, K); }

SphericalMeasure weighted_surface_measure(const MeasureSpec& mu, const Body& K) { return dispatch(&mu, K); }

EvalResult weighted_boundary_integral(const MeasureSpec& mu, const Body& K, const std::function<double(const Vec&)>& f) {
  return weighted_surface_measure(mu, K).integrate(f);
}

EvalResult weighted_surface_area(const MeasureSpec& mu, const Body& K) {
  return weighted_surface_measure(mu, K).total_mass();
}

SphericalMeasure weighted_mixed_surface_measure(const MeasureSpec& mu, const Body& A, const Body& B) {
  if (A.dim() != B.dim() || mu.dim() != A.dim()) throw DimensionMismatch("measure and bodies must share the dimension");
  if (A.dim() != 2) throw UnsupportedCase("weighted mixed surface measure is implemented for n = 2");
  const PolyBall pa = to_polyball(A), pb = to_polyball(B);
  const bool poly = mu.polynomial_density();
  SphericalMeasure m;
  m.dim = 2;

  std::vector<double> angles = normal_angles(pa);
  for (double t : normal_angles(pb)) angles.push_back(t);
  angles = merge_angles(angles);

  for (double th : angles) {
    const Vec2 u = unit_at(th);
    const auto [p, q] = face2(pa.P, u);
    const auto [b1, b2] = face2(pb.P, u);
    const double la = (q - p).norm(), lb = (b2 - b1).norm();
    const Vec2 shift = pa.r * u;
    auto x = [&](double t) { return Vec2((1 - t) * p + t * q + shift); };
    double w = 0.0, err = 0.0;
    if (lb > 0) {
      auto avg = unit_line([&](double t) { return mu.profile(x(t).norm()); }, poly);
      w += lb * avg.value;
      err += lb * avg.err;
    }
    if (la > 0 && !mu.constant_density()) {
      auto grad = unit_line(
          [&](double t) {
            const Vec2 dir = b1 + pb.r * u + t * (b2 - b1);
            return mu.gradient(x(t)).dot(dir);
          },
          poly);
      w += la * grad.value;
      err += la * grad.err;
    }
    if (w != 0.0 || err != 0.0) m.add_atom(from2(u), w, err);
  }
  if (pa.r > 0 || pb.r > 0) {
    const double ra = pa.r, rb = pb.r;
    for (const auto& [a, b] : gaps(angles)) {
      const Vec2 mid = unit_at(0.5 * (a + b));
      const Vec2 wa = extreme_vertex(pa.P, mid), wb = extreme_vertex(pb.P, mid);
      const MeasureSpec muc = mu;
      m.arcs.push_back({a, b, [muc, wa, wb, ra, rb](double t) {
                          const Vec2 u = unit_at(t);
                          const Vec2 y = wa + ra * u;
                          double d = rb * muc.profile(y.norm());
                          if (ra > 0) d += ra * muc.gradient(y).dot(Vec2(wb + rb * u));
                          return d;
                        }});
    }
  }
  return m;
}

}  // namespace wbm
