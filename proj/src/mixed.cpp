#include "wbm/mixed.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "wbm/errors.hpp"
#include "wbm/kernels.hpp"
#include "wbm/quadrature.hpp"

namespace wbm {

namespace {
constexpr double kEps = std::numeric_limits<double>::epsilon();
}

FDSchedule FDSchedule::standard() {
  FDSchedule s;
  for (int k = 0; k <= 6; ++k) s.epsilons.push_back(0.2 * std::ldexp(1.0, -k));
  return s;
}

void FDSchedule::validate() const {
  if (epsilons.size() < 3) throw InvalidMeasure("FD schedule needs at least 3 step sizes");
  for (std::size_t i = 0; i < epsilons.size(); ++i) {
    if (!(epsilons[i] > 0)) throw InvalidMeasure("FD step sizes must be positive");
    if (i > 0 && !(epsilons[i] < epsilons[i - 1])) throw InvalidMeasure("FD step sizes must decrease");
  }
  if (order < 0) throw InvalidMeasure("Richardson order must be nonnegative");
}

EvalResult richardson(const std::vector<double>& eps, const std::vector<double>& g, const std::vector<double>& errs,
                      int order) {
  const int K = static_cast<int>(eps.size());
  const int m = std::min(order, K - 1);
  std::vector<std::vector<double>> T(K, std::vector<double>(m + 1)), E(K, std::vector<double>(m + 1));
  for (int k = 0; k < K; ++k) {
    T[k][0] = g[k];
    E[k][0] = errs[k];
  }
  for (int j = 1; j <= m; ++j) {
    for (int k = j; k < K; ++k) {
      const double a = eps[k - j], b = eps[k];
      T[k][j] = (a * T[k][j - 1] - b * T[k - 1][j - 1]) / (a - b);
      E[k][j] = (a * E[k][j - 1] + b * E[k - 1][j - 1]) / (a - b);
    }
  }
  const double value = T[K - 1][m];
  const double tail = K - 1 > m ? std::abs(T[K - 1][m] - T[K - 2][m]) : std::abs(T[K - 1][m] - T[K - 1][m - 1]);
  if (K - 1 - m >= 2) {
    const double prev = std::abs(T[K - 2][m] - T[K - 3][m]);
    const double noise = 3 * (E[K - 1][m] + E[K - 2][m] + E[K - 3][m]) + 64 * kEps * std::abs(value);
    if (tail > prev + noise) {
      throw Inconclusive("extrapolants fail to contract (last step " + std::to_string(tail) + ", previous " +
                         std::to_string(prev) + ")");
    }
  }
  return EvalResult::approx(value, tail + E[K - 1][m], Method::fd_extrapolated);
}

namespace {

// Evaluates mu at a list of bodies, independently (possibly in parallel).
std::vector<EvalResult> evaluate_all(const MeasureSpec& mu, const std::vector<Body>& bodies, const EvalOptions& eo) {
  return kernels::map<EvalResult>(bodies.size(), [&](std::size_t i) { return measure(mu, bodies[i], eo); });
}

double noise_of(const EvalResult& r) { return r.abs_error + 8 * kEps * std::abs(r.value); }

}  // namespace

EvalResult mixed1_fd(const MeasureSpec& mu, const Body& K, const Body& L, const MixedOptions& opt) {
  const auto& sch = opt.schedule;
  sch.validate();
  if (K.dim() != L.dim()) throw DimensionMismatch("mixed1_fd: bodies in different dimensions");
  // distinct step sizes: eps_k and, for the two-sided check, 2 eps_k
  std::vector<double> steps = sch.epsilons;
  if (sch.two_sided) {
    for (double e : sch.epsilons) steps.push_back(2 * e);
  }
  std::sort(steps.begin(), steps.end());
  steps.erase(std::unique(steps.begin(), steps.end()), steps.end());
  std::vector<Body> bodies{K};
  for (double e : steps) bodies.push_back(add_scaled(K, e, L));
  const auto vals = evaluate_all(mu, bodies, opt.eval);
  std::map<double, EvalResult> at;
  for (std::size_t i = 0; i < steps.size(); ++i) at[steps[i]] = vals[i + 1];
  const EvalResult base = vals[0];

  std::vector<double> g, ge;
  for (double e : sch.epsilons) {
    const EvalResult& v = at.at(e);
    g.push_back((v.value - base.value) / e);
    ge.push_back((noise_of(v) + noise_of(base)) / e);
  }
  EvalResult fwd = richardson(sch.epsilons, g, ge, sch.order);
  if (sch.two_sided) {
    std::vector<double> h, he;
    for (double e : sch.epsilons) {
      const EvalResult& v1 = at.at(e);
      const EvalResult& v2 = at.at(2 * e);
      h.push_back((v2.value - v1.value) / e);
      he.push_back((noise_of(v1) + noise_of(v2)) / e);
    }
    const EvalResult other = richardson(sch.epsilons, h, he, sch.order);
    const double gap = std::abs(other.value - fwd.value);
    if (gap > 3 * (other.abs_error + fwd.abs_error) + 1e-12 * std::abs(fwd.value)) {
      throw Inconclusive("difference quotients based at K and at K + eps L disagree by " + std::to_string(gap));
    }
  }
  return fwd;
}

EvalResult mixed1_formula(const MeasureSpec& mu, const Body& K, const Body& L) {
  if (K.dim() != L.dim()) throw DimensionMismatch("mixed1_formula: bodies in different dimensions");
  return integrate_support(weighted_surface_measure(mu, K), L);
}

namespace {

EvalResult second_difference(const MeasureSpec& mu, const Body& A, const Body& B, const Body& C, double t_ratio,
                             const MixedOptions& opt) {
  const auto& sch = opt.schedule;
  sch.validate();
  if (A.dim() != B.dim() || A.dim() != C.dim()) throw DimensionMismatch("mixed2: bodies in different dimensions");
  std::vector<Body> bodies{A};
  for (double e : sch.epsilons) {
    const double s = e, t = t_ratio * e;
    bodies.push_back(Body::sum({{1.0, A}, {s, B}, {t, C}}));
    bodies.push_back(add_scaled(A, s, B));
    bodies.push_back(add_scaled(A, t, C));
  }
  const auto vals = evaluate_all(mu, bodies, opt.eval);
  const EvalResult& base = vals[0];
  std::vector<double> g, ge;
  for (std::size_t k = 0; k < sch.epsilons.size(); ++k) {
    const double s = sch.epsilons[k], t = t_ratio * s;
    const EvalResult& st = vals[1 + 3 * k];
    const EvalResult& s0 = vals[2 + 3 * k];
    const EvalResult& t0 = vals[3 + 3 * k];
    g.push_back((st.value - s0.value - t0.value + base.value) / (s * t));
    ge.push_back((noise_of(st) + noise_of(s0) + noise_of(t0) + noise_of(base)) / (s * t));
  }
  return richardson(sch.epsilons, g, ge, sch.order);
}

}  // namespace

EvalResult mixed2_fd(const MeasureSpec& mu, const Body& A, const Body& B, const Body& C, const MixedOptions& opt) {
  return second_difference(mu, A, B, C, 1.0, opt);
}

EvalResult mixed2_fd_grid(const MeasureSpec& mu, const Body& A, const Body& B, const Body& C, const MixedOptions& opt) {
  return second_difference(mu, A, B, C, 0.5, opt);
}

EvalResult weighted_surface_area_fd(const MeasureSpec& mu, const Body& K, const MixedOptions& opt) {
  return mixed1_fd(mu, K, Body::unit_ball(K.dim()), opt);
}

// ---------------------------------------------------------------- segment formula

namespace {

struct Acc {
  double value = 0.0, err = 0.0, mag = 0.0;
  bool exact = true;
  void add(double v, double e, bool is_exact) {
    value += v;
    err += e;
    mag += std::abs(v);
    exact = exact && is_exact;
  }
  EvalResult result() const {
    if (exact) return EvalResult::exact(value);
    return EvalResult::approx(value, err + 16 * kEps * mag, Method::quadrature);
  }
};

// Two-order Gauss-Legendre estimate of the integral of g over [a, b].
template <class G>
std::pair<double, double> gl_pair(G&& g, double a, double b, int order) {
  const double coarse = quad::line(g, a, b, order);
  const double fine = quad::line(g, a, b, 2 * order);
  return {fine, std::abs(fine - coarse)};
}

// Angular intervals of [t0, t1] lying in the open half circle (c - pi/2, c + pi/2) mod 2 pi.
std::vector<std::pair<double, double>> intersect_half(double t0, double t1, double c) {
  std::vector<std::pair<double, double>> out;
  for (int k = -2; k <= 2; ++k) {
    const double lo = std::max(t0, c - kPi / 2 + 2 * kPi * k), hi = std::min(t1, c + kPi / 2 + 2 * kPi * k);
    if (hi > lo) out.emplace_back(lo, hi);
  }
  return out;
}

EvalResult segment_formula_2d(const MeasureSpec& mu, const PolyBall& A, const Vec2& v, const Body& C) {
  Acc acc;
  const double vn = v.norm();
  if (vn == 0.0) return EvalResult::exact(0.0);
  const bool poly = mu.polynomial_density();
  const bool flat = mu.constant_density();
  auto hC = [&](const Vec2& u) { return support(C, from2(u)); };
  const Vec2 vhat = v / vn;

  // faces with normals +-v^perp: point value of phi at the v-forward end of the face
  for (const Vec2& s : {outer_normal(v), Vec2(-outer_normal(v))}) {
    const auto [p, q] = face2(A.P, s);
    const Vec2 y = (q.dot(v) >= p.dot(v) ? q : p) + A.r * s;
    acc.add(hC(s) * vn * mu.profile(y.norm()), 0.0, true);
  }
  if (flat) return acc.result();

  // edges strictly facing v: flux of <grad phi, v> along the edge
  for (int i = 0; i < A.edge_count(); ++i) {
    const Vec2 u = A.edge_normal(i);
    if (u.dot(vhat) <= 1e-12) continue;
    const Vec2 p = A.edge_start(i) + A.r * u, q = A.edge_end(i) + A.r * u;
    const double len = (q - p).norm();
    auto [val, err] = gl_pair([&](double t) { return mu.gradient(Vec2((1 - t) * p + t * q)).dot(v); }, 0.0, 1.0, 16);
    const double h = hC(u);
    acc.add(h * len * val, std::abs(h) * len * (poly ? 0.0 : err), poly);
  }

  // round part: vertex sectors restricted to <u, v> > 0
  if (A.r > 0) {
    std::vector<std::pair<Vec2, std::pair<double, double>>> sectors;
    if (A.P.size() == 1) {
      sectors.push_back({A.P[0], {0.0, 2 * kPi}});
    } else {
      const int m = A.edge_count();
      for (int i = 0; i < m; ++i) {
        const double a0 = angle_of(A.edge_normal((i + m - 1) % m));
        double da = angle_of(A.edge_normal(i)) - a0;
        if (da <= 0) da += 2 * kPi;
        sectors.push_back({A.P[i], {a0, a0 + da}});
      }
    }
    std::vector<double> kinks;
    if (C.dim() == 2) kinks = normal_angles(to_polyball(C));
    const double cv = angle_of(v);
    for (const auto& [w, span] : sectors) {
      for (auto [lo, hi] : intersect_half(span.first, span.second, cv)) {
        std::vector<double> cuts{lo, hi};
        for (double b : kinks) {
          for (int k = -1; k <= 2; ++k) {
            const double t = b + 2 * kPi * k;
            if (t > lo + 1e-12 && t < hi - 1e-12) cuts.push_back(t);
          }
        }
        std::sort(cuts.begin(), cuts.end());
        auto g = [&](double t) {
          const Vec2 u = unit_at(t);
          return A.r * hC(u) * mu.gradient(Vec2(w + A.r * u)).dot(v);
        };
        for (std::size_t j = 0; j + 1 < cuts.size(); ++j) {
          auto [val, err] = gl_pair(g, cuts[j], cuts[j + 1], 32);
          acc.add(val, err, false);
        }
      }
    }
  }
  return acc.result();
}

double triangle3(const std::function<double(const Vec3&)>& f, const Vec3& a, const Vec3& b, const Vec3& c, int order) {
  const double jac = (b - a).cross(c - a).norm();
  return jac * quad::triangle([&](const Vec2& st) { return f(Vec3(a + st.x() * (b - a) + st.y() * (c - a))); },
                              Vec2(0, 0), Vec2(1, 0), Vec2(0, 1), order);
}

EvalResult segment_formula_3d(const MeasureSpec& mu, const Polytope3& P, const Vec3& v, const Body& C) {
  Acc acc;
  const double vn = v.norm();
  if (vn == 0.0) return EvalResult::exact(0.0);
  const Vec3 vhat = v / vn;
  const bool poly = mu.polynomial_density();
  const double tol = 1e-12;
  auto hC = [&](const Vec3& u) { return support(C, from3(u)); };
  auto phi = [&](const Vec3& x) { return mu.profile(x.norm()); };
  auto edge_phi = [&](const Vec3& a, const Vec3& b) {
    return gl_pair([&](double t) { return phi(Vec3((1 - t) * a + t * b)); }, 0.0, 1.0, 16);
  };
  const auto& V = P.vertices;

  std::map<std::pair<int, int>, int> owner;
  for (std::size_t f = 0; f < P.facets.size(); ++f) {
    const auto& loop = P.facets[f].loop;
    for (std::size_t i = 0; i < loop.size(); ++i) owner[{loop[i], loop[(i + 1) % loop.size()]}] = static_cast<int>(f);
  }

  for (const auto& F : P.facets) {
    const double s = F.normal.dot(vhat);
    const double h = hC(F.normal);
    if (s > tol && !mu.constant_density()) {
      auto g = [&](const Vec3& x) { return mu.gradient(from3(x)).dot(from3(v)); };
      double coarse = 0, fine = 0;
      for (std::size_t i = 1; i + 1 < F.loop.size(); ++i) {
        coarse += triangle3(g, V[F.loop[0]], V[F.loop[i]], V[F.loop[i + 1]], 16);
        fine += triangle3(g, V[F.loop[0]], V[F.loop[i]], V[F.loop[i + 1]], 32);
      }
      acc.add(h * fine, poly ? 0.0 : std::abs(h) * std::abs(fine - coarse), poly);
    } else if (std::abs(s) <= tol) {
      // facet parallel to v: boundary flux through its v-forward edges
      for (std::size_t i = 0; i < F.loop.size(); ++i) {
        const Vec3 a = V[F.loop[i]], b = V[F.loop[(i + 1) % F.loop.size()]];
        const Vec3 d = b - a;
        const Vec3 nu = d.cross(F.normal).normalized();
        const double flux = nu.dot(v);
        if (flux <= tol * vn) continue;
        auto [val, err] = edge_phi(a, b);
        const double w = d.norm() * flux;
        acc.add(h * w * val, poly ? 0.0 : std::abs(h) * w * err, mu.constant_density() || poly);
      }
    }
  }
  // silhouette edges between a facet facing v and one facing away
  for (const auto& [e, f1] : owner) {
    auto it = owner.find({e.second, e.first});
    if (it == owner.end()) continue;
    const Vec3 u1 = P.facets[f1].normal, u2 = P.facets[it->second].normal;
    const double s1 = u1.dot(vhat), s2 = u2.dot(vhat);
    if (!(s1 > tol && s2 < -tol)) continue;
    const Vec3 w = (-s2 * u1 + s1 * u2).normalized();
    const Vec3 a = V[e.first], b = V[e.second];
    const double len = (b - a).norm();
    const double cross = ((b - a) / len).cross(v).norm();
    auto [val, err] = edge_phi(a, b);
    const double h = hC(w);
    acc.add(h * cross * len * val, poly ? 0.0 : std::abs(h) * cross * len * err, mu.constant_density() || poly);
  }
  return acc.result();
}

}  // namespace

EvalResult mixed2_segment(const MeasureSpec& mu, const Body& A, const Vec& v, const Body& C) {
  if (A.dim() != v.size() || A.dim() != C.dim() || mu.dim() != A.dim()) {
    throw DimensionMismatch("mixed2_segment: inconsistent dimensions");
  }
  if (A.dim() == 1) {
    return mixed2_formula(mu, A, Body::segment(Vec::Zero(1), v), C);
  }
  if (A.dim() == 2) return segment_formula_2d(mu, to_polyball(A), to2(v), C);
  if (A.dim() == 3) {
    const PolyBall3 pb = to_polyball3(A);
    if (pb.r != 0.0 || pb.P.dimension != 3) {
      throw UnsupportedRepresentation("segment formula in R^3 needs a full-dimensional polytope A");
    }
    return segment_formula_3d(mu, pb.P, to3(v), C);
  }
  throw UnsupportedRepresentation("segment formula implemented for n <= 3");
}

EvalResult mixed2_formula(const MeasureSpec& mu, const Body& A, const Body& B, const Body& C) {
  if (A.dim() != B.dim() || A.dim() != C.dim() || mu.dim() != A.dim()) {
    throw DimensionMismatch("mixed2_formula: inconsistent dimensions");
  }
  const int n = A.dim();
  if (n == 1) {
    const Interval I = to_interval(A);
    const Vec e = make_vec({1.0});
    const double b1 = support(B, e), b0 = support(B, -e), c1 = support(C, e), c0 = support(C, -e);
    const double db = mu.gradient(make_vec({I.hi}))[0], da = mu.gradient(make_vec({I.lo}))[0];
    return EvalResult::exact(db * b1 * c1 - da * b0 * c0);
  }
  if (n == 2) return integrate_support(weighted_mixed_surface_measure(mu, A, B), C);
  if (B.kind() == BodyKind::segment) {
    const Vec& a = B.points()[0];
    const Vec& b = B.points()[1];
    if (a.norm() == 0.0) return mixed2_segment(mu, A, b, C);
    if (b.norm() == 0.0) return mixed2_segment(mu, A, a, C);
  }
  throw UnsupportedCase("mixed2_formula in R^" + std::to_string(n) + " requires B = [0, v]");
}

EvalResult disk_normal_flux(const MeasureSpec& mu, const Vec& v, double r, const Vec& x) {
  const int n = mu.dim();
  if (v.size() != n || x.size() != n) throw DimensionMismatch("disk_normal_flux: inconsistent dimensions");
  if (!(r >= 0)) throw InvalidBody("disk radius must be nonnegative");
  if (v.norm() == 0.0) throw InvalidBody("disk normal must be nonzero");
  const Vec vhat = v.normalized();
  if (mu.constant_density()) return EvalResult::exact(0.0);
  if (n == 1) return EvalResult::exact(mu.gradient(x).dot(vhat));
  if (n == 2) {
    const Vec2 t = Vec2(-vhat[1], vhat[0]);
    const Vec2 c = to2(x), vv = to2(vhat);
    auto g = [&](double s) { return mu.gradient(Vec2(c + s * t)).dot(vv); };
    auto [val, err] = gl_pair(g, -r, r, 32);
    return EvalResult::approx(val, err + 16 * kEps * std::abs(val), Method::quadrature);
  }
  if (n == 3) {
    const Vec3 vv = to3(vhat), c = to3(x);
    const Vec3 e1 = (std::abs(vv.x()) < 0.9 ? Vec3::UnitX() : Vec3::UnitY()).cross(vv).normalized();
    const Vec3 e2 = vv.cross(e1);
    auto polar = [&](int order) {
      return quad::sector(
          [&](const Vec2& p) { return mu.gradient(from3(Vec3(c + p.x() * e1 + p.y() * e2))).dot(from3(vv)); },
          Vec2::Zero(), r, 0.0, 2 * kPi, order);
    };
    const double coarse = polar(24), fine = polar(48);
    return EvalResult::approx(fine, std::abs(fine - coarse) + 16 * kEps * std::abs(fine), Method::quadrature);
  }
  throw UnsupportedCase("disk_normal_flux implemented for n <= 3");
}

EvalResult gauss_t_integral(const std::function<EvalResult(double)>& f, int points) {
  const auto& rule = quad::gauss_legendre(points);
  auto vals = kernels::map<EvalResult>(static_cast<std::size_t>(rule.size()),
                                       [&](std::size_t i) { return f(rule.nodes[i]); });
  Uncertain acc(0.0);
  for (int i = 0; i < rule.size(); ++i) acc = acc + Uncertain(rule.weights[i]) * Uncertain(vals[i]);
  return acc.result();
}

std::vector<InequalityReport> homogeneity_suite(const MeasureSpec& mu, const Body& A, const Body& B, const Body& C,
                                                double rel_tol, const MixedOptions& opt) {
  const auto alpha_opt = mu.homogeneity();
  if (!alpha_opt) throw InvalidMeasure("homogeneity_suite needs an alpha-homogeneous measure");
  const double alpha = *alpha_opt;
  std::vector<InequalityReport> out;
  auto eq = [&](std::string name, const Uncertain& lhs, const Uncertain& rhs) {
    const double tol = rel_tol * std::max(std::abs(lhs.value()), std::abs(rhs.value()));
    auto r = report_eq(std::move(name), lhs.result(), rhs.result(), tol);
    r.measure = mu.name();
    out.push_back(std::move(r));
  };
  const Uncertain muA = measure(mu, A, opt.eval);
  const double t = 1.5;
  eq("dilate_first_mixed", mixed1_fd(mu, dilate(A, t), B, opt),
     Uncertain(std::pow(t, alpha - 1)) * Uncertain(mixed1_fd(mu, A, B, opt)));
  eq("self_mixed", mixed1_fd(mu, A, A, opt), Uncertain(alpha) * muA);
  eq("second_self_slot", mixed2_fd(mu, A, A, C, opt), Uncertain(alpha - 1) * Uncertain(mixed1_fd(mu, A, C, opt)));
  eq("second_self", mixed2_fd(mu, A, A, A, opt), Uncertain(alpha * (alpha - 1)) * muA);
  eq("integral_identity", gauss_t_integral([&](double s) { return mixed1_fd(mu, dilate(A, s), A, opt); }), muA);
  eq("integral_identity_mixed",
     gauss_t_integral([&](double s) { return mixed2_fd(mu, dilate(A, s), A, C, opt); }),
     mixed1_fd(mu, A, C, opt));
  return out;
}

}  // namespace wbm
