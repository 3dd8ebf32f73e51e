#include "wbm/measures.hpp"

#include <array>
#include <functional>
#include <cmath>
#include <random>
#include <sstream>

#include "wbm/errors.hpp"
#include "wbm/kernels.hpp"
#include "wbm/lp.hpp"
#include "wbm/quadrature.hpp"
#include "wbm/special.hpp"

namespace wbm {

// ---------------------------------------------------------------- MeasureSpec

namespace {

void check_dim(int n) {
  if (n < 1) throw InvalidMeasure("measure dimension must be >= 1");
}

bool is_even_integer(double p) { return p >= 0 && std::floor(p) == p && std::fmod(p, 2.0) == 0.0; }

}  // namespace

MeasureSpec MeasureSpec::lebesgue(int n) {
  check_dim(n);
  MeasureSpec m;
  m.kind_ = DensityKind::lebesgue;
  m.dim_ = n;
  return m;
}

MeasureSpec MeasureSpec::gaussian(int n) {
  check_dim(n);
  MeasureSpec m;
  m.kind_ = DensityKind::gaussian;
  m.dim_ = n;
  return m;
}

MeasureSpec MeasureSpec::radial_power(int n, double p) {
  check_dim(n);
  if (!(p >= 0) || !std::isfinite(p)) throw InvalidMeasure("radial power exponent must be finite and >= 0");
  MeasureSpec m;
  m.kind_ = DensityKind::radial_power;
  m.dim_ = n;
  m.param_ = p;
  return m;
}

MeasureSpec MeasureSpec::radial_exp_half_square(int n) {
  check_dim(n);
  MeasureSpec m;
  m.kind_ = DensityKind::radial_exp;
  m.family_ = WFamily::half_square;
  m.dim_ = n;
  return m;
}

MeasureSpec MeasureSpec::radial_exp_power(int n, double q) {
  check_dim(n);
  if (!(q >= 1) || !std::isfinite(q)) throw InvalidMeasure("W(r) = r^q requires q >= 1");
  MeasureSpec m;
  m.kind_ = DensityKind::radial_exp;
  m.family_ = WFamily::power;
  m.dim_ = n;
  m.param_ = q;
  return m;
}

MeasureSpec MeasureSpec::radial_exp_log(int n, double c) {
  check_dim(n);
  if (!(c > 0) || !std::isfinite(c)) throw InvalidMeasure("W(r) = c log(1 + r) requires c > 0");
  MeasureSpec m;
  m.kind_ = DensityKind::radial_exp;
  m.family_ = WFamily::log1p;
  m.dim_ = n;
  m.param_ = c;
  return m;
}

MeasureSpec MeasureSpec::with_dim(int n) const {
  check_dim(n);
  MeasureSpec m = *this;
  m.dim_ = n;
  return m;
}

double MeasureSpec::W(double r) const {
  switch (kind_) {
    case DensityKind::lebesgue:
      return 0.0;
    case DensityKind::gaussian:
      return 0.5 * r * r + 0.5 * dim_ * std::log(2 * kPi);
    case DensityKind::radial_power:
      return -param_ * std::log(r);
    case DensityKind::radial_exp:
      switch (family_) {
        case WFamily::half_square:
          return 0.5 * r * r;
        case WFamily::power:
          return std::pow(r, param_);
        case WFamily::log1p:
          return param_ * std::log1p(r);
      }
  }
  return 0.0;
}

double MeasureSpec::profile(double r) const {
  switch (kind_) {
    case DensityKind::lebesgue:
      return 1.0;
    case DensityKind::gaussian:
      return std::exp(-0.5 * r * r) * std::pow(2 * kPi, -0.5 * dim_);
    case DensityKind::radial_power:
      if (param_ == 0.0) return 1.0;
      if (param_ == 2.0) return r * r;
      return std::pow(r, param_);
    case DensityKind::radial_exp:
      return std::exp(-W(r));
  }
  return 0.0;
}

double MeasureSpec::profile_derivative(double r) const {
  switch (kind_) {
    case DensityKind::lebesgue:
      return 0.0;
    case DensityKind::gaussian:
      return -r * profile(r);
    case DensityKind::radial_power:
      if (param_ == 0.0) return 0.0;
      if (param_ == 2.0) return 2 * r;
      if (r == 0.0) return param_ > 1 ? 0.0 : (param_ == 1 ? 1.0 : std::numeric_limits<double>::infinity());
      return param_ * std::pow(r, param_ - 1);
    case DensityKind::radial_exp: {
      double dW = 0.0;
      switch (family_) {
        case WFamily::half_square:
          dW = r;
          break;
        case WFamily::power:
          dW = r == 0.0 ? (param_ > 1 ? 0.0 : 1.0) : param_ * std::pow(r, param_ - 1);
          break;
        case WFamily::log1p:
          dW = param_ / (1 + r);
          break;
      }
      return -dW * profile(r);
    }
  }
  return 0.0;
}

Vec MeasureSpec::gradient(const Vec& x) const {
  const double r = x.norm();
  if (r == 0.0 || constant_density()) return Vec::Zero(x.size());
  if (kind_ == DensityKind::radial_power && param_ == 2.0) return 2 * x;
  if (kind_ == DensityKind::gaussian) return -profile(r) * x;
  return (profile_derivative(r) / r) * x;
}

Vec2 MeasureSpec::gradient(const Vec2& x) const {
  const double r = x.norm();
  if (r == 0.0 || constant_density()) return Vec2::Zero();
  if (kind_ == DensityKind::radial_power && param_ == 2.0) return 2 * x;
  if (kind_ == DensityKind::gaussian) return -profile(r) * x;
  return (profile_derivative(r) / r) * x;
}

std::optional<double> MeasureSpec::homogeneity() const {
  if (kind_ == DensityKind::lebesgue) return static_cast<double>(dim_);
  if (kind_ == DensityKind::radial_power) return dim_ + param_;
  return std::nullopt;
}

bool MeasureSpec::constant_density() const {
  return kind_ == DensityKind::lebesgue || (kind_ == DensityKind::radial_power && param_ == 0.0);
}

bool MeasureSpec::polynomial_density() const {
  return kind_ == DensityKind::lebesgue || (kind_ == DensityKind::radial_power && is_even_integer(param_));
}

bool MeasureSpec::smooth_at_origin() const {
  switch (kind_) {
    case DensityKind::lebesgue:
    case DensityKind::gaussian:
      return true;
    case DensityKind::radial_power:
      return is_even_integer(param_);
    case DensityKind::radial_exp:
      return family_ == WFamily::half_square || (family_ == WFamily::power && is_even_integer(param_));
  }
  return false;
}

bool MeasureSpec::c1_density() const {
  switch (kind_) {
    case DensityKind::lebesgue:
    case DensityKind::gaussian:
      return true;
    case DensityKind::radial_power:
      return param_ == 0.0 || param_ > 1.0;
    case DensityKind::radial_exp:
      return family_ == WFamily::half_square || (family_ == WFamily::power && param_ > 1.0);
  }
  return false;
}

double MeasureSpec::total_mass() const {
  switch (kind_) {
    case DensityKind::gaussian:
      return 1.0;
    case DensityKind::radial_exp: {
      // integral of exp(-W(r)) |S^{n-1}| r^{n-1} dr
      if (family_ == WFamily::half_square) return std::pow(2 * kPi, 0.5 * dim_);
      if (family_ == WFamily::power) return sphere_area(dim_) * std::tgamma(dim_ / param_) / param_;
      if (param_ <= dim_) return std::numeric_limits<double>::infinity();
      // Beta-function form of integral r^{n-1} (1+r)^{-c}
      return sphere_area(dim_) * std::tgamma(dim_) * std::tgamma(param_ - dim_) / std::tgamma(param_);
    }
    default:
      return std::numeric_limits<double>::infinity();
  }
}

std::string MeasureSpec::name() const {
  std::ostringstream os;
  switch (kind_) {
    case DensityKind::lebesgue:
      os << "lebesgue";
      break;
    case DensityKind::gaussian:
      os << "gaussian";
      break;
    case DensityKind::radial_power:
      os << "radial_power(p=" << param_ << ")";
      break;
    case DensityKind::radial_exp:
      switch (family_) {
        case WFamily::half_square:
          os << "radial_exp(half_square)";
          break;
        case WFamily::power:
          os << "radial_exp(power,q=" << param_ << ")";
          break;
        case WFamily::log1p:
          os << "radial_exp(log,c=" << param_ << ")";
          break;
      }
      break;
  }
  os << "/n=" << dim_;
  return os.str();
}

bool in_radial_class(const MeasureSpec& mu) {
  if (mu.kind() != DensityKind::radial_exp && mu.kind() != DensityKind::gaussian) return false;
  const int N = 200;
  double prev = mu.W(1e-3);
  for (int i = 1; i <= N; ++i) {
    const double r = 1e-3 + 20.0 * i / N;
    const double w = mu.W(r);
    if (w < prev - 1e-12) return false;
    prev = w;
  }
  // midpoint convexity of t -> W(e^t) on [-6, 4]
  const double h = 0.05;
  for (double t = -6; t <= 4; t += h) {
    const double a = mu.W(std::exp(t - h)), b = mu.W(std::exp(t)), c = mu.W(std::exp(t + h));
    if (a + c - 2 * b < -1e-10 * (1 + std::abs(b))) return false;
  }
  return true;
}

// ---------------------------------------------------------------- exact planar integrals

double polygon_monomial(const std::vector<Vec2>& poly, int a, int b) {
  if (poly.size() < 3) return 0.0;
  // Green: integral over P of x^a y^b = boundary integral of x^(a+1) y^b / (a+1) dy
  const int order = (a + b + 2) / 2 + 1;
  double s = 0.0;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Vec2 p = poly[i], q = poly[(i + 1) % poly.size()];
    const Vec2 d = q - p;
    if (d.y() == 0.0) continue;
    s += d.y() * quad::line(
                     [&](double t) {
                       const double x = p.x() + t * d.x(), y = p.y() + t * d.y();
                       return std::pow(x, a + 1) * std::pow(y, b);
                     },
                     0.0, 1.0, order);
  }
  return s / (a + 1);
}

double sector_monomial(const Vec2& c, double r, double t0, double t1, int a, int b) {
  // (cx + rho cos)^a (cy + rho sin)^b rho, expanded binomially
  double s = 0.0;
  for (int i = 0; i <= a; ++i) {
    for (int j = 0; j <= b; ++j) {
      const double coef = binomial(a, i) * binomial(b, j) * std::pow(c.x(), a - i) * std::pow(c.y(), b - j);
      if (coef == 0.0) continue;
      const int k = i + j;
      s += coef * std::pow(r, k + 2) / (k + 2) * quad::trig_monomial(i, j, t0, t1);
    }
  }
  return s;
}

namespace {

// Pieces of P + rB: the polygon, one rectangle per edge, one sector per vertex.
struct Sector {
  Vec2 c;
  double t0, t1;
};

std::vector<std::array<Vec2, 4>> edge_rectangles(const PolyBall& K) {
  std::vector<std::array<Vec2, 4>> out;
  if (K.r == 0.0) return out;
  for (int i = 0; i < K.edge_count(); ++i) {
    const Vec2 p = K.edge_start(i), q = K.edge_end(i);
    const Vec2 n = K.r * K.edge_normal(i);
    out.push_back({p, Vec2(p + n), Vec2(q + n), q});
  }
  return out;
}

std::vector<Sector> vertex_sectors(const PolyBall& K) {
  std::vector<Sector> out;
  if (K.r == 0.0) return out;
  if (K.P.size() == 1) return {{K.P[0], 0.0, 2 * kPi}};
  const int m = K.edge_count();
  for (int i = 0; i < m; ++i) {
    const double a0 = angle_of(K.edge_normal((i + m - 1) % m));
    double da = angle_of(K.edge_normal(i)) - a0;
    if (da <= 0) da += 2 * kPi;
    out.push_back({K.P[i], a0, a0 + da});
  }
  return out;
}

double polynomial_over_polyball(const PolyBall& K, const std::vector<std::pair<double, std::array<int, 2>>>& terms) {
  double s = 0.0;
  for (const auto& [coef, ab] : terms) {
    double t = polygon_monomial(K.P, ab[0], ab[1]);
    for (const auto& rect : edge_rectangles(K)) t += polygon_monomial({rect.begin(), rect.end()}, ab[0], ab[1]);
    for (const auto& sec : vertex_sectors(K)) t += sector_monomial(sec.c, K.r, sec.t0, sec.t1, ab[0], ab[1]);
    s += coef * t;
  }
  return s;
}

std::vector<std::pair<double, std::array<int, 2>>> radial_power_terms(double p) {
  const int m = static_cast<int>(p / 2);
  std::vector<std::pair<double, std::array<int, 2>>> terms;
  for (int k = 0; k <= m; ++k) terms.push_back({binomial(m, k), {2 * k, 2 * (m - k)}});
  return terms;
}

constexpr double kEps = std::numeric_limits<double>::epsilon();

double roundoff_floor(double magnitude, double evals) { return 16 * kEps * magnitude * std::sqrt(std::max(evals, 1.0)); }

// ---------------------------------------------------------------- planar quadrature

struct PieceEstimate {
  double coarse = 0.0, fine = 0.0, magnitude = 0.0;
};

template <class F>
PieceEstimate triangle_estimate(F&& f, const Vec2& a, const Vec2& b, const Vec2& c, int order) {
  PieceEstimate e;
  e.coarse = quad::triangle(f, a, b, c, order);
  const Vec2 ab = 0.5 * (a + b), ac = 0.5 * (a + c), bc = 0.5 * (b + c);
  e.fine = quad::triangle(f, a, ab, ac, order) + quad::triangle(f, ab, b, bc, order) +
           quad::triangle(f, ac, bc, c, order) + quad::triangle(f, bc, ac, ab, order);
  e.magnitude = std::abs(e.fine);
  return e;
}

template <class F>
PieceEstimate parallelogram_estimate(F&& f, const Vec2& p, const Vec2& e1, const Vec2& e2, int order) {
  PieceEstimate e;
  e.coarse = quad::parallelogram(f, p, e1, e2, order);
  const Vec2 h1 = 0.5 * e1, h2 = 0.5 * e2;
  e.fine = quad::parallelogram(f, p, h1, h2, order) + quad::parallelogram(f, Vec2(p + h1), h1, h2, order) +
           quad::parallelogram(f, Vec2(p + h2), h1, h2, order) + quad::parallelogram(f, Vec2(p + h1 + h2), h1, h2, order);
  e.magnitude = std::abs(e.fine);
  return e;
}

template <class F>
double annular_sector(F&& f, const Vec2& c, double r0, double r1, double t0, double t1, int order) {
  const auto& rule = quad::gauss_legendre(order);
  double s = 0.0;
  for (int i = 0; i < rule.size(); ++i) {
    const Vec2 u = unit_at(t0 + (t1 - t0) * rule.nodes[i]);
    double inner = 0.0;
    for (int j = 0; j < rule.size(); ++j) {
      const double rho = r0 + (r1 - r0) * rule.nodes[j];
      inner += rule.weights[j] * rho * f(Vec2(c + rho * u));
    }
    s += rule.weights[i] * inner;
  }
  return s * (t1 - t0) * (r1 - r0);
}

template <class F>
PieceEstimate sector_estimate(F&& f, const Vec2& c, double r, double t0, double t1, int order) {
  PieceEstimate e;
  e.coarse = annular_sector(f, c, 0.0, r, t0, t1, order);
  const double tm = 0.5 * (t0 + t1), rm = 0.5 * r;
  e.fine = annular_sector(f, c, 0.0, rm, t0, tm, order) + annular_sector(f, c, 0.0, rm, tm, t1, order) +
           annular_sector(f, c, rm, r, t0, tm, order) + annular_sector(f, c, rm, r, tm, t1, order);
  e.magnitude = std::abs(e.fine);
  return e;
}

Vec2 vertex_average(const std::vector<Vec2>& P) {
  Vec2 c = Vec2::Zero();
  for (const auto& p : P) c += p;
  return c / static_cast<double>(P.size());
}

// ---------------------------------------------------------------- QMC

double radical_inverse(std::uint64_t i, int base) {
  double f = 1.0, x = 0.0;
  while (i > 0) {
    f /= base;
    x += f * static_cast<double>(i % base);
    i /= base;
  }
  return x;
}

constexpr int kPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71};

using Membership = std::function<bool(const Vec&)>;

double distance_to_lowdim3(const Polytope3& P, const Vec3& x) {
  const auto& V = P.vertices;
  if (P.dimension == 0) return (x - V[0]).norm();
  if (P.dimension == 1) {
    Vec3 d = Vec3::Zero();
    for (const auto& v : V) {
      if ((v - V[0]).norm() > d.norm()) d = v - V[0];
    }
    const Vec3 dir = d.normalized();
    double lo = 0, hi = 0;
    for (const auto& v : V) {
      lo = std::min(lo, (v - V[0]).dot(dir));
      hi = std::max(hi, (v - V[0]).dot(dir));
    }
    const double t = std::clamp((x - V[0]).dot(dir), lo, hi);
    return (x - (V[0] + t * dir)).norm();
  }
  // planar polygon: find the plane, then distance = sqrt(normal offset^2 + in-plane distance^2)
  Vec3 nrm = Vec3::Zero();
  for (std::size_t i = 1; i < V.size() && nrm.norm() < 1e-9; ++i) {
    for (std::size_t j = i + 1; j < V.size() && nrm.norm() < 1e-9; ++j) nrm = (V[i] - V[0]).cross(V[j] - V[0]);
  }
  nrm.normalize();
  const Vec3 e1 = (std::abs(nrm.x()) < 0.9 ? Vec3::UnitX() : Vec3::UnitY()).cross(nrm).normalized();
  const Vec3 e2 = nrm.cross(e1);
  std::vector<Vec2> proj;
  for (const auto& v : V) proj.emplace_back((v - V[0]).dot(e1), (v - V[0]).dot(e2));
  PolyBall pb{hull2d(proj), 0.0};
  const Vec3 rel = x - V[0];
  const double h = rel.dot(nrm);
  const double d2 = pb.distance_to_polygon(Vec2(rel.dot(e1), rel.dot(e2)));
  return std::sqrt(h * h + d2 * d2);
}

Membership make_membership(const Body& K) {
  const int n = K.dim();
  if (n == 1) {
    const Interval I = to_interval(K);
    return [I](const Vec& x) { return x[0] >= I.lo && x[0] <= I.hi; };
  }
  if (n == 2) {
    auto pb = std::make_shared<PolyBall>(to_polyball(K));
    return [pb](const Vec& x) { return pb->contains(to2(x)); };
  }
  if (n == 3) {
    auto pb = std::make_shared<PolyBall3>(to_polyball3(K));
    if (pb->P.dimension == 3) {
      if (pb->r == 0.0) return [pb](const Vec& x) { return pb->P.contains(to3(x), 0.0); };
      return [pb](const Vec& x) { return pb->P.distance(to3(x)) <= pb->r; };
    }
    return [pb](const Vec& x) { return distance_to_lowdim3(pb->P, to3(x)) <= pb->r; };
  }
  if (K.kind() == BodyKind::ball) {
    return [c = K.center(), r = K.radius()](const Vec& x) { return (x - c).norm() <= r; };
  }
  if (K.kind() == BodyKind::zonotope) {
    // x in Z iff x - center = G lambda with lambda in [-1, 1]^m
    const int m = static_cast<int>(K.points().size());
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n + m, 2 * m);
    Vec gsum = Vec::Zero(n);
    for (int i = 0; i < m; ++i) {
      A.block(0, i, n, 1) = K.points()[i];
      gsum += K.points()[i];
      A(n + i, i) = 1.0;
      A(n + i, m + i) = 1.0;
    }
    return [A, gsum, c = K.center(), n, m](const Vec& x) {
      Eigen::VectorXd b(n + m);
      b.head(n) = x - c + gsum;
      b.tail(m).setConstant(2.0);
      return lp_feasible(A, b).has_value();
    };
  }
  if (K.polytopal()) {
    const PointList v = vertices_of(K);
    Eigen::MatrixXd pts(n, static_cast<Eigen::Index>(v.size()));
    for (std::size_t i = 0; i < v.size(); ++i) pts.col(static_cast<Eigen::Index>(i)) = v[i];
    return [pts](const Vec& x) { return in_convex_hull(pts, x, 0.0); };
  }
  throw UnsupportedRepresentation("no membership test for " + describe(K) + " in R^" + std::to_string(n));
}

// ---------------------------------------------------------------- per-dimension dispatch

EvalResult gaussian_box(const Vec& lo, const Vec& hi) {
  double v = 1.0;
  for (Eigen::Index i = 0; i < lo.size(); ++i) {
    // take the difference on the side where both tails are small
    const double d = lo[i] > 0 ? normal_cdf(-lo[i]) - normal_cdf(-hi[i]) : normal_cdf(hi[i]) - normal_cdf(lo[i]);
    v *= d;
  }
  return EvalResult::exact(v);
}

EvalResult measure1d(const MeasureSpec& mu, const Interval& I, const EvalOptions& opt) {
  if (I.hi <= I.lo) return EvalResult::exact(0.0);
  switch (mu.kind()) {
    case DensityKind::lebesgue:
      return EvalResult::exact(I.hi - I.lo);
    case DensityKind::gaussian:
      return gaussian_box(make_vec({I.lo}), make_vec({I.hi}));
    case DensityKind::radial_power: {
      const double p = mu.p();
      auto F = [p](double x) { return std::copysign(std::pow(std::abs(x), p + 1) / (p + 1), x); };
      return EvalResult::exact(F(I.hi) - F(I.lo));
    }
    case DensityKind::radial_exp: {
      auto f = [&](double x) { return mu.profile(std::abs(x)); };
      double coarse = 0.0, fine = 0.0;
      auto add = [&](double a, double b) {
        if (b <= a) return;
        coarse += quad::line(f, a, b, opt.quad_order);
        const double m = 0.5 * (a + b);
        fine += quad::line(f, a, m, opt.quad_order) + quad::line(f, m, b, opt.quad_order);
      };
      if (I.lo < 0 && I.hi > 0) {
        add(I.lo, 0.0);
        add(0.0, I.hi);
      } else {
        add(I.lo, I.hi);
      }
      return EvalResult::approx(fine, std::abs(fine - coarse) + roundoff_floor(std::abs(fine), 64), Method::quadrature);
    }
  }
  return EvalResult::exact(0.0);
}

bool axis_rectangle(const std::vector<Vec2>& P, Vec* lo, Vec* hi) {
  if (P.size() != 4) return false;
  for (int i = 0; i < 4; ++i) {
    const Vec2 d = P[(i + 1) % 4] - P[i];
    if (d.x() != 0.0 && d.y() != 0.0) return false;
  }
  Vec2 l = P[0], h = P[0];
  for (const auto& p : P) {
    l = l.cwiseMin(p);
    h = h.cwiseMax(p);
  }
  *lo = from2(l);
  *hi = from2(h);
  return true;
}

EvalResult measure2d(const MeasureSpec& mu, const PolyBall& K, const EvalOptions& opt) {
  if (!K.full_dimensional()) return EvalResult::exact(0.0);
  if (opt.allow_exact) {
    if (mu.constant_density()) return EvalResult::exact(K.area_lebesgue());
    if (mu.polynomial_density()) return EvalResult::exact(polynomial_over_polyball(K, radial_power_terms(mu.p())));
    Vec lo, hi;
    if (mu.kind() == DensityKind::gaussian && K.r == 0.0 && axis_rectangle(K.P, &lo, &hi)) return gaussian_box(lo, hi);
  }
  return measure_quadrature2d(mu, K, opt);
}

double radial_ball_integral(const MeasureSpec& mu, int n, double R, int order, double* err) {
  auto f = [&](double rho) { return mu.profile(rho) * std::pow(rho, n - 1); };
  const double coarse = quad::line(f, 0.0, R, order);
  const double fine = quad::line(f, 0.0, 0.5 * R, order) + quad::line(f, 0.5 * R, R, order);
  *err = std::abs(fine - coarse) + roundoff_floor(std::abs(fine), order);
  return sphere_area(n) * fine;
}

EvalResult measure3d(const MeasureSpec& mu, const Body& K, const EvalOptions& opt) {
  const PolyBall3 pb = to_polyball3(K);
  if (pb.r == 0.0 && pb.P.dimension < 3) return EvalResult::exact(0.0);
  if (opt.allow_exact && pb.r == 0.0) {
    if (mu.constant_density()) return EvalResult::exact(pb.P.volume());
    // tetrahedra from an interior apex (the origin when the density is singular there)
    Vec3 apex = Vec3::Zero();
    if (!(pb.P.contains(Vec3::Zero(), 0.0) && !mu.smooth_at_origin())) {
      for (const auto& v : pb.P.vertices) apex += v;
      apex /= static_cast<double>(pb.P.vertices.size());
    }
    std::vector<std::array<Vec3, 3>> tris;
    for (const auto& f : pb.P.facets) {
      for (std::size_t i = 1; i + 1 < f.loop.size(); ++i) {
        tris.push_back({pb.P.vertices[f.loop[0]], pb.P.vertices[f.loop[i]], pb.P.vertices[f.loop[i + 1]]});
      }
    }
    auto phi = [&](const Vec3& x) { return mu.profile(x.norm()); };
    const int hi_order = std::max(8, opt.quad_order / 2), lo_order = hi_order * 3 / 4;
    auto parts = kernels::map<std::array<double, 2>>(tris.size(), [&](std::size_t i) {
      const auto& t = tris[i];
      return std::array<double, 2>{quad::tetrahedron(phi, apex, t[0], t[1], t[2], lo_order),
                                   quad::tetrahedron(phi, apex, t[0], t[1], t[2], hi_order)};
    });
    double coarse = 0, fine = 0, mag = 0;
    for (const auto& p : parts) {
      coarse += p[0];
      fine += p[1];
      mag += std::abs(p[1]);
    }
    return EvalResult::approx(fine, std::abs(fine - coarse) + roundoff_floor(mag, 1e4), Method::quadrature);
  }
  if (opt.allow_exact && pb.P.dimension == 0) {
    const Vec3 c = pb.P.vertices[0];
    if (mu.constant_density()) return EvalResult::exact(ball_volume(3) * pb.r * pb.r * pb.r);
    if (c.norm() == 0.0) {
      if (mu.kind() == DensityKind::radial_power) {
        return EvalResult::exact(sphere_area(3) * std::pow(pb.r, 3 + mu.p()) / (3 + mu.p()));
      }
      double err = 0;
      const double v = radial_ball_integral(mu, 3, pb.r, opt.quad_order, &err);
      return EvalResult::approx(v, sphere_area(3) * err, Method::quadrature);
    }
  }
  return measure_qmc(mu, K, opt);
}

}  // namespace

EvalResult measure_quadrature2d(const MeasureSpec& mu, const PolyBall& K, const EvalOptions& opt) {
  if (!K.full_dimensional()) return EvalResult::exact(0.0);
  auto phi = [&](const Vec2& x) { return mu.profile(x.norm()); };
  const int order = opt.quad_order;

  struct Piece {
    int kind;  // 0 triangle, 1 parallelogram, 2 sector
    Vec2 a, b, c;
    double t0 = 0, t1 = 0;
  };
  std::vector<Piece> pieces;
  if (K.P.size() >= 3) {
    Vec2 apex = vertex_average(K.P);
    if (!mu.smooth_at_origin() && K.distance_to_polygon(Vec2::Zero()) == 0.0) apex = Vec2::Zero();
    for (std::size_t i = 0; i < K.P.size(); ++i) {
      const Vec2 p = K.P[i], q = K.P[(i + 1) % K.P.size()];
      if (std::abs(cross2(p - apex, q - apex)) > 0.0) pieces.push_back({0, apex, p, q});
    }
  }
  if (K.r > 0) {
    for (int i = 0; i < K.edge_count(); ++i) {
      pieces.push_back({1, K.edge_start(i), Vec2(K.edge_end(i) - K.edge_start(i)), Vec2(K.r * K.edge_normal(i))});
    }
    for (const auto& s : vertex_sectors(K)) pieces.push_back({2, s.c, Vec2::Zero(), Vec2::Zero(), s.t0, s.t1});
  }
  auto est = kernels::map<PieceEstimate>(pieces.size(), [&](std::size_t i) {
    const Piece& pc = pieces[i];
    switch (pc.kind) {
      case 0:
        return triangle_estimate(phi, pc.a, pc.b, pc.c, order);
      case 1:
        return parallelogram_estimate(phi, pc.a, pc.b, pc.c, order);
      default:
        return sector_estimate(phi, pc.a, K.r, pc.t0, pc.t1, order);
    }
  });
  double coarse = 0, fine = 0, mag = 0;
  for (const auto& e : est) {
    coarse += e.coarse;
    fine += e.fine;
    mag += e.magnitude;
  }
  return EvalResult::approx(fine, std::abs(fine - coarse) + roundoff_floor(mag, 4.0 * order * order), Method::quadrature);
}

EvalResult measure_qmc(const MeasureSpec& mu, const Body& K, const EvalOptions& opt) {
  if (mu.dim() != K.dim()) throw DimensionMismatch("measure and body dimensions differ");
  const int n = K.dim();
  if (n > static_cast<int>(std::size(kPrimes))) throw UnsupportedRepresentation("QMC supports n <= 20");
  if (!full_dimensional(K)) return EvalResult::exact(0.0);
  const Membership inside = make_membership(K);
  auto [lo, hi] = bounding_box(K);
  const Vec span = hi - lo;
  const double vol = span.prod();
  const int R = std::max(2, opt.qmc_replicates);
  const std::size_t N = static_cast<std::size_t>(std::max(16, opt.qmc_points));
  std::vector<double> reps(R);
  for (int rep = 0; rep < R; ++rep) {
    std::mt19937_64 rng(opt.seed + 0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(rep + 1));
    std::uniform_real_distribution<double> U(0.0, 1.0);
    Vec shift(n);
    for (int d = 0; d < n; ++d) shift[d] = U(rng);
    const double s = kernels::blocked_sum(N, [&](std::size_t i) {
      Vec x(n);
      for (int d = 0; d < n; ++d) {
        double u = radical_inverse(i + 1, kPrimes[d]) + shift[d];
        if (u >= 1.0) u -= 1.0;
        x[d] = lo[d] + span[d] * u;
      }
      return inside(x) ? mu.density(x) : 0.0;
    });
    reps[rep] = vol * s / static_cast<double>(N);
  }
  double mean = 0;
  for (double r : reps) mean += r;
  mean /= R;
  double var = 0;
  for (double r : reps) var += (r - mean) * (r - mean);
  var /= (R - 1);
  return EvalResult::approx(mean, std::sqrt(var / R), Method::qmc);
}

EvalResult measure(const MeasureSpec& mu, const Body& K, const EvalOptions& opt) {
  if (mu.dim() != K.dim()) throw DimensionMismatch("measure is on R^" + std::to_string(mu.dim()) + ", body in R^" + std::to_string(K.dim()));
  if (opt.force_qmc) return measure_qmc(mu, K, opt);
  switch (K.dim()) {
    case 1:
      return measure1d(mu, to_interval(K), opt);
    case 2:
      return measure2d(mu, to_polyball(K), opt);
    case 3:
      return measure3d(mu, K, opt);
    default:
      break;
  }
  if (!full_dimensional(K)) return EvalResult::exact(0.0);
  if (opt.allow_exact) {
    Vec lo, hi;
    if (is_axis_box(K, &lo, &hi)) {
      if (mu.constant_density()) return EvalResult::exact((hi - lo).prod());
      if (mu.kind() == DensityKind::gaussian) return gaussian_box(lo, hi);
    }
    if (K.kind() == BodyKind::ball) {
      if (mu.constant_density()) return EvalResult::exact(ball_volume(K.dim()) * std::pow(K.radius(), K.dim()));
      if (K.center().norm() == 0.0) {
        double err = 0;
        const double v = radial_ball_integral(mu, K.dim(), K.radius(), opt.quad_order, &err);
        return EvalResult::approx(v, sphere_area(K.dim()) * err, Method::quadrature);
      }
    }
  }
  return measure_qmc(mu, K, opt);
}

// ---------------------------------------------------------------- JSON

MeasureSpec measure_from_json(const nlohmann::json& j, int dim) {
  if (!j.is_object() || !j.contains("type")) throw ParseError("measure must be an object with a \"type\" field");
  if (j.contains("dim")) dim = j.at("dim").get<int>();
  const std::string type = j.at("type").get<std::string>();
  try {
    if (type == "lebesgue") return MeasureSpec::lebesgue(dim);
    if (type == "gaussian") return MeasureSpec::gaussian(dim);
    if (type == "radial_power") return MeasureSpec::radial_power(dim, j.at("p").get<double>());
    if (type == "radial_exp") {
      const std::string fam = j.value("family", "power");
      if (fam == "power") return MeasureSpec::radial_exp_power(dim, j.at("q").get<double>());
      if (fam == "half_square" || fam == "quadratic") return MeasureSpec::radial_exp_half_square(dim);
      if (fam == "log") return MeasureSpec::radial_exp_log(dim, j.value("c", 1.0));
      throw ParseError("unknown radial_exp family \"" + fam + "\"");
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed measure: ") + e.what());
  }
  throw ParseError("unknown measure type \"" + type + "\"");
}

nlohmann::json measure_to_json(const MeasureSpec& mu) {
  nlohmann::json j;
  j["dim"] = mu.dim();
  switch (mu.kind()) {
    case DensityKind::lebesgue:
      j["type"] = "lebesgue";
      break;
    case DensityKind::gaussian:
      j["type"] = "gaussian";
      break;
    case DensityKind::radial_power:
      j["type"] = "radial_power";
      j["p"] = mu.p();
      break;
    case DensityKind::radial_exp:
      j["type"] = "radial_exp";
      switch (mu.family()) {
        case WFamily::half_square:
          j["family"] = "half_square";
          break;
        case WFamily::power:
          j["family"] = "power";
          j["q"] = mu.q();
          break;
        case WFamily::log1p:
          j["family"] = "log";
          j["c"] = mu.c();
          break;
      }
      break;
  }
  return j;
}

MeasureSpec parse_measure(const std::string& text, int dim) {
  // accepts a JSON document or a bare type name such as "gaussian"
  if (!text.empty() && text.front() == '{') {
    try {
      return measure_from_json(nlohmann::json::parse(text), dim);
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(std::string("measure: ") + e.what());
    }
  }
  if (text == "lebesgue") return MeasureSpec::lebesgue(dim);
  if (text == "gaussian") return MeasureSpec::gaussian(dim);
  if (text.rfind("radial_power", 0) == 0 || text.rfind("power", 0) == 0) {
    const auto pos = text.find(':');
    return MeasureSpec::radial_power(dim, pos == std::string::npos ? 2.0 : std::stod(text.substr(pos + 1)));
  }
  if (text == "x2") return MeasureSpec::radial_power(dim, 2.0);
  throw ParseError("unknown measure \"" + text + "\"");
}

}  // namespace wbm
