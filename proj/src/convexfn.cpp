#include "wbm/convexfn.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "wbm/errors.hpp"
#include "wbm/quadrature.hpp"

namespace wbm {

namespace {
constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kConvexTol = 1e-12;

// Exact pieces of the main inequality; no sign requirement on h.
struct MainTerms {
  double lhs, lhs_weak, rhs;
};

MainTerms main_terms(const ConvexPL& h) {
  const double a = h.a(), b = h.b(), ha = h(a), hb = h(b);
  const double half = (b - a) / 2;
  return {2 * half * half + ha * ha + hb * hb, a * a + b * b + ha * ha + hb * hb, 2 * h.weighted_arc_length()};
}

}  // namespace

ConvexPL::ConvexPL(std::vector<double> x, std::vector<double> y, bool nonnegative) : x_(std::move(x)), y_(std::move(y)) {
  if (x_.size() != y_.size() || x_.size() < 2) throw InvalidBody("ConvexPL needs at least two matching breakpoints");
  for (std::size_t i = 0; i < x_.size(); ++i) {
    if (!std::isfinite(x_[i]) || !std::isfinite(y_[i])) throw InvalidBody("ConvexPL values must be finite");
    if (i > 0 && !(x_[i] > x_[i - 1])) throw InvalidBody("ConvexPL breakpoints must increase");
  }
  for (int i = 1; i < pieces(); ++i) {
    const double m0 = slope(i - 1), m1 = slope(i);
    if (m1 - m0 < -kConvexTol * (1 + std::max(std::abs(m0), std::abs(m1)))) {
      throw NotConvex("slopes decrease at x = " + std::to_string(x_[i]));
    }
  }
  if (nonnegative) {
    for (double v : y_) {
      if (v < 0) throw Negative("ConvexPL takes a negative value " + std::to_string(v));
    }
  }
}

ConvexPL ConvexPL::sample(const std::function<double(double)>& f, double a, double b, int n, bool nonnegative) {
  if (n < 1 || !(b > a)) throw InvalidBody("ConvexPL::sample needs n >= 1 and b > a");
  std::vector<double> x(n + 1), y(n + 1);
  for (int i = 0; i <= n; ++i) {
    x[i] = i == n ? b : a + (b - a) * i / n;
    y[i] = f(x[i]);
  }
  return ConvexPL(std::move(x), std::move(y), nonnegative);
}

double ConvexPL::operator()(double t) const {
  if (t <= x_.front()) return y_.front();
  if (t >= x_.back()) return y_.back();
  const auto it = std::upper_bound(x_.begin(), x_.end(), t);
  const std::size_t i = static_cast<std::size_t>(it - x_.begin()) - 1;
  const double w = (t - x_[i]) / (x_[i + 1] - x_[i]);
  return (1 - w) * y_[i] + w * y_[i + 1];
}

double ConvexPL::arc_length() const {
  double s = 0.0;
  for (int i = 0; i < pieces(); ++i) s += std::hypot(x_[i + 1] - x_[i], y_[i + 1] - y_[i]);
  return s;
}

double ConvexPL::weighted_arc_length() const {
  double s = 0.0;
  for (int i = 0; i < pieces(); ++i) s += std::hypot(x_[i + 1] - x_[i], y_[i + 1] - y_[i]) * (y_[i] + y_[i + 1]) / 2;
  return s;
}

ConvexPL ConvexPL::shifted(double c) const {
  std::vector<double> y = y_;
  for (double& v : y) v += c;
  return ConvexPL(x_, std::move(y));
}

ConvexPL ConvexPL::refined() const {
  std::vector<double> x, y;
  for (int i = 0; i < pieces(); ++i) {
    x.push_back(x_[i]);
    y.push_back(y_[i]);
    x.push_back((x_[i] + x_[i + 1]) / 2);
    y.push_back((y_[i] + y_[i + 1]) / 2);
  }
  x.push_back(x_.back());
  y.push_back(y_.back());
  return ConvexPL(std::move(x), std::move(y));
}

std::vector<InequalityReport> appendixB_check(const ConvexPL& h) {
  for (double v : h.y()) {
    if (v < 0) throw Negative("appendixB_check needs h >= 0");
  }
  const MainTerms t = main_terms(h);
  auto main = report_ge("appendixB_main", EvalResult::exact(t.lhs), EvalResult::exact(t.rhs));
  auto weak = report_ge("appendixB_weak", EvalResult::exact(t.lhs_weak), EvalResult::exact(t.rhs));
  for (auto* r : {&main, &weak}) {
    r->measure = "-";
    r->terms["a"] = EvalResult::exact(h.a());
    r->terms["b"] = EvalResult::exact(h.b());
  }
  return {main, weak};
}

ConvexPL equality_family(double alpha, double a, double b) {
  if (!(b > a)) throw InvalidBody("equality_family needs b > a");
  const double s = std::sqrt(1 + alpha * alpha);
  const double beta = (s - alpha) / 2 * b - (s + alpha) / 2 * a;
  // h(a) = (s - alpha)(b - a)/2 and h(b) = (s + alpha)(b - a)/2, both nonnegative
  std::vector<double> y{alpha * a + beta, alpha * b + beta};
  for (double& v : y) v = std::max(v, 0.0);
  return ConvexPL({a, b}, std::move(y), true);
}

double c_opt(const ConvexPL& h) { return (h(h.a()) + h(h.b())) / 2 - h.arc_length() / 2; }

std::vector<InequalityReport> optimized_form_check(const ConvexPL& h) {
  if (h.a() != 0.0 || h.b() != 1.0) throw UnsupportedConfiguration("optimized_form_check works on [0, 1]");
  const double h0 = h(0.0), h1 = h(1.0);
  const double L = h.arc_length(), Llin = std::hypot(1.0, h1 - h0);
  const double lhs = (h0 + h1) / 2 * L - h.weighted_arc_length();
  const double rhs = (L * L - Llin * Llin) / 4;
  auto form = report_ge("optimized_form", EvalResult::exact(lhs), EvalResult::exact(rhs));
  form.terms = {{"L(h)", EvalResult::exact(L)}, {"L(h_lin)", EvalResult::exact(Llin)},
                {"c_opt", EvalResult::exact(c_opt(h))}};

  // The main inequality on [0, 1] is twice the optimized form once h is replaced by h - c_opt.
  const ConvexPL hopt = h.shifted(-c_opt(h));
  const MainTerms t = main_terms(hopt);
  const double scale = std::max({1.0, std::abs(t.lhs), std::abs(t.rhs), std::abs(lhs), std::abs(rhs)});
  auto trip = report_eq("optimized_round_trip", EvalResult::exact((t.lhs - t.rhs) / 2), EvalResult::exact(lhs - rhs),
                        1e-9 * scale);
  auto norm = report_eq("optimized_normalization", EvalResult::exact(hopt(0.0) + hopt(1.0)),
                        EvalResult::exact(hopt.arc_length()), 1e-9 * std::max(1.0, L));
  std::vector<InequalityReport> out{form, trip, norm};
  for (auto& r : out) r.measure = "-";
  return out;
}

InequalityReport naz_probe(int alpha, int beta, double lambda, double eps) {
  auto allowed = [](int e) { return e >= 1 && e <= 3; };
  if (!allowed(alpha) || !allowed(beta) || !(lambda >= 0) || !(eps > 0) || !std::isfinite(lambda) || !std::isfinite(eps)) {
    throw UnsupportedConfiguration("naz_probe: alpha, beta in {1,2,3}, lambda >= 0, eps > 0");
  }
  auto h = [&](double x1, double x2) { return std::pow(x1, alpha) + lambda * std::pow(x2, beta); };
  auto grad = [&](double x1, double x2) {
    return Vec2(alpha * std::pow(x1, alpha - 1), lambda * beta * std::pow(x2, beta - 1));
  };
  // boundary integrand is a polynomial of degree <= 6: 8-point Gauss-Legendre is exact
  auto edge = [&](Vec2 p, Vec2 q) {
    return quad::line([&](double s) {
      const Vec2 y = p + s * (q - p);
      const double hv = h(y.x(), y.y());
      return y.squaredNorm() + hv * hv;
    }, 0.0, 1.0, 8) * (q - p).norm();
  };
  const Vec2 c0(0, 0), c1(1, 0), c2(1, eps), c3(0, eps);
  const double boundary = edge(c0, c1) + edge(c1, c2) + edge(c2, c3) + edge(c3, c0);
  auto area = [&](int order) {
    return quad::parallelogram([&](const Vec2& z) { return h(z.x(), z.y()) * std::sqrt(1 + grad(z.x(), z.y()).squaredNorm()); },
                               c0, Vec2(1, 0), Vec2(0, eps), order);
  };
  const int n = 3;
  const double coarse = area(16), fine = area(32);
  const double factor = 2.0 / (n - 1);
  const EvalResult rhs =
      EvalResult::approx(factor * fine, factor * (std::abs(fine - coarse) + 16 * kEps * std::abs(fine)), Method::quadrature);
  auto r = report_ge("naz_probe", EvalResult::approx(boundary, 16 * kEps * boundary, Method::quadrature), rhs);
  r.measure = "-";
  r.bodies = "alpha=" + std::to_string(alpha) + ";beta=" + std::to_string(beta) + ";lambda=" + std::to_string(lambda) +
             ";eps=" + std::to_string(eps);
  return r;
}

// ------------------------------------------------------------------ chains

std::vector<Vec2> ArcLengthWitness::reconstruct() const {
  std::vector<Vec2> pts;
  const Eigen::Matrix2d back = rotation.transpose();
  for (int i = 0; i <= lower.pieces(); ++i) pts.push_back(back * Vec2(lower.x()[i], lower.y()[i]));
  for (int i = neg_upper.pieces(); i >= 0; --i) pts.push_back(back * Vec2(neg_upper.x()[i], -neg_upper.y()[i]));
  return hull2d(pts);
}

double ArcLengthWitness::reduced_expression() const {
  const double fa = -neg_upper(a), fb = -neg_upper(b);
  return a * a + b * b + fa * fa + fb * fb - 2 * neg_upper.weighted_arc_length();
}

InequalityReport ArcLengthWitness::reduced_check() const {
  // h = max(-f, 0), with breakpoints added where -f crosses zero
  std::vector<double> x, y;
  const auto& xs = neg_upper.x();
  const auto& ys = neg_upper.y();
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i > 0 && (ys[i - 1] < 0) != (ys[i] < 0) && ys[i - 1] != 0 && ys[i] != 0) {
      const double w = ys[i - 1] / (ys[i - 1] - ys[i]);
      x.push_back(xs[i - 1] + w * (xs[i] - xs[i - 1]));
      y.push_back(0.0);
    }
    if (!x.empty() && xs[i] <= x.back()) continue;
    x.push_back(xs[i]);
    y.push_back(std::max(ys[i], 0.0));
  }
  const ConvexPL h(std::move(x), std::move(y), true);
  auto r = appendixB_check(h)[1];
  r.name = "arclength_reduced";
  r.terms["reduced(f)"] = EvalResult::exact(reduced_expression());
  return r;
}

ArcLengthWitness arclength_witness(const Body& K, const Vec& u) {
  if (K.dim() != 2 || u.size() != 2) throw DimensionMismatch("arclength_witness is planar");
  if (!(u.norm() > 0)) throw InvalidBody("direction must be nonzero");
  const PolyBall pb = to_polyball(K);
  if (pb.r != 0.0) throw UnsupportedRepresentation("arclength_witness needs a polygon");
  if (pb.P.size() < 3) throw InvalidBody("arclength_witness needs a full-dimensional polygon");
  const Vec2 w = to2(u).normalized();
  Eigen::Matrix2d R;
  R << w.y(), -w.x(), w.x(), w.y();
  std::vector<Vec2> P;
  for (const auto& p : pb.P) P.push_back(R * p);
  const int m = static_cast<int>(P.size());
  const double xmin = std::min_element(P.begin(), P.end(), [](auto& p, auto& q) { return p.x() < q.x(); })->x();
  const double xmax = std::max_element(P.begin(), P.end(), [](auto& p, auto& q) { return p.x() < q.x(); })->x();
  const double tol = 1e-12 * std::max(1.0, xmax - xmin);
  auto pick = [&](double xv, bool top) {
    int best = -1;
    for (int i = 0; i < m; ++i) {
      if (std::abs(P[i].x() - xv) > tol) continue;
      if (best < 0 || (top ? P[i].y() > P[best].y() : P[i].y() < P[best].y())) best = i;
    }
    return best;
  };
  const int iL = pick(xmin, false), iLt = pick(xmin, true), iR = pick(xmax, false), iRt = pick(xmax, true);
  // Counter-clockwise order walks the lower chain left to right and the upper chain right to left.
  std::vector<double> gx, gy, fx, fy;
  for (int i = iL;; i = (i + 1) % m) {
    gx.push_back(i == iR ? xmax : P[i].x());
    gy.push_back(P[i].y());
    if (i == iR) break;
  }
  gx.front() = xmin;
  for (int i = iRt;; i = (i + 1) % m) {
    fx.push_back(i == iLt ? xmin : P[i].x());
    fy.push_back(-P[i].y());
    if (i == iLt) break;
  }
  fx.front() = xmax;
  std::reverse(fx.begin(), fx.end());
  std::reverse(fy.begin(), fy.end());
  return ArcLengthWitness{xmin, xmax, ConvexPL(std::move(gx), std::move(gy)), ConvexPL(std::move(fx), std::move(fy)), R};
}

ConvexPL random_convex_pl(std::mt19937_64& rng, bool nonnegative, bool unit_interval) {
  std::uniform_real_distribution<double> U(0.0, 1.0);
  double a = 0.0, b = 1.0;
  if (!unit_interval) {
    a = -2 + 3 * U(rng);
    b = a + 0.05 + (2 - a) * U(rng);
  }
  const int pieces = 1 + static_cast<int>(12 * U(rng)) % 12;
  std::vector<double> x{a, b};
  for (int i = 1; i < pieces; ++i) x.push_back(a + (b - a) * U(rng));
  std::sort(x.begin(), x.end());
  x.erase(std::unique(x.begin(), x.end(), [](double p, double q) { return q - p < 1e-6; }), x.end());
  x.back() = b;
  std::vector<double> slopes;
  for (std::size_t i = 0; i + 1 < x.size(); ++i) slopes.push_back(-3 + 6 * U(rng));
  std::sort(slopes.begin(), slopes.end());
  std::vector<double> y{4 * U(rng) - 2};
  for (std::size_t i = 0; i + 1 < x.size(); ++i) y.push_back(y.back() + slopes[i] * (x[i + 1] - x[i]));
  if (nonnegative) {
    const double lo = *std::min_element(y.begin(), y.end());
    const double lift = U(rng) < 0.2 ? 0.0 : 1.5 * U(rng);
    for (double& v : y) v = std::max(0.0, v - lo + lift);
  }
  return ConvexPL(std::move(x), std::move(y), nonnegative);
}

}  // namespace wbm
