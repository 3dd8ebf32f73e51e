#include <random>

#include "doctest.h"
#include "test_support.hpp"
#include "wbm/convexfn.hpp"
#include "wbm/errors.hpp"
#include "wbm/mixed.hpp"

using namespace wbm;
using namespace testsupport;

namespace {

// Convex PL function from sorted random slopes, own generator.
ConvexPL draw(std::mt19937_64& rng, double a, double b, bool nonneg) {
  std::uniform_real_distribution<double> U(0, 1);
  const int k = 1 + static_cast<int>(U(rng) * 8);
  std::vector<double> x{a, b}, m;
  for (int i = 1; i < k; ++i) x.push_back(a + (b - a) * (0.01 + 0.98 * U(rng)));
  std::sort(x.begin(), x.end());
  x.erase(std::unique(x.begin(), x.end(), [](double p, double q) { return q - p < 1e-4; }), x.end());
  x.back() = b;
  for (std::size_t i = 0; i + 1 < x.size(); ++i) m.push_back(6 * U(rng) - 3);
  std::sort(m.begin(), m.end());
  std::vector<double> y{U(rng)};
  for (std::size_t i = 0; i + 1 < x.size(); ++i) y.push_back(y.back() + m[i] * (x[i + 1] - x[i]));
  if (nonneg) {
    const double lo = *std::min_element(y.begin(), y.end());
    for (double& v : y) v = std::max(0.0, v - lo);
  }
  return ConvexPL(x, y, nonneg);
}

double margin_of(const ConvexPL& h) { return appendixB_check(h)[0].margin; }

}  // namespace

TEST_CASE("construction rejects concave kinks and negative values") {
  CHECK_THROWS_AS(ConvexPL({0, 1, 2}, {0, 1, 0}), NotConvex);
  CHECK_THROWS_AS(ConvexPL({0, 1}, {-1, 1}, true), Negative);
  CHECK_THROWS_AS(ConvexPL({0, 0}, {1, 1}), InvalidBody);
  CHECK_NOTHROW(ConvexPL({0, 1, 2}, {1, 0, 1}, true));
}

TEST_CASE("arc lengths of a V shape") {
  const ConvexPL h({-1, 0, 1}, {1, 0, 1});
  CHECK(h.arc_length() == doctest::Approx(2 * std::sqrt(2.0)));
  CHECK(h.weighted_arc_length() == doctest::Approx(std::sqrt(2.0)));
  CHECK(h(0.5) == doctest::Approx(0.5));
}

TEST_CASE("refinement leaves every functional unchanged") {
  std::mt19937_64 rng(61);
  for (int i = 0; i < 200; ++i) {
    const ConvexPL h = draw(rng, -1, 2, true);
    const ConvexPL r = h.refined();
    CHECK(r.pieces() == 2 * h.pieces());
    CHECK(std::abs(r.arc_length() - h.arc_length()) < 1e-12);
    CHECK(std::abs(r.weighted_arc_length() - h.weighted_arc_length()) < 1e-12);
    CHECK(std::abs(margin_of(r) - margin_of(h)) < 1e-12);
  }
}

TEST_CASE("main inequality on random nonnegative convex functions") {
  std::mt19937_64 rng(62);
  std::uniform_real_distribution<double> U(-2, 2);
  for (int i = 0; i < 500; ++i) {
    double a = U(rng), b = U(rng);
    if (a > b) std::swap(a, b);
    b += 0.01;
    const auto reps = appendixB_check(draw(rng, a, b, true));
    CHECK(reps[0].verdict != Verdict::violated);
    CHECK(reps[1].verdict != Verdict::violated);
    // the weak form drops 2((b-a)/2)^2 in favour of a^2 + b^2, which is larger
    CHECK(reps[1].lhs.value >= reps[0].lhs.value - 1e-12);
  }
}

TEST_CASE("scaling both axes scales the margin quadratically") {
  std::mt19937_64 rng(63);
  for (int i = 0; i < 100; ++i) {
    const ConvexPL h = draw(rng, -1, 1.5, true);
    const double lam = 0.25 + 0.05 * i;
    std::vector<double> x = h.x(), y = h.y();
    for (double& v : x) v *= lam;
    for (double& v : y) v *= lam;
    const double m = margin_of(h), ms = margin_of(ConvexPL(x, y, true));
    CHECK(std::abs(ms - lam * lam * m) <= 1e-10 * (1 + std::abs(ms)));
  }
}

TEST_CASE("equality family is tight") {
  for (double alpha = -3; alpha <= 3; alpha += 0.125) {
    for (auto [a, b] : {std::pair{0.0, 1.0}, std::pair{-2.0, 0.5}, std::pair{0.3, 1.9}}) {
      const auto r = appendixB_check(equality_family(alpha, a, b))[0];
      CHECK(std::abs(r.lhs.value - r.rhs.value) <= 1e-9);
    }
  }
}

TEST_CASE("optimized form: normalization, round trip, translation invariance") {
  std::mt19937_64 rng(64);
  for (int i = 0; i < 200; ++i) {
    ConvexPL h = draw(rng, 0, 1, false);
    h = h.shifted(-3 + 0.03 * i);
    const auto reps = optimized_form_check(h);
    CHECK(reps[0].verdict != Verdict::violated);
    CHECK(reps[1].verdict == Verdict::holds);
    CHECK(reps[2].verdict == Verdict::holds);
    const ConvexPL ho = h.shifted(-c_opt(h));
    CHECK(std::abs(ho(0) + ho(1) - ho.arc_length()) < 1e-12 * (1 + ho.arc_length()));
    CHECK(std::abs(optimized_form_check(h.shifted(7))[0].margin - reps[0].margin) < 1e-9);
  }
  CHECK_THROWS_AS(optimized_form_check(ConvexPL({0, 2}, {0, 0})), UnsupportedConfiguration);
}

TEST_CASE("arc-length witness reconstructs the polygon and matches the segment formula") {
  std::mt19937_64 rng(65);
  const MeasureSpec x2 = MeasureSpec::radial_power(2, 2);
  for (int i = 0; i < 30; ++i) {
    const auto P = random_polygon_vertices(rng, 8, 1.5);
    const Body K = as_polytope(P);
    const Vec2 u = random_direction(rng);
    const auto w = arclength_witness(K, u);
    std::vector<Vec2> back;
    for (const auto& p : w.reconstruct()) back.push_back(p);
    CHECK(std::abs(shoelace(monotone_hull(back)) - shoelace(P)) < 1e-12);
    const auto seg = mixed2_segment(x2, K, Vec(u), Body::unit_ball(2));
    CHECK(std::abs(w.reduced_expression() - seg.value) <= 3 * seg.abs_error + 1e-10 * (1 + std::abs(seg.value)));
    CHECK(w.reduced_check().verdict != Verdict::violated);
    CHECK(w.reduced_expression() >= -1e-12);
  }
}

TEST_CASE("higher-dimensional probe: boundary term by a separate rule") {
  for (auto [alpha, beta, lambda, eps] : {std::tuple{1, 1, 1.0, 0.1}, std::tuple{2, 3, 10.0, 0.5}, std::tuple{3, 2, 0.5, 0.1}}) {
    const auto r = naz_probe(alpha, beta, lambda, eps);
    auto h = [&](double x1, double x2) { return std::pow(x1, alpha) + lambda * std::pow(x2, beta); };
    auto g = [&](double x1, double x2) { return x1 * x1 + x2 * x2 + h(x1, x2) * h(x1, x2); };
    // composite Simpson along each edge of [0,1] x [0,eps]
    auto edge = [&](double x0, double y0, double x1, double y1) {
      const int n = 2000;
      double s = 0;
      for (int k = 0; k <= n; ++k) {
        const double t = static_cast<double>(k) / n, w = (k == 0 || k == n) ? 1 : (k % 2 ? 4 : 2);
        s += w * g(x0 + t * (x1 - x0), y0 + t * (y1 - y0));
      }
      return s / (3 * n) * std::hypot(x1 - x0, y1 - y0);
    };
    const double boundary = edge(0, 0, 1, 0) + edge(1, 0, 1, eps) + edge(1, eps, 0, eps) + edge(0, eps, 0, 0);
    CHECK(std::abs(r.lhs.value - boundary) < 1e-9);
    CHECK(r.verdict == Verdict::holds);
  }
  CHECK_THROWS_AS(naz_probe(4, 1, 1.0, 0.1), UnsupportedConfiguration);
  CHECK_THROWS_AS(naz_probe(1, 1, -1.0, 0.1), UnsupportedConfiguration);
}
