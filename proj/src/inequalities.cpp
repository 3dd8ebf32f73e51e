#include "wbm/inequalities.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "wbm/errors.hpp"
#include "wbm/kernels.hpp"
#include "wbm/special.hpp"
#include "wbm/surface.hpp"

namespace wbm {

// ------------------------------------------------------------------ F-concavity

FConcavity FConcavity::power(double s) {
  if (s == 0.0 || !std::isfinite(s)) throw InvalidMeasure("power concavity needs a finite s != 0 (use log for s = 0)");
  FConcavity f;
  f.kind_ = Kind::power;
  f.s_ = s;
  return f;
}

FConcavity FConcavity::log() { return FConcavity{}; }

FConcavity FConcavity::normal_inv() {
  FConcavity f;
  f.kind_ = Kind::normal_inv;
  return f;
}

double FConcavity::F(double x) const {
  switch (kind_) {
    case Kind::power:
      return std::pow(x, s_);
    case Kind::log:
      return std::log(x);
    case Kind::normal_inv:
      return normal_quantile(x);
  }
  return 0.0;
}

double FConcavity::dF(double x) const {
  switch (kind_) {
    case Kind::power:
      return s_ * std::pow(x, s_ - 1);
    case Kind::log:
      return 1.0 / x;
    case Kind::normal_inv:
      return 1.0 / normal_pdf(normal_quantile(x));
  }
  return 0.0;
}

double FConcavity::d2F(double x) const {
  switch (kind_) {
    case Kind::power:
      return s_ * (s_ - 1) * std::pow(x, s_ - 2);
    case Kind::log:
      return -1.0 / (x * x);
    case Kind::normal_inv: {
      const double z = normal_quantile(x), p = normal_pdf(z);
      return z / (p * p);
    }
  }
  return 0.0;
}

double FConcavity::inverse(double y) const {
  switch (kind_) {
    case Kind::power:
      return std::pow(y, 1.0 / s_);
    case Kind::log:
      return std::exp(y);
    case Kind::normal_inv:
      return normal_cdf(y);
  }
  return 0.0;
}

double FConcavity::curvature_ratio(double x) const {
  switch (kind_) {
    case Kind::power:
      return (1 - s_) / x;
    case Kind::log:
      return 1.0 / x;
    case Kind::normal_inv:
      return -normal_quantile(x) / normal_pdf(normal_quantile(x));
  }
  return 0.0;
}

std::string FConcavity::name() const {
  switch (kind_) {
    case Kind::power: {
      std::ostringstream os;
      os << "power(" << s_ << ")";
      return os.str();
    }
    case Kind::log:
      return "log";
    case Kind::normal_inv:
      return "normal_inv";
  }
  return "?";
}

FConcavity f_concavity_from_string(const std::string& s) {
  if (s == "log") return FConcavity::log();
  if (s == "normal_inv" || s == "ehrhard") return FConcavity::normal_inv();
  const std::string prefix = "power:";
  if (s.rfind(prefix, 0) == 0) {
    const std::string arg = s.substr(prefix.size());
    const auto slash = arg.find('/');
    try {
      if (slash != std::string::npos) return FConcavity::power(std::stod(arg.substr(0, slash)) / std::stod(arg.substr(slash + 1)));
      return FConcavity::power(std::stod(arg));
    } catch (const std::logic_error&) {
      throw ParseError("bad power exponent in '" + s + "'");
    }
  }
  throw ParseError("unknown concavity '" + s + "' (expected log, normal_inv or power:<s>)");
}

// ------------------------------------------------------------------ helpers

namespace {

InequalityReport tagged(InequalityReport r, const MeasureSpec& mu, std::string note = {}) {
  r.measure = mu.name();
  if (!note.empty()) r.note = std::move(note);
  return r;
}

Body combo(const Body& K, double a, const Body& L, double b) { return minkowski_sum(dilate(K, a), dilate(L, b)); }

void require_derivative_profile(const FConcavity& F, const char* who) {
  if (F.kind() == FConcavity::Kind::normal_inv) {
    throw UnsupportedCase(std::string(who) + ": the normal_inv profile is only used by check_f_concavity");
  }
}

Uncertain apply_F(const FConcavity& F, const Uncertain& x) { return x.apply(F.F(x.value()), F.dF(x.value())); }

// Remark case label for F'(mu(K)) = 0.
std::string degenerate_case(double muK, double muL, const MeasureSpec& mu) {
  if (muK >= mu.total_mass()) return "K carries all of the mass: read the inequality as mu(K;M) = 0";
  if (muK == muL) return "mu(K) = mu(L): read the inequality as mu(K;K) = mu(K;L)";
  return "mu(K) > mu(L): read the quotient as -infinity";
}

}  // namespace

EvalResult mixed1(const MeasureSpec& mu, const Body& K, const Body& L, const CheckOptions& opt) {
  switch (opt.path) {
    case MixedPath::fd:
      return mixed1_fd(mu, K, L, opt.mixed);
    case MixedPath::formula:
      return mixed1_formula(mu, K, L);
    case MixedPath::automatic:
      try {
        return mixed1_formula(mu, K, L);
      } catch (const UnsupportedCase&) {
      } catch (const UnsupportedRepresentation&) {
      }
      return mixed1_fd(mu, K, L, opt.mixed);
  }
  return {};
}

EvalResult mixed2(const MeasureSpec& mu, const Body& A, const Body& B, const Body& C, const CheckOptions& opt) {
  switch (opt.path) {
    case MixedPath::fd:
      return mixed2_fd(mu, A, B, C, opt.mixed);
    case MixedPath::formula:
      return mixed2_formula(mu, A, B, C);
    case MixedPath::automatic:
      try {
        return mixed2_formula(mu, A, B, C);
      } catch (const UnsupportedCase&) {
      } catch (const UnsupportedRepresentation&) {
      }
      return mixed2_fd(mu, A, B, C, opt.mixed);
  }
  return {};
}

// ------------------------------------------------------------------ section 2 inequalities

InequalityReport check_f_concavity(const MeasureSpec& mu, const FConcavity& F, const Body& K, const Body& L,
                                   const CheckOptions& opt) {
  const EvalResult mK = measure(mu, K, opt.mixed.eval), mL = measure(mu, L, opt.mixed.eval);
  if (!(mK.value > 0) || !(mL.value > 0)) throw NonPositiveMeasure("F-concavity check needs mu(K), mu(L) > 0");
  if (opt.t_grid.empty()) throw InvalidMeasure("empty t grid");
  const auto reports = kernels::map<InequalityReport>(opt.t_grid.size(), [&](std::size_t i) {
    const double t = opt.t_grid[i];
    const EvalResult mix = measure(mu, combo(K, 1 - t, L, t), opt.mixed.eval);
    const Uncertain combined = Uncertain(1 - t) * apply_F(F, mK) + Uncertain(t) * apply_F(F, mL);
    const double y = combined.value();
    // d F^{-1}(y) / dy = 1 / F'(F^{-1}(y))
    const double x = F.inverse(y);
    const Uncertain rhs = combined.apply(x, 1.0 / F.dF(x));
    auto r = report_ge("f_concavity", mix, rhs.result());
    r.terms["t"] = EvalResult::exact(t);
    return r;
  });
  auto worst = *std::min_element(reports.begin(), reports.end(),
                                 [](const auto& a, const auto& b) { return a.margin < b.margin; });
  worst.terms["mu(K)"] = mK;
  worst.terms["mu(L)"] = mL;
  return tagged(std::move(worst), mu, "F = " + F.name() + ", worst t = " + std::to_string(worst.terms["t"].value));
}

InequalityReport minkowski_first(const MeasureSpec& mu, const FConcavity& F, const Body& K, const Body& L,
                                 const CheckOptions& opt) {
  require_derivative_profile(F, "minkowski_first");
  const EvalResult mK = measure(mu, K, opt.mixed.eval), mL = measure(mu, L, opt.mixed.eval);
  if (!(mK.value > 0) || !(mL.value > 0)) throw NonPositiveMeasure("minkowski_first needs mu(K), mu(L) > 0");
  const double d = F.dF(mK.value);
  if (d == 0.0 || !std::isfinite(d)) {
    throw DegenerateDerivative("F'(mu(K)) = 0; " + degenerate_case(mK.value, mL.value, mu));
  }
  const EvalResult KL = mixed1(mu, K, L, opt), KK = mixed1(mu, K, K, opt);
  // d/dx [F(y) - F(x)] / F'(x) = -1 - (F(y) - F(x)) F''(x) / F'(x)^2
  const double diff = F.F(mL.value) - F.F(mK.value);
  const double dx = -1.0 - diff * F.d2F(mK.value) / (d * d);
  const double quotient = diff / d;
  const Uncertain q(quotient, std::abs(dx) * mK.abs_error + std::abs(F.dF(mL.value) / d) * mL.abs_error,
                    weakest(mK.method, mL.method));
  const Uncertain rhs = Uncertain(KK) + q;
  auto r = report_ge("minkowski_first", KL, rhs.result());
  r.terms = {{"mu(K)", mK}, {"mu(L)", mL}, {"mu(K;L)", KL}, {"mu(K;K)", KK}};
  return tagged(std::move(r), mu, "F = " + F.name());
}

InequalityReport minkowski_second(const MeasureSpec& mu, const FConcavity& F, const Body& K, const Body& L,
                                  const CheckOptions& opt) {
  require_derivative_profile(F, "minkowski_second");
  const EvalResult mK = measure(mu, K, opt.mixed.eval);
  if (!(mK.value > 0)) throw NonPositiveMeasure("minkowski_second needs mu(K) > 0");
  const EvalResult KL = mixed1(mu, K, L, opt), KLL = mixed2(mu, K, L, L, opt);
  // F = x^s and F = log x share the form mu(K) mu(K;L,L) <= (1 - s) mu(K;L)^2
  const double s = F.kind() == FConcavity::Kind::power ? F.s() : 0.0;
  const Uncertain lhs = Uncertain(mK) * Uncertain(KLL);
  const Uncertain rhs = Uncertain(1 - s) * Uncertain(KL) * Uncertain(KL);
  auto r = report_le("minkowski_second", lhs.result(), rhs.result());
  r.terms = {{"mu(K)", mK}, {"mu(K;L)", KL}, {"mu(K;L,L)", KLL}};
  return tagged(std::move(r), mu, "F = " + F.name());
}

InequalityReport reverse_quadratic(const MeasureSpec& mu, const FConcavity& F, const Body& A, const Body& B,
                                   const Body& C, const CheckOptions& opt) {
  require_derivative_profile(F, "reverse_quadratic");
  const EvalResult mA = measure(mu, A, opt.mixed.eval);
  if (!(mA.value > 0)) throw ZeroMeasureBase("reverse_quadratic needs mu(A) != 0");
  const EvalResult AB = mixed1(mu, A, B, opt), AC = mixed1(mu, A, C, opt);
  const EvalResult BB = mixed2(mu, A, B, B, opt), CC = mixed2(mu, A, C, C, opt), BC = mixed2(mu, A, B, C, opt);
  // Dividing the Hessian condition by F'^2 leaves r = F''/F' = -curvature_ratio.
  const double r0 = -F.curvature_ratio(mA.value);
  const double h = 1e-6 * mA.value;
  const double dr = (F.curvature_ratio(mA.value - h) - F.curvature_ratio(mA.value + h)) / (2 * h);
  const Uncertain r(r0, std::abs(dr) * mA.abs_error, mA.method);
  const Uncertain ab(AB), ac(AC), bb(BB), cc(CC), bc(BC);
  const Uncertain lhs = bb * cc + r * (ab * ab * cc + ac * ac * bb);
  const Uncertain rhs = bc * bc + Uncertain(2.0) * r * ac * ab * bc;
  auto rep = report_ge("reverse_quadratic", lhs.result(), rhs.result());
  rep.terms = {{"mu(A)", mA},    {"mu(A;B)", AB},   {"mu(A;C)", AC},
               {"mu(A;B,B)", BB}, {"mu(A;C,C)", CC}, {"mu(A;B,C)", BC}};
  return tagged(std::move(rep), mu, "F = " + F.name());
}

std::vector<InequalityReport> fenchel_bounds(const MeasureSpec& mu, double s, const Body& A, const Body& B,
                                             const Body& C, const CheckOptions& opt) {
  if (!(s >= 0 && s < 1)) throw InvalidMeasure("fenchel_bounds needs s in [0, 1)");
  for (const Body* K : {&A, &B, &C}) {
    if (!contains_origin(*K)) throw OriginNotContained("fenchel_bounds: every body must contain the origin");
  }
  const EvalResult mA = measure(mu, A, opt.mixed.eval);
  if (!(mA.value > 0)) throw ZeroMeasureBase("fenchel_bounds needs mu(A) != 0");
  const EvalResult AB = mixed1(mu, A, B, opt), AC = mixed1(mu, A, C, opt);
  if (!(AB.value > 0) || !(AC.value > 0)) throw NonPositiveMixed("fenchel_bounds needs mu(A;B), mu(A;C) > 0");
  const EvalResult BB = mixed2(mu, A, B, B, opt), CC = mixed2(mu, A, C, C, opt), BC = mixed2(mu, A, B, C, opt);

  const Uncertain a(mA), ab(AB), ac(AC), one(1.0), k(1 - s);
  const Uncertain x = a * Uncertain(BB) / (k * ab * ab);
  const Uncertain y = a * Uncertain(CC) / (k * ac * ac);
  const Uncertain D = (one - x) * (one - y);
  const Uncertain ratio = a * Uncertain(BC) / (ab * ac);
  // sqrt is not Lipschitz at 0: bound the error by the spread of sqrt over [D - e, D + e].
  const double dlo = std::max(0.0, D.value() - D.error()), dhi = std::max(0.0, D.value() + D.error());
  const double sq = std::sqrt(std::max(0.0, D.value()));
  const Uncertain sqrtD(sq, std::max(std::sqrt(dhi) - sq, sq - std::sqrt(dlo)), D.method());

  std::map<std::string, EvalResult> terms{{"mu(A)", mA},     {"mu(A;B)", AB},   {"mu(A;C)", AC},
                                          {"mu(A;B,B)", BB}, {"mu(A;C,C)", CC}, {"mu(A;B,C)", BC},
                                          {"D", D.result()}};
  std::vector<InequalityReport> out;
  auto push = [&](InequalityReport r) {
    r.terms = terms;
    out.push_back(tagged(std::move(r), mu, "s = " + std::to_string(s)));
  };
  push(report_ge("fenchel_discriminant", D.result(), EvalResult::exact(0.0)));
  push(report_ge("fenchel_bracket_lower", ratio.result(), ((one - sqrtD) * k).result()));
  push(report_le("fenchel_bracket_upper", ratio.result(), ((one + sqrtD) * k).result()));
  push(report_le("fenchel_type", ratio.result(), (k * (Uncertain(2.0) - (x + y) * Uncertain(0.5))).result()));
  if (mu.constant_density()) {
    const int n = mu.dim();
    const Uncertain vab = ab / Uncertain(n), vac = ac / Uncertain(n);
    const Uncertain vbc = n >= 2 ? Uncertain(BC) / Uncertain(n * (n - 1.0)) : Uncertain(0.0);
    push(report_ge("fenchel_classical", (Uncertain(2.0) * vab * vac).result(), (a * vbc).result()));
  }
  return out;
}

// ------------------------------------------------------------------ modularity

InequalityReport supermod_global(const MeasureSpec& mu, const Body& A, const Body& B, const Body& C, Modularity dir,
                                 const EvalOptions& eo) {
  const Body AB = minkowski_sum(A, B), AC = minkowski_sum(A, C);
  const Body ABC = minkowski_sum(AB, C);
  const std::vector<const Body*> bodies{&ABC, &A, &AB, &AC};
  const auto m = kernels::map<EvalResult>(4, [&](std::size_t i) { return measure(mu, *bodies[i], eo); });
  const Uncertain lhs = Uncertain(m[0]) + Uncertain(m[1]);
  const Uncertain rhs = Uncertain(m[2]) + Uncertain(m[3]);
  auto r = dir == Modularity::super ? report_ge("supermod_global", lhs.result(), rhs.result())
                                    : report_le("submod_global", lhs.result(), rhs.result());
  r.terms = {{"mu(A+B+C)", m[0]}, {"mu(A)", m[1]}, {"mu(A+B)", m[2]}, {"mu(A+C)", m[3]}};
  return tagged(std::move(r), mu);
}

InequalityReport supermod_local2(const MeasureSpec& mu, const Body& A, const Body& B, const Body& C,
                                 const CheckOptions& opt) {
  const EvalResult lhs = mixed1(mu, minkowski_sum(A, C), B, opt);
  const EvalResult rhs = mixed1(mu, A, B, opt);
  auto r = report_ge("supermod_local2", lhs, rhs);
  r.terms = {{"mu(A+C;B)", lhs}, {"mu(A;B)", rhs}};
  return tagged(std::move(r), mu);
}

InequalityReport supermod_local3(const MeasureSpec& mu, const Body& A, const Body& B, const Body& C,
                                 const CheckOptions& opt) {
  const EvalResult v = mixed2(mu, A, B, C, opt);
  auto r = report_ge("supermod_local3", v, EvalResult::exact(0.0));
  r.terms = {{"mu(A;B,C)", v}};
  return tagged(std::move(r), mu);
}

InequalityReport supermod_consistency(const std::vector<InequalityReport>& forms) {
  int holds = 0, violated = 0;
  for (const auto& f : forms) {
    if (f.verdict == Verdict::holds) ++holds;
    if (f.verdict == Verdict::violated) ++violated;
  }
  InequalityReport r;
  r.name = "supermod_consistency";
  r.lhs = EvalResult::exact(holds);
  r.rhs = EvalResult::exact(violated);
  const bool agree = holds == 0 || violated == 0;
  r.margin = agree ? 1.0 : -1.0;
  r.verdict = holds + violated == 0 ? Verdict::inconclusive : (agree ? Verdict::holds : Verdict::violated);
  if (!forms.empty()) {
    r.measure = forms.front().measure;
    r.bodies = forms.front().bodies;
  }
  r.note = "lhs = forms holding, rhs = forms violated";
  return r;
}

InequalityReport surface_monotonicity(const MeasureSpec& mu, const Body& K, const Body& L) {
  const EvalResult sum = weighted_surface_area(mu, minkowski_sum(K, L));
  const EvalResult base = weighted_surface_area(mu, K);
  auto r = report_ge("surface_monotonicity", sum, base);
  r.terms = {{"mu+(K+L)", sum}, {"mu+(K)", base}};
  return tagged(std::move(r), mu);
}

RadialModularity radial_modularity(const MeasureSpec& mu, double r_max, int grid) {
  if (!(r_max > 0) || grid < 2) throw InvalidMeasure("radial_modularity needs r_max > 0 and grid >= 2");
  const int n = mu.dim();
  std::vector<double> g(grid);
  double scale = 0.0;
  for (int i = 0; i < grid; ++i) {
    const double r = r_max * (i + 1) / grid;
    g[i] = mu.profile(r) * std::pow(r, n - 1);
    scale = std::max(scale, std::abs(g[i]));
  }
  bool up = false, down = false;
  const double tol = 1e-12 * scale;
  for (int i = 1; i < grid; ++i) {
    if (g[i] > g[i - 1] + tol) up = true;
    if (g[i] < g[i - 1] - tol) down = true;
  }
  RadialModularity out;
  out.profile_class = up && down ? "neither" : up ? "increasing" : down ? "decreasing" : "constant";

  const std::vector<double> radii{0.05, 0.1, 0.25, 0.5, 1.0, 1.5, 2.5};
  struct Triple {
    double a, b, c;
  };
  std::vector<Triple> triples;
  for (double a : radii)
    for (double b : radii)
      for (double c : radii)
        if (b <= c) triples.push_back({a, b, c});
  auto ball = [&](double r) {
    return n == 1 ? Body::segment(make_vec({-r}), make_vec({r})) : Body::ball(Vec::Zero(n), r);
  };
  out.ball_tests = kernels::map<InequalityReport>(triples.size(), [&](std::size_t i) {
    const auto [a, b, c] = triples[i];
    const EvalResult abc = measure(mu, ball(a + b + c)), ma = measure(mu, ball(a));
    const EvalResult mab = measure(mu, ball(a + b)), mac = measure(mu, ball(a + c));
    auto r = report_ge("supermod_balls", (Uncertain(abc) + Uncertain(ma)).result(),
                       (Uncertain(mab) + Uncertain(mac)).result());
    std::ostringstream os;
    os << "a=" << a << ";b=" << b << ";c=" << c;
    r.bodies = os.str();
    return tagged(std::move(r), mu);
  });
  for (const auto& r : out.ball_tests) {
    if (r.verdict == Verdict::violated) out.found_super_violation = true;
    if (r.verdict == Verdict::holds) out.found_sub_violation = true;
  }
  return out;
}

// ------------------------------------------------------------------ log-submodularity

InequalityReport log_submodularity(const MeasureSpec& mu, const Body& A, const Body& B, const Body& C,
                                   const EvalOptions& eo) {
  const Body AB = minkowski_sum(A, B), AC = minkowski_sum(A, C);
  const Body ABC = minkowski_sum(AB, C);
  const std::vector<const Body*> bodies{&A, &ABC, &AB, &AC};
  const auto m = kernels::map<EvalResult>(4, [&](std::size_t i) { return measure(mu, *bodies[i], eo); });
  for (const auto& v : m) {
    if (v.value < 0) throw NonPositiveMeasure("negative measure value");
  }
  const Uncertain lhs = Uncertain(m[0]) * Uncertain(m[1]);
  const Uncertain rhs = Uncertain(m[2]) * Uncertain(m[3]);
  auto r = report_le("log_submodularity", lhs.result(), rhs.result());
  r.terms = {{"mu(A)", m[0]}, {"mu(A+B+C)", m[1]}, {"mu(A+B)", m[2]}, {"mu(A+C)", m[3]}};
  return tagged(std::move(r), mu, "c = 1");
}

EvalResult bm_constant(const Body& A, const Body& B, const Body& C) {
  const MeasureSpec vol = MeasureSpec::lebesgue(A.dim());
  const Body AB = minkowski_sum(A, B), AC = minkowski_sum(A, C);
  const Uncertain vA = measure(vol, A), vABC = measure(vol, minkowski_sum(AB, C));
  const Uncertain vAB = measure(vol, AB), vAC = measure(vol, AC);
  if (!(vAB.value() > 0) || !(vAC.value() > 0)) throw NonPositiveMeasure("bm_constant needs Vol(A+B), Vol(A+C) > 0");
  return (vA * vABC / (vAB * vAC)).result();
}

InequalityReport log_submod_local(const MeasureSpec& mu, const Body& A, const Body& B, const Body& C,
                                  const CheckOptions& opt) {
  const EvalResult mA = measure(mu, A, opt.mixed.eval);
  const EvalResult AB = mixed1(mu, A, B, opt), AC = mixed1(mu, A, C, opt), BC = mixed2(mu, A, B, C, opt);
  const Uncertain lhs = Uncertain(mA) * Uncertain(BC);
  const Uncertain rhs = Uncertain(AB) * Uncertain(AC);
  auto r = report_le("log_submod_local", lhs.result(), rhs.result());
  r.terms = {{"mu(A)", mA}, {"mu(A;B)", AB}, {"mu(A;C)", AC}, {"mu(A;B,C)", BC}};
  return tagged(std::move(r), mu);
}

// ------------------------------------------------------------------ search

std::optional<double> class_concavity(const MeasureSpec& mu, GenKind kind) {
  const int n = mu.dim();
  switch (mu.kind()) {
    case DensityKind::lebesgue:
      return 1.0 / n;
    case DensityKind::gaussian:
      switch (kind) {
        case GenKind::symmetric_polygon:
        case GenKind::centered_zonotope:
        case GenKind::symmetric_interval:
          return 1.0 / n;
        case GenKind::origin_polygon:
        case GenKind::origin_zonotope:
          return 1.0 / (2.0 * n);
        default:
          return 0.0;
      }
    case DensityKind::radial_exp:
      if (mu.family() == WFamily::log1p) return std::nullopt;
      return 0.0;
    case DensityKind::radial_power:
      return std::nullopt;
  }
  return std::nullopt;
}

std::vector<std::string> search_targets() {
  return {"f_concavity",      "minkowski_first",  "minkowski_second",     "reverse_quadratic", "fenchel",
          "supermod_global",  "submod_global",    "supermod_local2",      "supermod_local3",   "supermod_all",
          "log_submodularity", "log_submod_dilate", "log_submod_local",   "bm_constant",       "surface_monotonicity",
          "mixed2_negativity"};
}

namespace {

std::vector<InequalityReport> run_instance(const SearchConfig& cfg, std::size_t index) {
  const MeasureSpec& mu = cfg.measure;
  const std::string& target = cfg.target;
  if (target == "mixed2_negativity") {
    const double R = cfg.radii[index % cfg.radii.size()];
    const int n = mu.dim();
    Vec e = Vec::Zero(n);
    e[0] = 1.0;
    const Body A = Body::ball(Vec::Zero(n), R), B = Body::segment(-e, e);
    const EvalResult v = mixed2(mu, A, B, B, cfg.check);
    auto r = tagged(report_ge("mixed2_nonnegative", v, EvalResult::exact(0.0)), mu);
    r.bodies = "A=" + std::to_string(R) + "B;B=C=[-e1,e1]";
    return {r};
  }
  auto rng = instance_rng(cfg.seed, index);
  auto draw = [&] { return random_body(rng, cfg.bodies); };
  auto concavity = [&]() -> FConcavity {
    if (cfg.F) return *cfg.F;
    const auto s = class_concavity(mu, cfg.bodies.kind);
    if (!s) throw UnsupportedConfiguration("no known concavity of " + mu.name() + " on " + std::string(to_string(cfg.bodies.kind)));
    return *s > 0 ? FConcavity::power(*s) : FConcavity::log();
  };
  const Body A = draw(), B = draw();
  std::vector<InequalityReport> out;
  if (target == "f_concavity") {
    out.push_back(check_f_concavity(mu, concavity(), A, B, cfg.check));
  } else if (target == "minkowski_first") {
    out.push_back(minkowski_first(mu, concavity(), A, B, cfg.check));
  } else if (target == "minkowski_second") {
    out.push_back(minkowski_second(mu, concavity(), A, B, cfg.check));
  } else if (target == "surface_monotonicity") {
    const Body L = cfg.second ? random_body(rng, *cfg.second) : B;
    out.push_back(surface_monotonicity(mu, A, L));
  } else {
    const Body C = draw();
    if (target == "reverse_quadratic") {
      out.push_back(reverse_quadratic(mu, concavity(), A, B, C, cfg.check));
    } else if (target == "fenchel") {
      const auto s = cfg.s ? cfg.s : class_concavity(mu, cfg.bodies.kind);
      if (!s) throw UnsupportedConfiguration("fenchel target needs s");
      out = fenchel_bounds(mu, *s, A, B, C, cfg.check);
    } else if (target == "supermod_global") {
      out.push_back(supermod_global(mu, A, B, C, Modularity::super, cfg.check.mixed.eval));
    } else if (target == "submod_global") {
      out.push_back(supermod_global(mu, A, B, C, Modularity::sub, cfg.check.mixed.eval));
    } else if (target == "supermod_local2") {
      out.push_back(supermod_local2(mu, A, B, C, cfg.check));
    } else if (target == "supermod_local3") {
      out.push_back(supermod_local3(mu, A, B, C, cfg.check));
    } else if (target == "supermod_all") {
      out.push_back(supermod_global(mu, A, B, C, Modularity::super, cfg.check.mixed.eval));
      out.push_back(supermod_local2(mu, A, B, C, cfg.check));
      out.push_back(supermod_local3(mu, A, B, C, cfg.check));
      out.push_back(supermod_consistency(out));
    } else if (target == "log_submodularity") {
      out.push_back(log_submodularity(mu, A, B, C, cfg.check.mixed.eval));
    } else if (target == "log_submod_dilate") {
      const double t = std::exp(std::uniform_real_distribution<double>(std::log(0.1), std::log(10.0))(rng));
      auto r = log_submodularity(mu, A, B, dilate(B, t), cfg.check.mixed.eval);
      r.name = "log_submod_dilate";
      r.terms["t"] = EvalResult::exact(t);
      out.push_back(std::move(r));
    } else if (target == "log_submod_local") {
      out.push_back(log_submod_local(mu, A, B, C, cfg.check));
    } else if (target == "bm_constant") {
      out.push_back(tagged(report_le("bm_constant", bm_constant(A, B, C), EvalResult::exact(1.0)),
                           MeasureSpec::lebesgue(A.dim())));
    } else {
      throw UnsupportedConfiguration("unknown search target '" + target + "'");
    }
  }
  return out;
}

// Inconclusive numerical outcomes become inconclusive reports; configuration errors propagate.
std::vector<InequalityReport> guarded(const SearchConfig& cfg, std::size_t index) {
  std::vector<InequalityReport> out;
  try {
    out = run_instance(cfg, index);
  } catch (const Inconclusive& e) {
    InequalityReport r;
    r.name = cfg.target;
    r.measure = cfg.measure.name();
    r.verdict = Verdict::inconclusive;
    r.margin = std::numeric_limits<double>::quiet_NaN();
    r.note = e.what();
    out.push_back(std::move(r));
  }
  for (auto& r : out) {
    if (r.bodies.empty()) r.bodies = "#" + std::to_string(index);
  }
  return out;
}

}  // namespace

SearchResult sweep(const SearchConfig& cfg) {
  if (cfg.budget < 0) throw InvalidMeasure("negative budget");
  const auto targets = search_targets();
  if (std::find(targets.begin(), targets.end(), cfg.target) == targets.end()) {
    throw UnsupportedConfiguration("unknown search target '" + cfg.target + "'");
  }
  if (cfg.target == "mixed2_negativity" && cfg.radii.empty()) throw UnsupportedConfiguration("empty radius grid");
  const auto per = kernels::map<std::vector<InequalityReport>>(static_cast<std::size_t>(cfg.budget),
                                                               [&](std::size_t i) { return guarded(cfg, i); });
  SearchResult res;
  for (const auto& reports : per) {
    for (const auto& r : reports) {
      res.counts.add(r.verdict);
      if (r.verdict == Verdict::violated) res.violated.push_back(r);
      res.all.push_back(r);
    }
  }
  return res;
}

SearchResult counterexample_search(const SearchConfig& cfg) {
  SearchResult res = sweep(cfg);
  if (res.violated.empty()) {
    throw BudgetExhausted("no violation of " + cfg.target + " in " + std::to_string(cfg.budget) +
                          " instances (" + std::to_string(res.counts.holds) + " hold, " +
                          std::to_string(res.counts.inconclusive) + " inconclusive); this is not a proof");
  }
  return res;
}

}  // namespace wbm
