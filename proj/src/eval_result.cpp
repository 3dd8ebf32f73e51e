#include "wbm/eval_result.hpp"

#include <limits>

#include "wbm/errors.hpp"

namespace wbm {

std::string_view to_string(Method m) {
  switch (m) {
    case Method::exact: return "exact";
    case Method::quadrature: return "quadrature";
    case Method::qmc: return "qmc";
    case Method::fd_extrapolated: return "fd_extrapolated";
  }
  return "exact";
}

Method method_from_string(std::string_view s) {
  if (s == "exact") return Method::exact;
  if (s == "quadrature") return Method::quadrature;
  if (s == "qmc") return Method::qmc;
  if (s == "fd_extrapolated") return Method::fd_extrapolated;
  throw ParseError("unknown method '" + std::string(s) + "'");
}

EvalResult EvalResult::approx(double v, double err, Method m) {
  if (m == Method::exact) return exact(v);
  const double floor = std::numeric_limits<double>::epsilon() * std::max(std::abs(v), 1e-300);
  return {v, std::max(err, floor), m};
}

EvalResult Uncertain::result() const {
  if (method_ == Method::exact && err_ == 0.0) return EvalResult::exact(value_);
  // exact inputs can still pick up error through inexact constants; keep the tag honest
  const Method m = method_ == Method::exact ? Method::quadrature : method_;
  return EvalResult::approx(value_, err_, m);
}

Uncertain operator/(const Uncertain& a, const Uncertain& b) {
  const double q = a.value_ / b.value_;
  const double denom = std::abs(b.value_) - b.err_;
  double e;
  if (b.err_ == 0.0) {
    e = a.err_ / std::abs(b.value_);
  } else if (denom <= 0) {
    e = std::numeric_limits<double>::infinity();
  } else {
    e = (a.err_ + std::abs(q) * b.err_) / denom;
  }
  return {q, e, weakest(a.method_, b.method_)};
}

Uncertain upow(const Uncertain& x, double p) {
  const double v = x.value();
  const double fx = std::pow(v, p);
  if (x.error() == 0.0) return {fx, 0.0, x.method()};
  // bound |f'| over the error interval, clipped at zero for non-integer powers
  const double lo = v - x.error(), hi = v + x.error();
  double dmax = std::max(std::abs(p * std::pow(std::abs(lo), p - 1)), std::abs(p * std::pow(std::abs(hi), p - 1)));
  if (!std::isfinite(dmax) || (lo <= 0 && p < 1)) dmax = std::numeric_limits<double>::infinity();
  return {fx, dmax * x.error(), x.method()};
}

Uncertain usqrt(const Uncertain& x) { return upow(x, 0.5); }

}  // namespace wbm
