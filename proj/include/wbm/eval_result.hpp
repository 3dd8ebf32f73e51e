#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <string_view>

namespace wbm {

/// How a value was obtained, ordered from most to least trustworthy.
enum class Method { exact = 0, quadrature = 1, qmc = 2, fd_extrapolated = 3 };

std::string_view to_string(Method m);
Method method_from_string(std::string_view s);

/// A value with an absolute error bound. abs_error == 0 exactly when method == exact.
struct EvalResult {
  double value = 0.0;
  double abs_error = 0.0;
  Method method = Method::exact;

  static EvalResult exact(double v) { return {v, 0.0, Method::exact}; }
  /// Builds a non-exact result; a zero error estimate is bumped to the
  /// rounding level of `v` so the exact/non-exact invariant holds.
  static EvalResult approx(double v, double err, Method m);
};

inline Method weakest(Method a, Method b) { return static_cast<int>(a) > static_cast<int>(b) ? a : b; }

/// First-order error propagation through arithmetic on EvalResults.
/// The method of a composite is the weakest method of its inputs.
class Uncertain {
 public:
  Uncertain() = default;
  Uncertain(double v) : value_(v) {}  // NOLINT: constants are exact
  Uncertain(const EvalResult& r) : value_(r.value), err_(r.abs_error), method_(r.method) {}  // NOLINT
  Uncertain(double v, double e, Method m) : value_(v), err_(e), method_(m) {}

  double value() const { return value_; }
  double error() const { return err_; }
  Method method() const { return method_; }
  EvalResult result() const;

  friend Uncertain operator+(const Uncertain& a, const Uncertain& b) {
    return {a.value_ + b.value_, a.err_ + b.err_, weakest(a.method_, b.method_)};
  }
  friend Uncertain operator-(const Uncertain& a, const Uncertain& b) {
    return {a.value_ - b.value_, a.err_ + b.err_, weakest(a.method_, b.method_)};
  }
  friend Uncertain operator*(const Uncertain& a, const Uncertain& b) {
    return {a.value_ * b.value_,
            std::abs(a.value_) * b.err_ + std::abs(b.value_) * a.err_ + a.err_ * b.err_,
            weakest(a.method_, b.method_)};
  }
  friend Uncertain operator/(const Uncertain& a, const Uncertain& b);
  Uncertain operator-() const { return {-value_, err_, method_}; }

  /// Applies a scalar function with known derivative magnitude bound |f'| at the value.
  Uncertain apply(double fx, double dfdx) const { return {fx, std::abs(dfdx) * err_, method_}; }

 private:
  double value_ = 0.0;
  double err_ = 0.0;
  Method method_ = Method::exact;
};

Uncertain upow(const Uncertain& x, double p);
Uncertain usqrt(const Uncertain& x);

}  // namespace wbm
