#pragma once

#include <stdexcept>
#include <string>

namespace wbm {

/// Base of every library error. `code()` is a stable machine-readable tag.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& what)
      : std::runtime_error(code + ": " + what), code_(std::move(code)) {}
  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

#define WBM_DEFINE_ERROR(Name)                                                  \
  class Name : public Error {                                                  \
   public:                                                                     \
    explicit Name(const std::string& what) : Error(#Name, what) {}             \
  }

WBM_DEFINE_ERROR(DimensionMismatch);
WBM_DEFINE_ERROR(InvalidBody);
WBM_DEFINE_ERROR(OriginNotContained);
WBM_DEFINE_ERROR(UnboundedBody);
WBM_DEFINE_ERROR(UnsupportedRepresentation);
WBM_DEFINE_ERROR(UnsupportedCase);
WBM_DEFINE_ERROR(InvalidMeasure);
WBM_DEFINE_ERROR(Inconclusive);
WBM_DEFINE_ERROR(NonPositiveMeasure);
WBM_DEFINE_ERROR(NonPositiveMixed);
WBM_DEFINE_ERROR(DegenerateDerivative);
WBM_DEFINE_ERROR(ZeroMeasureBase);
WBM_DEFINE_ERROR(NotConvex);
WBM_DEFINE_ERROR(Negative);
WBM_DEFINE_ERROR(UnsupportedConfiguration);
WBM_DEFINE_ERROR(BudgetExhausted);
WBM_DEFINE_ERROR(ParseError);

#undef WBM_DEFINE_ERROR

}  // namespace wbm
