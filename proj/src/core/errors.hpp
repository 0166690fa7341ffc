#pragma once

#include <stdexcept>
#include <string>

namespace qortho {

enum class ErrorCode {
  InvalidArgument,
  InvalidMeasure,
  DegenerateDenominator,
  NonConvergence,
  BudgetExceeded,
  BranchCut,
  OnInterval,
  NotApplicable,
  PrimitiveMismatch,
  PoleAt,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& msg) {
  throw Error(code, msg);
}

}  // namespace qortho
