#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gwplasma {

enum class ErrorKind {
  DivisionByZero,
  OrderMismatch,
  PoleProximity,
  ProbabilitySumNotOne,
  ZeroChildrenForbidden,
  DegenerateLaw,
  DuplicateSupport,
  DegenerateDenominator,
  NoConvergence,
  NegativeBetaUnsupported,
  InvalidPath,
  UnsupportedExactCost,
  InvalidArgument,
  ParseError,
};

std::string_view to_string(ErrorKind kind) noexcept;

// All library failures are reported through this exception; `kind()` is the
// stable machine-readable tag, `what()` carries "<Kind>: <detail>".
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace gwplasma
