#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace extsym {

enum class ErrorKind {
  NonFinite,
  ShapeMismatch,
  UnsupportedCoefficient,
  RankDeficiencyAmbiguous,
  NotClosed,
  UnsupportedDegree,
  SingularMap,
  InvalidParams,
  DegenerateDirection,
  NotSingleExponential,
  StencilOverrun,
  ConfigError,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the engine carries one of the kinds above so the
/// CLI can map it onto an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace extsym
