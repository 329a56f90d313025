#include "extsym/error.hpp"

namespace extsym {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NonFinite: return "NonFinite";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::UnsupportedCoefficient: return "UnsupportedCoefficient";
    case ErrorKind::RankDeficiencyAmbiguous: return "RankDeficiencyAmbiguous";
    case ErrorKind::NotClosed: return "NotClosed";
    case ErrorKind::UnsupportedDegree: return "UnsupportedDegree";
    case ErrorKind::SingularMap: return "SingularMap";
    case ErrorKind::InvalidParams: return "InvalidParams";
    case ErrorKind::DegenerateDirection: return "DegenerateDirection";
    case ErrorKind::NotSingleExponential: return "NotSingleExponential";
    case ErrorKind::StencilOverrun: return "StencilOverrun";
    case ErrorKind::ConfigError: return "ConfigError";
  }
  return "Unknown";
}

}  // namespace extsym
