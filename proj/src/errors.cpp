#include "gzroots/errors.hpp"

namespace gz {

const char* kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::EvenOrderUnsupported: return "EvenOrderUnsupported";
    case ErrorKind::InvalidOrder: return "InvalidOrder";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::EmptyModule: return "EmptyModule";
    case ErrorKind::DivergentElement: return "DivergentElement";
    case ErrorKind::NotFlat: return "NotFlat";
    case ErrorKind::NotDegenerate: return "NotDegenerate";
    case ErrorKind::PreconditionViolated: return "PreconditionViolated";
    case ErrorKind::FormalAngle: return "FormalAngle";
    case ErrorKind::UnknownCase: return "UnknownCase";
    case ErrorKind::UnresolvedDivergence: return "UnresolvedDivergence";
    case ErrorKind::OrderMismatch: return "OrderMismatch";
    case ErrorKind::DimensionTooLarge: return "DimensionTooLarge";
    case ErrorKind::Format: return "Format";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(kind_name(kind)) + ": " + what), kind_(kind) {}

DivergentElement::DivergentElement(const std::string& p, int j_, int l_)
    : Error(ErrorKind::DivergentElement,
            "undefined matrix element at " + p + " (j=" + std::to_string(j_) +
                ", l=" + std::to_string(l_) + ")"),
      pattern(p), j(j_), l(l_) {}

}  // namespace gz
