#pragma once

#include <stdexcept>
#include <string>

namespace gz {

enum class ErrorKind {
  EvenOrderUnsupported,
  InvalidOrder,
  InvalidArgument,
  EmptyModule,
  DivergentElement,
  NotFlat,
  NotDegenerate,
  PreconditionViolated,
  FormalAngle,
  UnknownCase,
  UnresolvedDivergence,
  OrderMismatch,
  DimensionTooLarge,
  Format,
};

const char* kind_name(ErrorKind kind);

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& what);
  ErrorKind kind() const noexcept { return kind_; }

private:
  ErrorKind kind_;
};

// f_l or e_l has a term with more zeros in P3 than in P1 P2.
class DivergentElement : public Error {
public:
  DivergentElement(const std::string& pattern, int j, int l);
  std::string pattern;
  int j;
  int l;
};

}  // namespace gz
