#pragma once

#include <stdexcept>
#include <string>

namespace qlift {

enum class ErrorKind {
  order_bound_exceeded,
  invalid_spec,
  not_normal,
  source_target_mismatch,
  search_budget_exceeded,
  unsupported_square,
  already_subnormal,
  arity_mismatch,
  parse_error,
  io_error,
  invariant_violation,
};

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

private:
  ErrorKind kind_;
};

inline const char* error_kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::order_bound_exceeded: return "OrderBoundExceeded";
    case ErrorKind::invalid_spec: return "InvalidSpec";
    case ErrorKind::not_normal: return "NotNormal";
    case ErrorKind::source_target_mismatch: return "SourceTargetMismatch";
    case ErrorKind::search_budget_exceeded: return "SearchBudgetExceeded";
    case ErrorKind::unsupported_square: return "UnsupportedSquare";
    case ErrorKind::already_subnormal: return "AlreadySubnormal";
    case ErrorKind::arity_mismatch: return "ArityMismatch";
    case ErrorKind::parse_error: return "ParseError";
    case ErrorKind::io_error: return "IoError";
    case ErrorKind::invariant_violation: return "InvariantViolation";
  }
  return "Error";
}

}  // namespace qlift
