#pragma once

#include <stdexcept>
#include <string>

namespace qroute {

enum class ErrorKind {
  InvalidArgument,       // malformed value (bad label, bad dimension, bad set)
  PreconditionViolation, // a documented contract hypothesis does not hold
  NoValidDimension,      // no split dimension keeps both halves well-connected
  ExceptionCase,         // the one known infeasible endpoint configuration
  BudgetExceeded,        // search node budget exhausted
  DimensionTooLarge,     // instance exceeds a hard or configured dimension cap
  SeamNotAdjacent,       // splice junction endpoints are not an edge
  VertexCollision,       // splice pieces share a vertex
  VertexNotOnPath,       // subpath endpoint missing from the host path
  ConstructionFailure,   // an internal assembly produced an invalid system
  ParseError,            // unreadable instance or result file
};

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

inline void require(bool ok, ErrorKind kind, const std::string& message) {
  if (!ok) fail(kind, message);
}

} // namespace qroute
