#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace dpcolor {

enum class ErrorKind {
  InconsistentRotation,
  EulerViolation,
  AmbiguousOuterFace,
  BoundaryNotCycle,
  PreconditionViolated,
  LemmaViolated,
  NotATree,
  InvalidPartialColoring,
  MatchingCollision,
  InsufficientSlack,
  UnsupportedKind,
  SolverTooLarge,
  SubproblemUnsat,
  GenerationStalled,
  Parse,
  InternalAssertion,
};

std::string_view to_string(ErrorKind kind);

// Single exception type for the library; callers branch on kind().
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

inline void require(bool cond, ErrorKind kind, const std::string& what) {
  if (!cond) fail(kind, what);
}

}  // namespace dpcolor
