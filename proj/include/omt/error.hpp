#pragma once

#include <stdexcept>
#include <string>

namespace omt {

enum class ErrorKind {
  InvalidArgument,
  DimensionMismatch,
  Infeasible,
  Numerical,
  Io,
};

// Every library failure is reported through this type; the CLI maps the kind
// onto its exit codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

inline void require(bool cond, ErrorKind kind, const std::string& what) {
  if (!cond) fail(kind, what);
}

}  // namespace omt
