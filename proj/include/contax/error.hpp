#pragma once

#include <stdexcept>
#include <string>

namespace contax {

enum class ErrorKind {
  NonFiniteInput,
  InvalidInterval,
  EmptyInput,
  Arity,
  InvalidParameter,
  DegenerateEdge,
  Parse,
  UnknownBody,
  Io,
};

// Single exception type for the library; callers branch on kind().
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

  // Process exit code used by the CLI: 3 for I/O, 2 for everything else.
  int exit_code() const noexcept { return kind_ == ErrorKind::Io ? 3 : 2; }

 private:
  ErrorKind kind_;
};

}  // namespace contax
