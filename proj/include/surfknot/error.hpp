#pragma once

#include <stdexcept>
#include <string>

namespace surfknot {

enum class ErrorKind {
  Parse,
  Io,
  MalformedTable,
  InvalidParameters,
  InvalidGroup,
  InvalidDiagram,
  Precondition,
  MustMerge,
  MalformedWord,
  UnknownMove,
  StaleSite,
  NonVirtualPath,
};

const char* to_string(ErrorKind kind) noexcept;

/// Every failure raised by the library. The kind lets the CLI map domain
/// errors and usage errors onto distinct exit codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace surfknot
