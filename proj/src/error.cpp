#include "surfknot/error.hpp"

namespace surfknot {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Parse: return "parse-error";
    case ErrorKind::Io: return "io-error";
    case ErrorKind::MalformedTable: return "malformed-table";
    case ErrorKind::InvalidParameters: return "invalid-parameters";
    case ErrorKind::InvalidGroup: return "invalid-group";
    case ErrorKind::InvalidDiagram: return "invalid-diagram";
    case ErrorKind::Precondition: return "precondition";
    case ErrorKind::MustMerge: return "must-merge";
    case ErrorKind::MalformedWord: return "malformed-word";
    case ErrorKind::UnknownMove: return "unknown-move";
    case ErrorKind::StaleSite: return "stale-site";
    case ErrorKind::NonVirtualPath: return "non-virtual-path";
  }
  return "error";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

}  // namespace surfknot
