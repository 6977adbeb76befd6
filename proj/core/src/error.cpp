#include "subplanck/error.hpp"

namespace subplanck {

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(message), kind_(kind) {}

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::validation: return "validation";
    case ErrorKind::dimension: return "dimension";
    case ErrorKind::truncation: return "truncation";
    case ErrorKind::solver: return "solver";
    case ErrorKind::io: return "io";
  }
  return "unknown";
}

void fail(ErrorKind kind, const std::string& message) { throw Error(kind, message); }

}  // namespace subplanck
