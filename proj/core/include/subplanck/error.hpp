#pragma once

#include <stdexcept>
#include <string>

namespace subplanck {

/// Failure categories. The CLI maps these onto its exit codes.
enum class ErrorKind {
  validation,  // malformed or out-of-range input
  dimension,   // mismatched cutoffs
  truncation,  // guard band holds too much weight, or cutoff ceiling exceeded
  solver,      // root finding / fringe search could not produce a result
  io,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

const char* to_string(ErrorKind kind) noexcept;

[[noreturn]] void fail(ErrorKind kind, const std::string& message);

}  // namespace subplanck
