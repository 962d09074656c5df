#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace pclab {

// Failure categories. The CLI maps these onto exit codes, so keep the
// grouping coarse: validation-type problems, coverage problems, I/O.
enum class ErrorKind {
  invalid_argument,
  out_of_range,
  coverage,
  validation,
  wrong_file,
  empty_input,
  io,
  resource,
  pole,
  height_cap,
  near_singularity,
  missed_zero,
  domain,
  internal,
};

std::string_view to_string(ErrorKind kind);

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

}  // namespace pclab
