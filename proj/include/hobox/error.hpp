#pragma once

#include <stdexcept>
#include <string>

namespace hobox {

enum class ErrorCode {
  InvalidArgument,
  Domain,
  NonConforming,
  Numerical,
  DegenerateBasis,
  NotConverged,
};

// Single exception type for the library; the code maps 1:1 onto the C API
// status values and the CLI exit categories.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace hobox
