#pragma once

#include <stdexcept>
#include <string>

namespace tailgof {

// Error categories; the numeric values double as CLI exit codes.
enum class errc : int {
  config = 2,              // invalid configuration or parameters
  data = 3,                // unreadable/invalid input data
  numerical = 4,           // singular information matrix, boundary estimate, ...
  benchmark_mismatch = 5,  // benchmark table does not match the requested grid
};

class error : public std::runtime_error {
 public:
  error(errc code, const std::string& msg) : std::runtime_error(msg), code_(code) {}
  errc code() const noexcept { return code_; }
  int exit_code() const noexcept { return static_cast<int>(code_); }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& msg) { throw error(code, msg); }

}  // namespace tailgof
