#ifndef PADLIFT_ERRORS_HPP
#define PADLIFT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace padlift {

// Coarse error classes; the C API maps these onto status codes and the
// CLI onto exit codes.
enum class ErrorCode {
  InvalidInput,   // malformed input, bad parameters, parse failures
  SizeLimit,      // an enumeration would exceed the configured cap
  NonUnit,        // inverse of a non-unit requested
  Degenerate,     // degenerate affine map / linear term
  Precondition,   // an operation's stated precondition does not hold
  Internal,       // a certified internal check failed (a bug)
};

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

} // namespace padlift

#endif
