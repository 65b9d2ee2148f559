#pragma once

#include <stdexcept>
#include <string>

namespace gka {

// Every failure the library can signal, classified so the CLI can map it to
// its exit-code contract (config/hypothesis problems exit 2, runtime guards
// surface as failed checks).
enum class ErrorKind {
  config,          // malformed or inconsistent configuration input
  hypothesis,      // a scenario violates a precondition of the theory it tests
  resolution,      // grid too coarse for the requested kernel time
  truncation,      // domain too small for the requested kernel time
  tail_dominance,  // boundary-ring mass makes a moment untrustworthy
  blowup,          // solution left the bounded-solution regime
  mismatch,        // incompatible grids, tables, or dimensions
  numeric,         // overflow / non-finite values
  io,              // file system failures
};

inline const char* error_kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::config: return "config";
    case ErrorKind::hypothesis: return "hypothesis";
    case ErrorKind::resolution: return "resolution";
    case ErrorKind::truncation: return "truncation";
    case ErrorKind::tail_dominance: return "tail_dominance";
    case ErrorKind::blowup: return "blowup";
    case ErrorKind::mismatch: return "mismatch";
    case ErrorKind::numeric: return "numeric";
    case ErrorKind::io: return "io";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace gka
