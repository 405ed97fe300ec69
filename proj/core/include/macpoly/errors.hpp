#pragma once

#include <stdexcept>
#include <string>

namespace macpoly {

enum class ErrorKind {
  InvalidInput,       // malformed or out-of-range user data
  Domain,             // precondition of an operation violated
  Arithmetic,         // division by zero and friends
  Unsupported,        // requested mode is not implemented (e.g. generic t inner product)
  DegenerateSpectrum, // eigenvalue collision in a triangular solve
  LimitFailure,       // pole at q = 1
  PoleProximity,      // floating-point argument too close to a pole
  Internal            // exactness trap fired: always a bug
};

const char* kind_name(ErrorKind k);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace macpoly
