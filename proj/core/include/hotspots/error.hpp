#pragma once

#include <stdexcept>
#include <string>

namespace hotspots {

enum class ErrorKind {
  OutOfDomain,         // argument outside an operation's documented range
  Infeasible,          // parameters admissible individually but jointly infeasible
  ConstraintViolated,  // finite-b denominator 1 - V(delta,d) exp(-rho b) <= 0
  Accuracy,            // numerical method failed to meet its accuracy contract
};

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

}  // namespace hotspots
