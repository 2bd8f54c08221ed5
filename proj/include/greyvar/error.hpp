#pragma once

#include <stdexcept>
#include <string>

namespace greyvar {

enum class ErrorKind {
  Parameter,   // argument outside its admissible range
  Input,       // malformed data (paths, grids, files)
  Numerical,   // factorization/eigenvalue/convergence failures
  Accuracy,    // series did not converge within max_terms
  Capacity,    // problem size beyond a hard guard
  Estimation,  // degenerate regression or inversion without solution
  Precondition,
  Usage,       // CLI/config errors
  Io,
};

const char* to_string(ErrorKind kind) noexcept;

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

}  // namespace greyvar
