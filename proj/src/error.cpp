#include "greyvar/error.hpp"

namespace greyvar {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Parameter: return "parameter error";
    case ErrorKind::Input: return "input error";
    case ErrorKind::Numerical: return "numerical error";
    case ErrorKind::Accuracy: return "accuracy error";
    case ErrorKind::Capacity: return "capacity error";
    case ErrorKind::Estimation: return "estimation error";
    case ErrorKind::Precondition: return "precondition error";
    case ErrorKind::Usage: return "usage error";
    case ErrorKind::Io: return "I/O error";
  }
  return "error";
}

}  // namespace greyvar
