#include "greyvar/params.hpp"

#include <cmath>
#include <sstream>

#include "greyvar/error.hpp"

namespace greyvar {

GreyParams::GreyParams(double alpha, double beta) : alpha_(alpha), beta_(beta) {
  if (!(alpha > 0.0 && alpha < 2.0)) {
    fail(ErrorKind::Parameter, "alpha must lie in (0, 2), got " + std::to_string(alpha));
  }
  if (!(beta > 0.0 && beta <= 1.0)) {
    fail(ErrorKind::Parameter, "beta must lie in (0, 1], got " + std::to_string(beta));
  }
}

std::string GreyParams::to_string() const {
  std::ostringstream os;
  os << "(alpha=" << alpha_ << ", beta=" << beta_ << ")";
  return os.str();
}

}  // namespace greyvar
