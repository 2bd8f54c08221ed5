#pragma once

#include <string>

namespace greyvar {

/// Model parameters (alpha, beta) of a generalized grey Brownian motion.
/// beta == 1 is fractional Brownian motion with Hurst index alpha / 2.
class GreyParams {
public:
  GreyParams(double alpha, double beta);

  static GreyParams fbm(double hurst) { return GreyParams(2.0 * hurst, 1.0); }

  double alpha() const noexcept { return alpha_; }
  double beta() const noexcept { return beta_; }
  double hurst() const noexcept { return 0.5 * alpha_; }
  bool is_gaussian() const noexcept { return beta_ == 1.0; }

  std::string to_string() const;

  friend bool operator==(const GreyParams&, const GreyParams&) = default;

private:
  double alpha_;
  double beta_;
};

}  // namespace greyvar
