#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace greyvar {

/// Welford accumulator for mean and variance.
class RunningMoments {
public:
  void add(double x) noexcept;
  void merge(const RunningMoments& other) noexcept;

  std::size_t count() const noexcept { return n_; }
  double mean() const noexcept { return mean_; }
  double variance() const noexcept;  // unbiased
  double std_dev() const noexcept;
  double std_error() const noexcept;

private:
  std::size_t n_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

RunningMoments moments_of(std::span<const double> xs);

double median(std::vector<double> xs);

struct KsResult {
  double statistic = 0.0;
  double p_value = 1.0;
};

/// Two-sample Kolmogorov-Smirnov test with the asymptotic p-value.
KsResult ks_two_sample(std::vector<double> a, std::vector<double> b);

/// Survival function of the Kolmogorov distribution, P(K > x).
double kolmogorov_sf(double x);

/// z = (observed - expected) / std_error, 0 when both differences vanish.
double z_score(double observed, double expected, double std_error);

}  // namespace greyvar
