#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "greyvar/params.hpp"
#include "greyvar/path.hpp"

namespace greyvar {

/// One p-variation sum: grid resolution (dyadic level or uniform steps),
/// exponent and value.
struct VariationRecord {
  std::size_t resolution = 0;
  double p = 0.0;
  double value = 0.0;
};

/// Asymptotic regime of V_{p,n} as the grid is refined.
struct TrichotomyLabel {
  struct Zero {};
  struct Infinite {};
  struct CriticalFinite {
    double limit;
  };

  std::variant<Zero, Infinite, CriticalFinite> regime;

  bool is_zero() const noexcept { return std::holds_alternative<Zero>(regime); }
  bool is_infinite() const noexcept { return std::holds_alternative<Infinite>(regime); }
  bool is_critical() const noexcept {
    return std::holds_alternative<CriticalFinite>(regime);
  }
  double limit() const;
  std::string to_string() const;
};

/// Tolerance on |p * alpha / 2 - 1| below which p is treated as critical.
inline constexpr double kCriticalExponentTol = 1e-12;

/// Sum of |x(t_j) - x(t_{j-1})|^p over consecutive grid points.
VariationRecord p_variation_sum(const SamplePath& path, double p);

/// n^{p alpha / 2 - 1} times the p-variation sum of a uniform n-step path.
double renormalized_statistic(const SamplePath& path, double p, double alpha);

TrichotomyLabel variation_trichotomy(double alpha, double beta, double p);

/// p-variation of a dyadic path coarsened to each level in [level_lo, level_hi].
std::vector<VariationRecord> variation_sequence(const SamplePath& path, double p,
                                                int level_lo, int level_hi);

struct DominanceBound {
  double sup_factor;   // (max_j |increment|)^{q - p}
  double p_variation;  // sum_j |increment|^p
  double bound() const noexcept { return sup_factor * p_variation; }
};

/// Factors of the bound sum|d|^q <= max|d|^{q-p} * sum|d|^p, q > p > 0.
DominanceBound hoelder_dominance_bound(const SamplePath& path, double p, double q);

/// Least-squares slope of log2(value) against level, with its standard error.
struct LogSlope {
  double slope = 0.0;
  double std_error = 0.0;
  double intercept = 0.0;
};
LogSlope log2_slope(std::span<const VariationRecord> records);

}  // namespace greyvar
