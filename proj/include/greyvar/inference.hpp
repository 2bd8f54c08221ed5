#pragma once

#include <optional>
#include <string>
#include <vector>

#include "greyvar/params.hpp"
#include "greyvar/path.hpp"
#include "greyvar/variation.hpp"

namespace greyvar {

/// A hypothesised law: its parameters, critical exponent 2/alpha and the
/// critical variation limit that almost every path of that law exhibits.
class Candidate {
public:
  explicit Candidate(const GreyParams& params);

  const GreyParams& params() const noexcept { return params_; }
  double mu() const noexcept { return mu_; }
  double p_crit() const noexcept { return p_crit_; }

private:
  GreyParams params_;
  double mu_;
  double p_crit_;
};

struct Distinguishability {
  bool distinguishable = false;
  std::string reason;
  // Both Gamma arguments beta/alpha + 1 lie on the same side of the Gamma
  // minimum (only meaningful when alpha == alpha').
  bool same_monotonicity_region = false;
  double gamma_first = 0.0;   // Gamma(beta / alpha + 1)
  double gamma_second = 0.0;  // Gamma(beta' / alpha + 1)
};

Distinguishability distinguishability_check(const Candidate& first, const Candidate& second);

struct AlphaEstimate {
  double alpha = 0.0;
  double std_error = 0.0;
  double slope = 0.0;
  bool boundary = false;  // estimate outside the open interval (0, 2)
  int level_lo = 0;
  int level_hi = 0;
};

/// Regression of log2 V_p over dyadic levels: slope = 1 - p alpha / 2.
AlphaEstimate estimate_alpha(const SamplePath& path, double p, int level_lo, int level_hi);

enum class GammaRegion { Low, High };

struct BetaEstimate {
  double beta = 0.0;
  bool boundary = false;  // target outside the region's Gamma range
  double variation = 0.0;
  double gamma_target = 0.0;
};

/// Solves Gamma(beta/alpha + 1) = target by bisection inside the region.
/// Low: beta/alpha + 1 in (1, min(kappa, 1/alpha + 1)];
/// High: [kappa, 1/alpha + 1] (beta <= 1).
BetaEstimate invert_gamma_for_beta(double target, double alpha, GammaRegion region);

/// Moment-matching estimate of beta from the critical variation of a path.
BetaEstimate estimate_beta(const SamplePath& path, double alpha, GammaRegion region);

enum class DecisionLabel { First, Second, Inconclusive };

std::string to_string(DecisionLabel label);

struct DiscriminateOptions {
  double threshold = 0.5;
  // Levels used for the cross-exponent drift check when alpha != alpha'.
  int drift_level_lo = 8;
  // Minimum |log2 slope| of the losing candidate's critical sum.
  double drift_tol = 0.1;
};

struct Decision {
  DecisionLabel label = DecisionLabel::Inconclusive;
  double v_first = 0.0;
  double v_second = 0.0;
  double mu_first = 0.0;
  double mu_second = 0.0;
  double d_first = 0.0;
  double d_second = 0.0;
  double threshold = 0.0;
  int level = 0;
  // Cross-exponent drift check, present only when alpha != alpha'.
  struct Drift {
    int level_lo = 0;
    int level_hi = 0;
    double slope_first = 0.0;   // log2 slope of V at first.p_crit
    double slope_second = 0.0;  // log2 slope of V at second.p_crit
    bool loser_drifts = false;
  };
  std::optional<Drift> drift;
};

Decision discriminate(const SamplePath& path, const Candidate& first, const Candidate& second,
                      const DiscriminateOptions& options = {});

}  // namespace greyvar
