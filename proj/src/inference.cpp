#include "greyvar/inference.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "greyvar/error.hpp"
#include "greyvar/special_functions.hpp"

namespace greyvar {
namespace {

bool same_alpha(double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(a, b); }

}  // namespace

Candidate::Candidate(const GreyParams& params)
    : params_(params),
      mu_(theoretical_variation_limit(params)),
      p_crit_(2.0 / params.alpha()) {}

Distinguishability distinguishability_check(const Candidate& first, const Candidate& second) {
  Distinguishability out;
  const double alpha = first.params().alpha();
  const double alpha2 = second.params().alpha();
  if (!same_alpha(alpha, alpha2)) {
    out.distinguishable = true;
    out.reason = "alpha != alpha': critical exponents 2/alpha differ";
    return out;
  }
  const double x1 = first.params().beta() / alpha + 1.0;
  const double x2 = second.params().beta() / alpha + 1.0;
  out.gamma_first = std::tgamma(x1);
  out.gamma_second = std::tgamma(x2);
  out.same_monotonicity_region =
      (x1 <= kGammaArgmin && x2 <= kGammaArgmin) || (x1 >= kGammaArgmin && x2 >= kGammaArgmin);
  const double scale = std::max(std::abs(out.gamma_first), std::abs(out.gamma_second));
  if (std::abs(out.gamma_first - out.gamma_second) > 1e-10 * scale) {
    out.distinguishable = true;
    out.reason = "alpha == alpha' and Gamma(beta/alpha + 1) != Gamma(beta'/alpha + 1)";
  } else if (first.params().beta() == second.params().beta()) {
    out.reason = "identical parameters";
  } else {
    // Equal Gamma values on opposite sides of the minimum: equal critical
    // limits, so this method cannot separate them. No claim of equivalence.
    out.reason = "alpha == alpha' and Gamma(beta/alpha + 1) == Gamma(beta'/alpha + 1): "
                 "not distinguishable by this method";
  }
  return out;
}

AlphaEstimate estimate_alpha(const SamplePath& path, double p, int level_lo, int level_hi) {
  if (!(p > 0.0)) fail(ErrorKind::Parameter, "exponent p must be positive");
  if (!path.grid().is_dyadic()) fail(ErrorKind::Input, "alpha estimation needs a dyadic path");
  if (level_hi - level_lo < 3) {
    fail(ErrorKind::Parameter, "alpha estimation needs at least four levels");
  }
  const auto records = variation_sequence(path, p, level_lo, level_hi);
  const LogSlope fit = log2_slope(records);
  AlphaEstimate out;
  out.slope = fit.slope;
  out.alpha = 2.0 * (1.0 - fit.slope) / p;
  out.std_error = 2.0 * fit.std_error / p;
  out.boundary = !(out.alpha > 0.0 && out.alpha < 2.0);
  out.level_lo = level_lo;
  out.level_hi = level_hi;
  return out;
}

BetaEstimate invert_gamma_for_beta(double target, double alpha, GammaRegion region) {
  if (!(alpha > 0.0 && alpha < 2.0)) fail(ErrorKind::Parameter, "alpha must lie in (0, 2)");
  if (!(target >= kGammaMin * (1.0 - 1e-12))) {
    fail(ErrorKind::Estimation, "Gamma target " + std::to_string(target) +
                                    " is below the global minimum of Gamma; no solution");
  }
  BetaEstimate out;
  out.gamma_target = target;
  const double x_top = 1.0 / alpha + 1.0;  // beta = 1
  double lo, hi;
  if (region == GammaRegion::Low) {
    lo = 1.0;
    hi = std::min(kGammaArgmin, x_top);
  } else {
    lo = kGammaArgmin;
    hi = x_top;
  }
  const double g_lo = std::tgamma(lo);
  const double g_hi = std::tgamma(hi);
  const double g_max = std::max(g_lo, g_hi);
  const double g_min = std::min(g_lo, g_hi);
  auto to_beta = [&](double x) { return alpha * (x - 1.0); };
  if (target >= g_max || target <= g_min) {
    out.boundary = true;
    out.beta = to_beta((target >= g_max) == (g_lo >= g_hi) ? lo : hi);
    return out;
  }
  // Gamma is monotone on [lo, hi]; bisect on the sign of Gamma(x) - target.
  const bool decreasing = g_lo > g_hi;
  for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
    const double mid = 0.5 * (lo + hi);
    const bool above = std::tgamma(mid) > target;
    if (above == decreasing) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  out.beta = to_beta(0.5 * (lo + hi));
  return out;
}

BetaEstimate estimate_beta(const SamplePath& path, double alpha, GammaRegion region) {
  if (!(alpha > 0.0 && alpha < 2.0)) fail(ErrorKind::Parameter, "alpha must lie in (0, 2)");
  const double p = 2.0 / alpha;
  const double v = p_variation_sum(path, p).value;
  if (!(v > 0.0)) fail(ErrorKind::Input, "critical variation of the path is zero");
  // mu_{alpha,beta} = Gamma(1/alpha + 1) / Gamma(beta/alpha + 1) * E|Z|^{2/alpha}
  const double target = std::tgamma(1.0 / alpha + 1.0) * normal_abs_moment(p) / v;
  BetaEstimate out = invert_gamma_for_beta(target, alpha, region);
  out.variation = v;
  return out;
}

std::string to_string(DecisionLabel label) {
  switch (label) {
    case DecisionLabel::First: return "First";
    case DecisionLabel::Second: return "Second";
    case DecisionLabel::Inconclusive: return "Inconclusive";
  }
  return "Inconclusive";
}

Decision discriminate(const SamplePath& path, const Candidate& first, const Candidate& second,
                      const DiscriminateOptions& options) {
  const auto check = distinguishability_check(first, second);
  if (!check.distinguishable) {
    fail(ErrorKind::Precondition, "candidates are not distinguishable: " + check.reason);
  }
  if (!path.grid().is_dyadic() || path.grid().resolution() < 8) {
    fail(ErrorKind::Input, "discrimination needs a dyadic path of level >= 8");
  }
  if (!(options.threshold > 0.0)) fail(ErrorKind::Parameter, "threshold must be positive");

  Decision out;
  out.level = static_cast<int>(path.grid().resolution());
  out.threshold = options.threshold;
  out.mu_first = first.mu();
  out.mu_second = second.mu();
  out.v_first = p_variation_sum(path, first.p_crit()).value;
  out.v_second = p_variation_sum(path, second.p_crit()).value;
  out.d_first = std::abs(out.v_first - out.mu_first) / out.mu_first;
  out.d_second = std::abs(out.v_second - out.mu_second) / out.mu_second;

  DecisionLabel winner = DecisionLabel::Inconclusive;
  if (out.d_first < out.d_second && out.d_first < options.threshold) {
    winner = DecisionLabel::First;
  } else if (out.d_second < out.d_first && out.d_second < options.threshold) {
    winner = DecisionLabel::Second;
  }

  if (!same_alpha(first.params().alpha(), second.params().alpha())) {
    Decision::Drift drift;
    drift.level_hi = out.level;
    drift.level_lo = std::max(1, std::min(options.drift_level_lo, out.level - 3));
    drift.slope_first =
        log2_slope(variation_sequence(path, first.p_crit(), drift.level_lo, drift.level_hi)).slope;
    drift.slope_second =
        log2_slope(variation_sequence(path, second.p_crit(), drift.level_lo, drift.level_hi))
            .slope;
    // Under the winner, the loser's critical sum tends to 0 when the loser has
    // the smaller alpha (larger exponent) and to infinity otherwise.
    if (winner != DecisionLabel::Inconclusive) {
      const bool first_wins = winner == DecisionLabel::First;
      const double loser_alpha = (first_wins ? second : first).params().alpha();
      const double winner_alpha = (first_wins ? first : second).params().alpha();
      const double loser_slope = first_wins ? drift.slope_second : drift.slope_first;
      drift.loser_drifts = loser_alpha < winner_alpha ? loser_slope <= -options.drift_tol
                                                      : loser_slope >= options.drift_tol;
      if (!drift.loser_drifts) winner = DecisionLabel::Inconclusive;
    }
    out.drift = drift;
  }
  out.label = winner;
  return out;
}

}  // namespace greyvar
