#pragma once

#include "greyvar/params.hpp"

namespace greyvar {

/// Accuracy controls for series and quadrature based evaluation.
struct EvalConfig {
  double series_tol = 1e-15;  // stop once |term| < series_tol * |partial sum|
  int max_terms = 200;
  int quadrature_points = 1024;  // finest-level abscissae budget
  // Largest admissible term magnitude before the alternating series is
  // considered cancellation-prone and the integral form is used instead.
  double max_series_term = 1e2;

  void validate() const;
};

/// Location of the minimum of Gamma on (0, inf).
inline constexpr double kGammaArgmin = 1.4616321449683623;
/// Gamma(kGammaArgmin).
inline constexpr double kGammaMin = 0.8856031944108887;

/// E_beta(-s) for 0 < beta <= 1 and s >= 0.
double mittag_leffler(double beta, double s, const EvalConfig& cfg = {});

/// M-Wright density M_beta(tau), 0 < beta < 1. beta == 1 is the point mass
/// at tau = 1 and is rejected.
double mwright_pdf(double beta, double tau, const EvalConfig& cfg = {});

/// Gamma(delta + 1) / Gamma(beta * delta + 1): moment of order delta of M_beta.
double mwright_moment(double beta, double delta);

/// E|Z|^q for a standard normal Z.
double normal_abs_moment(double q);

/// E|B_{alpha,beta}(1)|^p. Independent of alpha.
double ggbm_abs_moment(double beta, double p);

/// Critical variation limit E|B_{alpha,beta}(1)|^{2/alpha}.
double theoretical_variation_limit(const GreyParams& params);

}  // namespace greyvar
