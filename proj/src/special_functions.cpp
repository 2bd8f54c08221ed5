#include "greyvar/special_functions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "greyvar/error.hpp"

namespace greyvar {
namespace {

constexpr double kQuadratureTol = 1e-13;

std::size_t refinements_for(const EvalConfig& cfg) {
  // quadrature_points bounds the abscissae of the finest double-exponential level.
  const int levels = static_cast<int>(std::floor(std::log2(cfg.quadrature_points)));
  return static_cast<std::size_t>(std::clamp(levels, 4, 15));
}

void check_beta(double beta, bool allow_one) {
  const bool ok = beta > 0.0 && (allow_one ? beta <= 1.0 : beta < 1.0);
  if (!ok) {
    fail(ErrorKind::Parameter, std::string("beta must lie in (0, 1") + (allow_one ? "]" : ")") +
                                   ", got " + std::to_string(beta));
  }
}

// A power series sum_n sign_n * exp(log_mag(n)) is evaluated directly only if
// its largest term stays below cfg.max_series_term (bounded cancellation) and
// terms fall below series_tol relative to the leading scale within max_terms.
struct SeriesPlan {
  bool usable = false;
  int terms = 0;
};

template <typename LogMagnitude>
SeriesPlan plan_series(LogMagnitude log_mag, const EvalConfig& cfg) {
  const double log_cap = std::log(cfg.max_series_term);
  const double log_tol = std::log(cfg.series_tol);
  double peak = log_mag(0);
  for (int n = 0; n < cfg.max_terms; ++n) {
    const double lm = log_mag(n);
    peak = std::max(peak, lm);
    if (peak > log_cap) return {};
    // Terms decay monotonically once past the peak for both series used here.
    if (n > 0 && lm < peak && lm < log_tol) return {true, n + 1};
  }
  return {};
}

double mittag_leffler_series(double beta, double s, int terms) {
  const double log_s = std::log(s);
  double sum = 0.0;
  for (int n = terms - 1; n >= 0; --n) {
    const double mag = std::exp(n * log_s - std::lgamma(beta * n + 1.0));
    sum += (n % 2 == 0) ? mag : -mag;
  }
  return sum;
}

// E_beta(-s) = sin(beta pi)/(pi beta) * int_0^inf exp(-s^{1/beta} u^{1/beta}) / (u^2 + 2u cos(beta pi) + 1) du
double mittag_leffler_integral(double beta, double s, const EvalConfig& cfg) {
  const double t = std::pow(s, 1.0 / beta);
  const double c = std::cos(beta * M_PI);
  auto integrand = [&](double u) {
    const double denom = u * u + 2.0 * u * c + 1.0;
    return std::exp(-t * std::pow(u, 1.0 / beta)) / denom;
  };
  boost::math::quadrature::exp_sinh<double> integrator(refinements_for(cfg));
  double error = 0.0;
  double l1 = 0.0;
  const double value = integrator.integrate(integrand, kQuadratureTol, &error, &l1);
  if (!(error <= 1e-9 * std::max(1.0, l1))) {
    fail(ErrorKind::Accuracy, "Mittag-Leffler quadrature did not converge for beta=" +
                                  std::to_string(beta) + ", s=" + std::to_string(s));
  }
  return std::sin(beta * M_PI) / (M_PI * beta) * value;
}

double log_abs_mwright_term(double beta, double tau, int n) {
  // |tau^n / n! * Gamma(beta (n + 1)) sin(pi beta (n + 1)) / pi|; sin bounded by 1.
  const double log_tau = tau > 0.0 ? std::log(tau) : -std::numeric_limits<double>::infinity();
  return (n == 0 ? 0.0 : n * log_tau) - std::lgamma(n + 1.0) + std::lgamma(beta * (n + 1.0)) -
         std::log(M_PI);
}

// M_beta(tau) = sum_n (-tau)^n / (n! Gamma(1 - beta - beta n)), with the
// reflection 1/Gamma(1 - x) = Gamma(x) sin(pi x) / pi at x = beta (n + 1).
double mwright_series(double beta, double tau, int terms) {
  double sum = 0.0;
  for (int n = terms - 1; n >= 0; --n) {
    const double x = beta * (n + 1.0);
    const double mag = std::exp((n == 0 ? 0.0 : n * std::log(tau)) - std::lgamma(n + 1.0) +
                                std::lgamma(x)) *
                       std::sin(M_PI * x) / M_PI;
    sum += (n % 2 == 0) ? mag : -mag;
  }
  return sum;
}

// Density of Y = (E / A(U))^{1 - beta} with U uniform on (0, pi), E standard
// exponential (Kanter), integrated over U.
double mwright_integral(double beta, double tau, const EvalConfig& cfg) {
  const double inv = 1.0 / (1.0 - beta);
  const double x = std::pow(tau, inv);
  auto integrand = [&](double u) {
    const double log_a = beta * inv * std::log(std::sin(beta * u)) +
                         std::log(std::sin((1.0 - beta) * u)) - inv * std::log(std::sin(u));
    const double a = std::exp(log_a);
    const double value = a * std::exp(-a * x);
    return std::isfinite(value) ? value : 0.0;
  };
  boost::math::quadrature::tanh_sinh<double> integrator(refinements_for(cfg));
  double error = 0.0;
  double l1 = 0.0;
  const double value = integrator.integrate(integrand, 0.0, M_PI, kQuadratureTol, &error, &l1);
  if (!(error <= 1e-9 * std::max(1.0, l1))) {
    fail(ErrorKind::Accuracy, "M-Wright quadrature did not converge for beta=" +
                                  std::to_string(beta) + ", tau=" + std::to_string(tau));
  }
  return inv * std::pow(tau, beta * inv) * value / M_PI;
}

}  // namespace

void EvalConfig::validate() const {
  if (!(series_tol > 0.0)) fail(ErrorKind::Parameter, "series_tol must be positive");
  if (max_terms < 1) fail(ErrorKind::Parameter, "max_terms must be at least 1");
  if (quadrature_points < 16) fail(ErrorKind::Parameter, "quadrature_points must be at least 16");
  if (!(max_series_term >= 1.0)) fail(ErrorKind::Parameter, "max_series_term must be >= 1");
}

double mittag_leffler(double beta, double s, const EvalConfig& cfg) {
  check_beta(beta, true);
  if (!std::isfinite(s) || s < 0.0) {
    fail(ErrorKind::Input, "Mittag-Leffler argument must be finite and >= 0, got " +
                               std::to_string(s));
  }
  cfg.validate();
  if (s == 0.0) return 1.0;
  if (beta == 1.0) return std::exp(-s);
  const double log_s = std::log(s);
  const auto plan =
      plan_series([&](int n) { return n * log_s - std::lgamma(beta * n + 1.0); }, cfg);
  const double value = plan.usable ? mittag_leffler_series(beta, s, plan.terms)
                                   : mittag_leffler_integral(beta, s, cfg);
  return std::clamp(value, std::numeric_limits<double>::min(), 1.0);
}

double mwright_pdf(double beta, double tau, const EvalConfig& cfg) {
  if (beta == 1.0) {
    fail(ErrorKind::Parameter,
         "M-Wright density is the point mass at tau = 1 for beta = 1; handle it separately");
  }
  check_beta(beta, false);
  if (!std::isfinite(tau) || tau < 0.0) {
    fail(ErrorKind::Input, "M-Wright argument must be finite and >= 0");
  }
  cfg.validate();
  if (tau == 0.0) return 1.0 / std::tgamma(1.0 - beta);
  const auto plan = plan_series([&](int n) { return log_abs_mwright_term(beta, tau, n); }, cfg);
  const double value =
      plan.usable ? mwright_series(beta, tau, plan.terms) : mwright_integral(beta, tau, cfg);
  return std::max(value, 0.0);
}

double mwright_moment(double beta, double delta) {
  check_beta(beta, true);
  if (!(delta > -1.0)) {
    fail(ErrorKind::Parameter, "moment order must exceed -1, got " + std::to_string(delta));
  }
  return std::exp(std::lgamma(delta + 1.0) - std::lgamma(beta * delta + 1.0));
}

double normal_abs_moment(double q) {
  if (!(q > -1.0)) {
    fail(ErrorKind::Parameter, "normal absolute moment order must exceed -1");
  }
  return std::exp(0.5 * q * M_LN2 + std::lgamma(0.5 * (q + 1.0))) / std::sqrt(M_PI);
}

double ggbm_abs_moment(double beta, double p) {
  if (!(p > 0.0)) fail(ErrorKind::Parameter, "moment order p must be positive");
  return mwright_moment(beta, 0.5 * p) * normal_abs_moment(p);
}

double theoretical_variation_limit(const GreyParams& params) {
  return ggbm_abs_moment(params.beta(), 2.0 / params.alpha());
}

}  // namespace greyvar
