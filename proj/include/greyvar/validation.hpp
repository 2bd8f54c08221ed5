#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "greyvar/params.hpp"
#include "greyvar/rng.hpp"

namespace greyvar {

/// Pass policy: |z| <= kSigmaPolicy.
inline constexpr double kSigmaPolicy = 4.0;

struct CfCheckSpec {
  std::vector<double> thetas;
  double s = 0.0;
  double t = 1.0;
  std::size_t n_paths = 100000;
  int level = 4;  // dyadic simulation grid; s and t must be grid points

  void validate() const;
};

struct CfRow {
  double theta = 0.0;
  double empirical_re = 0.0;
  double empirical_im = 0.0;
  double theoretical = 0.0;
  double std_error_re = 0.0;
  double std_error_im = 0.0;
  double z_re = 0.0;
  double z_im = 0.0;
  bool pass = false;
};

struct CfReport {
  GreyParams params;
  CfCheckSpec spec;
  std::vector<CfRow> rows;
  bool pass = false;
};

/// Empirical characteristic function of x(t) - x(s) against
/// E_beta(-theta^2 |t - s|^alpha / 2).
CfReport check_increment_cf(const GreyParams& params, const CfCheckSpec& spec,
                            const RngSpec& rng, unsigned threads = 1);

struct MomentRow {
  int order = 0;
  double empirical = 0.0;
  double theoretical = 0.0;
  double std_error = 0.0;
  double z = 0.0;
  bool pass = false;
};

struct MomentReport {
  GreyParams params;
  double t = 1.0;
  std::size_t n_paths = 0;
  std::vector<MomentRow> rows;  // requested even orders followed by odd orders 1, 3
  bool pass = false;
};

/// E B(t)^{2n} = (2n)! / (2^n Gamma(beta n + 1)) t^{n alpha}; odd moments vanish.
double ggbm_even_moment(const GreyParams& params, double t, int order);

/// orders: even moment orders, each in {2, 4}.
MomentReport check_even_moments(const GreyParams& params, double t, const std::vector<int>& orders,
                                std::size_t n_paths, const RngSpec& rng, unsigned threads = 1);

struct MixingRow {
  int lag = 0;
  double covariance = 0.0;
  double std_error = 0.0;
  double z = 0.0;
  // Gaussian reference: fBm increment covariance at separation lag - 1.
  double fbm_autocovariance = 0.0;
};

struct MixingReport {
  GreyParams params;
  std::size_t n_paths = 0;
  int level = 0;
  double unit_scale = 0.0;  // 2^{level alpha / 2}
  std::string probe = "tanh";
  std::vector<MixingRow> rows;
  bool decayed = false;  // |z| <= kSigmaPolicy at the largest lag
};

/// Covariance of two unit-spaced fBm increments `separation` steps apart.
double fbm_increment_autocovariance(double hurst, int separation);

/// Cov(f(D_1), f(D_j)) for the unit increments D_j = B(j) - B(j-1), f = tanh,
/// at each requested lag j in [1, 128]. The unit increments of B on [0, 2^N] are
/// realized from a level-N path on [0, 1] scaled by 2^{N alpha / 2}.
MixingReport check_mixing_decay(const GreyParams& params, const std::vector<int>& lags,
                                std::size_t n_paths, const RngSpec& rng, unsigned threads = 1);

}  // namespace greyvar
