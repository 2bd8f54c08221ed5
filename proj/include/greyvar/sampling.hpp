#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <vector>

#include <Eigen/Dense>

#include "greyvar/params.hpp"
#include "greyvar/path.hpp"
#include "greyvar/rng.hpp"

namespace greyvar {

/// Maximum number of grid points accepted by the Cholesky sampler.
inline constexpr std::size_t kMaxCholeskyPoints = (std::size_t{1} << 12) + 1;
/// Maximum dyadic level accepted by the circulant sampler.
inline constexpr int kMaxCirculantLevel = 24;
/// Eigenvalues of the circulant embedding in (-tol, 0) are clipped to zero.
inline constexpr double kCirculantEigenTolerance = 1e-9;

/// Covariance of standard fBm: (s^{2H} + t^{2H} - |t - s|^{2H}) / 2.
double fbm_covariance(double hurst, double s, double t);

/// Exact fBm sampler through the Cholesky factor of the grid covariance.
/// Factorizes once; each sample() costs O(m^2).
class CholeskyFbm {
public:
  CholeskyFbm(double hurst, Grid grid);

  SamplePath sample(const RngSpec& rng) const;
  /// Fills values (size grid.points()) from the given engine.
  void sample_into(Engine& engine, std::span<double> values) const;

  double hurst() const noexcept { return hurst_; }
  const Grid& grid() const noexcept { return grid_; }
  bool used_jitter() const noexcept { return jittered_; }

private:
  double hurst_;
  Grid grid_;
  Eigen::MatrixXd lower_;
  bool jittered_ = false;
};

/// Exact fBm sampler by circulant embedding of the stationary increment
/// covariance (Davies-Harte). O(m log m) per path.
class CirculantFbm {
public:
  CirculantFbm(double hurst, Grid grid);
  ~CirculantFbm();
  CirculantFbm(CirculantFbm&&) noexcept;
  CirculantFbm& operator=(CirculantFbm&&) noexcept;

  SamplePath sample(const RngSpec& rng) const;
  void sample_into(Engine& engine, std::span<double> values) const;

  double hurst() const noexcept { return hurst_; }
  const Grid& grid() const noexcept { return grid_; }
  /// Smallest eigenvalue of the embedding before clipping.
  double min_eigenvalue() const noexcept { return min_eigenvalue_; }

private:
  struct Plan;

  double hurst_;
  Grid grid_;
  std::vector<double> sqrt_eigen_;  // sqrt(lambda_k / M)
  double min_eigenvalue_ = 0.0;
  std::unique_ptr<Plan> plan_;
};

SamplePath sample_fbm_cholesky(double hurst, const Grid& grid, const RngSpec& rng);
SamplePath sample_fbm_circulant(double hurst, int level, const RngSpec& rng);

/// Positive stable variable with Laplace transform exp(-s^beta), 0 < beta < 1,
/// drawn with Kanter's representation.
double sample_one_sided_stable(double beta, Engine& engine);
double sample_one_sided_stable(double beta, const RngSpec& rng);

/// Draw of Y_beta with density M_beta; exactly 1 when beta == 1.
double sample_mwright(double beta, Engine& engine);
double sample_mwright(double beta, const RngSpec& rng);

/// ggBm sampler: sqrt(Y_beta) times a standard fBm path with H = alpha / 2.
/// One Y_beta per path, drawn before the fBm noise from the same substream.
class GgbmSampler {
public:
  GgbmSampler(const GreyParams& params, Grid grid);

  SamplePath sample(const RngSpec& rng) const;

  const GreyParams& params() const noexcept { return params_; }
  const Grid& grid() const noexcept { return fbm_.grid(); }

private:
  GreyParams params_;
  CirculantFbm fbm_;
};

SamplePath sample_ggbm(const GreyParams& params, const Grid& grid, const RngSpec& rng);

}  // namespace greyvar
