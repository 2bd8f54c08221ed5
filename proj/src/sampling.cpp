#include "greyvar/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <string>

#include <fftw3.h>

#include "greyvar/error.hpp"

namespace greyvar {
namespace {

void check_hurst(double hurst) {
  if (!(hurst > 0.0 && hurst < 1.0)) {
    fail(ErrorKind::Parameter, "Hurst index must lie in (0, 1), got " + std::to_string(hurst));
  }
}

// FFTW planning is not thread-safe; execution with new arrays is.
std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}

struct FftwBuffer {
  explicit FftwBuffer(std::size_t n)
      : data(static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n))) {
    if (data == nullptr) fail(ErrorKind::Capacity, "FFT buffer allocation failed");
  }
  ~FftwBuffer() { fftw_free(data); }
  FftwBuffer(const FftwBuffer&) = delete;
  FftwBuffer& operator=(const FftwBuffer&) = delete;

  fftw_complex* data;
};

// Autocovariance of unit-spaced fBm increments (fractional Gaussian noise).
double fgn_autocovariance(double hurst, std::size_t lag) {
  const double k = static_cast<double>(lag);
  const double h2 = 2.0 * hurst;
  return 0.5 * (std::pow(k + 1.0, h2) - 2.0 * std::pow(k, h2) + std::pow(std::abs(k - 1.0), h2));
}

// log A(u) for Kanter's representation of the positive beta-stable law:
// A(u) = sin(beta u)^{beta/(1-beta)} sin((1-beta) u) / sin(u)^{1/(1-beta)}.
double kanter_log_a(double beta, double u) {
  const double inv = 1.0 / (1.0 - beta);
  return beta * inv * std::log(std::sin(beta * u)) + std::log(std::sin((1.0 - beta) * u)) -
         inv * std::log(std::sin(u));
}

}  // namespace

double fbm_covariance(double hurst, double s, double t) {
  check_hurst(hurst);
  if (!(s >= 0.0 && s <= 1.0 && t >= 0.0 && t <= 1.0)) {
    fail(ErrorKind::Parameter, "fbm_covariance times must lie in [0, 1]");
  }
  const double h2 = 2.0 * hurst;
  return 0.5 * (std::pow(s, h2) + std::pow(t, h2) - std::pow(std::abs(t - s), h2));
}

// ---------------------------------------------------------------------------
// Cholesky

CholeskyFbm::CholeskyFbm(double hurst, Grid grid) : hurst_(hurst), grid_(grid) {
  check_hurst(hurst);
  if (grid.points() > kMaxCholeskyPoints) {
    fail(ErrorKind::Capacity, "Cholesky sampler supports at most " +
                                  std::to_string(kMaxCholeskyPoints) + " grid points, got " +
                                  std::to_string(grid.points()));
  }
  const auto m = static_cast<Eigen::Index>(grid.steps());
  Eigen::MatrixXd cov(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j <= i; ++j) {
      const double v = fbm_covariance(hurst, grid.time(static_cast<std::size_t>(i) + 1),
                                      grid.time(static_cast<std::size_t>(j) + 1));
      cov(i, j) = v;
      cov(j, i) = v;
    }
  }
  Eigen::LLT<Eigen::MatrixXd> llt(cov);
  if (llt.info() != Eigen::Success) {
    const double jitter = 1e-12 * cov.diagonal().maxCoeff();
    cov.diagonal().array() += jitter;
    llt.compute(cov);
    if (llt.info() != Eigen::Success) {
      fail(ErrorKind::Numerical, "fBm covariance is not positive definite (H=" +
                                     std::to_string(hurst) + ", " + grid.to_string() +
                                     ") even after diagonal jitter");
    }
    jittered_ = true;
  }
  lower_ = llt.matrixL();
}

void CholeskyFbm::sample_into(Engine& engine, std::span<double> values) const {
  const auto m = lower_.rows();
  Eigen::VectorXd z(m);
  NormalStream normal(engine);
  for (Eigen::Index i = 0; i < m; ++i) z[i] = normal.next();
  const Eigen::VectorXd x = lower_.triangularView<Eigen::Lower>() * z;
  values[0] = 0.0;
  for (Eigen::Index i = 0; i < m; ++i) values[static_cast<std::size_t>(i) + 1] = x[i];
}

SamplePath CholeskyFbm::sample(const RngSpec& rng) const {
  Engine engine = make_engine(rng);
  std::vector<double> values(grid_.points());
  sample_into(engine, values);
  return SamplePath(grid_, std::move(values), GreyParams::fbm(hurst_), rng);
}

// ---------------------------------------------------------------------------
// Circulant embedding

struct CirculantFbm::Plan {
  fftw_plan plan = nullptr;
  std::size_t size = 0;

  explicit Plan(std::size_t n) : size(n) {
    FftwBuffer in(n), out(n);
    std::lock_guard lock(fftw_planner_mutex());
    plan = fftw_plan_dft_1d(static_cast<int>(n), in.data, out.data, FFTW_FORWARD,
                            FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (plan == nullptr) fail(ErrorKind::Numerical, "FFTW planning failed");
  }
  ~Plan() {
    std::lock_guard lock(fftw_planner_mutex());
    fftw_destroy_plan(plan);
  }
  void execute(fftw_complex* in, fftw_complex* out) const { fftw_execute_dft(plan, in, out); }
};

CirculantFbm::CirculantFbm(double hurst, Grid grid) : hurst_(hurst), grid_(grid) {
  check_hurst(hurst);
  const std::size_t m = grid.steps();
  if (m > (std::size_t{1} << kMaxCirculantLevel)) {
    fail(ErrorKind::Capacity, "circulant sampler supports at most 2^" +
                                  std::to_string(kMaxCirculantLevel) + " steps");
  }
  const std::size_t size = 2 * m;
  plan_ = std::make_unique<Plan>(size);

  FftwBuffer row(size), spectrum(size);
  for (std::size_t k = 0; k <= m; ++k) {
    row.data[k][0] = fgn_autocovariance(hurst, k);
    row.data[k][1] = 0.0;
  }
  for (std::size_t k = 1; k < m; ++k) {
    row.data[size - k][0] = row.data[k][0];
    row.data[size - k][1] = 0.0;
  }
  plan_->execute(row.data, spectrum.data);

  sqrt_eigen_.resize(size);
  min_eigenvalue_ = spectrum.data[0][0];
  for (std::size_t k = 0; k < size; ++k) {
    double lambda = spectrum.data[k][0];
    min_eigenvalue_ = std::min(min_eigenvalue_, lambda);
    if (lambda < 0.0) {
      if (lambda <= -kCirculantEigenTolerance) {
        fail(ErrorKind::Numerical, "circulant embedding has negative eigenvalue " +
                                       std::to_string(lambda) + " (H=" + std::to_string(hurst) +
                                       ", " + grid.to_string() + ")");
      }
      lambda = 0.0;
    }
    sqrt_eigen_[k] = std::sqrt(lambda / static_cast<double>(size));
  }
}

CirculantFbm::~CirculantFbm() = default;
CirculantFbm::CirculantFbm(CirculantFbm&&) noexcept = default;
CirculantFbm& CirculantFbm::operator=(CirculantFbm&&) noexcept = default;

void CirculantFbm::sample_into(Engine& engine, std::span<double> values) const {
  const std::size_t size = sqrt_eigen_.size();
  const std::size_t m = size / 2;
  FftwBuffer in(size), out(size);
  NormalStream normal(engine);
  for (std::size_t k = 0; k < size; ++k) {
    in.data[k][0] = sqrt_eigen_[k] * normal.next();
    in.data[k][1] = sqrt_eigen_[k] * normal.next();
  }
  plan_->execute(in.data, out.data);
  // Real part of the transform is fractional Gaussian noise at unit spacing.
  const double scale = std::pow(static_cast<double>(m), -hurst_);
  values[0] = 0.0;
  for (std::size_t j = 0; j < m; ++j) values[j + 1] = values[j] + scale * out.data[j][0];
}

SamplePath CirculantFbm::sample(const RngSpec& rng) const {
  Engine engine = make_engine(rng);
  std::vector<double> values(grid_.points());
  sample_into(engine, values);
  return SamplePath(grid_, std::move(values), GreyParams::fbm(hurst_), rng);
}

SamplePath sample_fbm_cholesky(double hurst, const Grid& grid, const RngSpec& rng) {
  return CholeskyFbm(hurst, grid).sample(rng);
}

SamplePath sample_fbm_circulant(double hurst, int level, const RngSpec& rng) {
  if (level < 0 || level > kMaxCirculantLevel) {
    fail(ErrorKind::Capacity, "circulant level must lie in [0, " +
                                  std::to_string(kMaxCirculantLevel) + "], got " +
                                  std::to_string(level));
  }
  return CirculantFbm(hurst, Grid::dyadic(level)).sample(rng);
}

// ---------------------------------------------------------------------------
// Subordinator

double sample_one_sided_stable(double beta, Engine& engine) {
  if (!(beta > 0.0 && beta < 1.0)) {
    fail(ErrorKind::Parameter, "stable index must lie in (0, 1), got " + std::to_string(beta));
  }
  const double u = M_PI * open_uniform(engine);
  const double e = -std::log(open_uniform(engine));
  // S = (A(U) / E)^{(1 - beta) / beta}
  return std::exp((1.0 - beta) / beta * (kanter_log_a(beta, u) - std::log(e)));
}

double sample_one_sided_stable(double beta, const RngSpec& rng) {
  Engine engine = make_engine(rng);
  return sample_one_sided_stable(beta, engine);
}

double sample_mwright(double beta, Engine& engine) {
  if (!(beta > 0.0 && beta <= 1.0)) {
    fail(ErrorKind::Parameter, "beta must lie in (0, 1], got " + std::to_string(beta));
  }
  if (beta == 1.0) return 1.0;
  // Y = S^{-beta}, evaluated in log space: (E / A(U))^{1 - beta}. Same
  // uniform/exponential draws as sample_one_sided_stable.
  const double u = M_PI * open_uniform(engine);
  const double e = -std::log(open_uniform(engine));
  return std::exp((1.0 - beta) * (std::log(e) - kanter_log_a(beta, u)));
}

double sample_mwright(double beta, const RngSpec& rng) {
  Engine engine = make_engine(rng);
  return sample_mwright(beta, engine);
}

// ---------------------------------------------------------------------------
// ggBm

GgbmSampler::GgbmSampler(const GreyParams& params, Grid grid)
    : params_(params), fbm_(params.hurst(), grid) {}

SamplePath GgbmSampler::sample(const RngSpec& rng) const {
  Engine engine = make_engine(rng);
  const double y = sample_mwright(params_.beta(), engine);
  std::vector<double> values(fbm_.grid().points());
  fbm_.sample_into(engine, values);
  const double factor = std::sqrt(y);
  for (double& v : values) v *= factor;
  return SamplePath(fbm_.grid(), std::move(values), params_, rng);
}

SamplePath sample_ggbm(const GreyParams& params, const Grid& grid, const RngSpec& rng) {
  return GgbmSampler(params, grid).sample(rng);
}

}  // namespace greyvar
