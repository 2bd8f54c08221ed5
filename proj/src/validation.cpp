#include "greyvar/validation.hpp"

#include <algorithm>
#include <cmath>

#include "greyvar/error.hpp"
#include "greyvar/parallel.hpp"
#include "greyvar/sampling.hpp"
#include "greyvar/special_functions.hpp"
#include "greyvar/stats.hpp"

namespace greyvar {
namespace {

std::size_t grid_index(const Grid& grid, double t, const char* what) {
  const auto index = grid.index_of(t);
  if (!index) {
    fail(ErrorKind::Input, std::string(what) + " = " + std::to_string(t) +
                               " is not a point of the simulation grid " + grid.to_string());
  }
  return *index;
}

// Values x(t_index) of n independent paths, path i on substream i.
std::vector<double> sample_marginal(const GgbmSampler& sampler, std::size_t index,
                                    std::size_t n_paths, const RngSpec& rng, unsigned threads) {
  std::vector<double> out(n_paths);
  parallel_for(n_paths, threads, [&](std::size_t i) {
    out[i] = sampler.sample(rng.substream(i))[index];
  });
  return out;
}

}  // namespace

void CfCheckSpec::validate() const {
  if (thetas.empty()) fail(ErrorKind::Parameter, "cf check needs at least one theta");
  if (s == t) fail(ErrorKind::Parameter, "cf check needs s != t");
  if (!(s >= 0.0 && s <= 1.0 && t >= 0.0 && t <= 1.0)) {
    fail(ErrorKind::Parameter, "cf check times must lie in [0, 1]");
  }
  if (n_paths < 10000) fail(ErrorKind::Parameter, "cf check needs n_paths >= 10^4");
}

CfReport check_increment_cf(const GreyParams& params, const CfCheckSpec& spec, const RngSpec& rng,
                            unsigned threads) {
  spec.validate();
  const Grid grid = Grid::dyadic(spec.level);
  const std::size_t is = grid_index(grid, spec.s, "s");
  const std::size_t it = grid_index(grid, spec.t, "t");
  const GgbmSampler sampler(params, grid);

  std::vector<double> increments(spec.n_paths);
  parallel_for(spec.n_paths, threads, [&](std::size_t i) {
    const auto path = sampler.sample(rng.substream(i));
    increments[i] = path[it] - path[is];
  });

  CfReport report{params, spec, {}, true};
  const double gap = std::pow(std::abs(spec.t - spec.s), params.alpha());
  for (double theta : spec.thetas) {
    RunningMoments re, im;
    for (double d : increments) {
      re.add(std::cos(theta * d));
      im.add(std::sin(theta * d));
    }
    CfRow row;
    row.theta = theta;
    row.empirical_re = re.mean();
    row.empirical_im = im.mean();
    row.std_error_re = re.std_error();
    row.std_error_im = im.std_error();
    row.theoretical = mittag_leffler(params.beta(), 0.5 * theta * theta * gap);
    row.z_re = z_score(row.empirical_re, row.theoretical, row.std_error_re);
    row.z_im = z_score(row.empirical_im, 0.0, row.std_error_im);
    row.pass = std::abs(row.z_re) <= kSigmaPolicy && std::abs(row.z_im) <= kSigmaPolicy;
    report.pass = report.pass && row.pass;
    report.rows.push_back(row);
  }
  return report;
}

double ggbm_even_moment(const GreyParams& params, double t, int order) {
  if (order < 0 || order % 2 != 0) fail(ErrorKind::Parameter, "order must be a non-negative even integer");
  const int n = order / 2;
  return std::exp(std::lgamma(order + 1.0) - n * M_LN2 - std::lgamma(params.beta() * n + 1.0)) *
         std::pow(t, n * params.alpha());
}

MomentReport check_even_moments(const GreyParams& params, double t, const std::vector<int>& orders,
                                std::size_t n_paths, const RngSpec& rng, unsigned threads) {
  if (orders.empty()) fail(ErrorKind::Parameter, "moment check needs at least one order");
  for (int order : orders) {
    if (order != 2 && order != 4) {
      fail(ErrorKind::Parameter, "even moment orders are limited to 2 and 4, got " +
                                     std::to_string(order));
    }
  }
  if (!(t > 0.0 && t <= 1.0)) fail(ErrorKind::Parameter, "moment time must lie in (0, 1]");
  if (n_paths < 2) fail(ErrorKind::Parameter, "moment check needs at least two paths");
  const Grid grid = Grid::dyadic(4);
  const std::size_t index = grid_index(grid, t, "t");
  const GgbmSampler sampler(params, grid);
  const auto xs = sample_marginal(sampler, index, n_paths, rng, threads);

  MomentReport report{params, t, n_paths, {}, true};
  auto add_row = [&](int order, double expected) {
    RunningMoments m;
    for (double x : xs) m.add(std::pow(x, order));
    MomentRow row;
    row.order = order;
    row.empirical = m.mean();
    row.theoretical = expected;
    row.std_error = m.std_error();
    row.z = z_score(row.empirical, row.theoretical, row.std_error);
    row.pass = std::abs(row.z) <= kSigmaPolicy;
    report.pass = report.pass && row.pass;
    report.rows.push_back(row);
  };
  for (int order : orders) add_row(order, ggbm_even_moment(params, t, order));
  add_row(1, 0.0);
  add_row(3, 0.0);
  return report;
}

double fbm_increment_autocovariance(double hurst, int separation) {
  if (!(hurst > 0.0 && hurst < 1.0)) fail(ErrorKind::Parameter, "Hurst index must lie in (0, 1)");
  const double k = std::abs(static_cast<double>(separation));
  const double h2 = 2.0 * hurst;
  return 0.5 * (std::pow(k + 1.0, h2) - 2.0 * std::pow(k, h2) + std::pow(std::abs(k - 1.0), h2));
}

MixingReport check_mixing_decay(const GreyParams& params, const std::vector<int>& lags,
                                std::size_t n_paths, const RngSpec& rng, unsigned threads) {
  if (lags.empty()) fail(ErrorKind::Parameter, "mixing check needs at least one lag");
  for (int lag : lags) {
    if (lag < 1 || lag > 128) {
      fail(ErrorKind::Input, "mixing lags must lie in [1, 128], got " + std::to_string(lag));
    }
  }
  if (n_paths < 2) fail(ErrorKind::Parameter, "mixing check needs at least two paths");
  const int max_lag = *std::max_element(lags.begin(), lags.end());
  int level = 1;
  while ((1 << level) < max_lag) ++level;
  const Grid grid = Grid::dyadic(level);
  const GgbmSampler sampler(params, grid);
  const double unit_scale = std::pow(2.0, level * params.alpha() / 2.0);

  // probes[i * width + k]: tanh of unit increment k + 1 on path i.
  const std::size_t width = static_cast<std::size_t>(max_lag);
  std::vector<double> probes(n_paths * width);
  parallel_for(n_paths, threads, [&](std::size_t i) {
    const auto path = sampler.sample(rng.substream(i));
    for (std::size_t k = 0; k < width; ++k) {
      probes[i * width + k] = std::tanh(unit_scale * (path[k + 1] - path[k]));
    }
  });

  MixingReport report{params, n_paths, level, unit_scale, "tanh", {}, false};
  for (int lag : lags) {
    const std::size_t k = static_cast<std::size_t>(lag) - 1;
    RunningMoments f1, fj;
    for (std::size_t i = 0; i < n_paths; ++i) {
      f1.add(probes[i * width]);
      fj.add(probes[i * width + k]);
    }
    RunningMoments product;
    for (std::size_t i = 0; i < n_paths; ++i) {
      product.add((probes[i * width] - f1.mean()) * (probes[i * width + k] - fj.mean()));
    }
    MixingRow row;
    row.lag = lag;
    row.covariance = product.mean();
    row.std_error = product.std_error();
    row.z = z_score(row.covariance, 0.0, row.std_error);
    row.fbm_autocovariance = fbm_increment_autocovariance(params.hurst(), lag - 1);
    report.rows.push_back(row);
  }
  const auto last = std::max_element(report.rows.begin(), report.rows.end(),
                                     [](const MixingRow& a, const MixingRow& b) { return a.lag < b.lag; });
  report.decayed = std::abs(last->z) <= kSigmaPolicy;
  return report;
}

}  // namespace greyvar
