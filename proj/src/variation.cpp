#include "greyvar/variation.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "greyvar/error.hpp"
#include "greyvar/special_functions.hpp"

namespace greyvar {
namespace {

void check_exponent(double p) {
  if (!(p > 0.0 && std::isfinite(p))) {
    fail(ErrorKind::Parameter, "variation exponent must be positive, got " + std::to_string(p));
  }
}

void check_path(const SamplePath& path) {
  if (path.size() < 2) fail(ErrorKind::Input, "variation needs at least two grid points");
}

}  // namespace

double TrichotomyLabel::limit() const {
  if (const auto* c = std::get_if<CriticalFinite>(&regime)) return c->limit;
  fail(ErrorKind::Input, "only the critical regime carries a finite limit");
}

std::string TrichotomyLabel::to_string() const {
  if (is_zero()) return "Zero";
  if (is_infinite()) return "Infinite";
  std::ostringstream os;
  os << "CriticalFinite(" << limit() << ")";
  return os.str();
}

VariationRecord p_variation_sum(const SamplePath& path, double p) {
  check_exponent(p);
  check_path(path);
  const auto x = path.values();
  double sum = 0.0;
  if (p == 2.0) {
    for (std::size_t j = 1; j < x.size(); ++j) {
      const double d = x[j] - x[j - 1];
      sum += d * d;
    }
  } else if (p == 1.0) {
    for (std::size_t j = 1; j < x.size(); ++j) sum += std::abs(x[j] - x[j - 1]);
  } else {
    for (std::size_t j = 1; j < x.size(); ++j) sum += std::pow(std::abs(x[j] - x[j - 1]), p);
  }
  return VariationRecord{path.grid().resolution(), p, sum};
}

double renormalized_statistic(const SamplePath& path, double p, double alpha) {
  if (path.grid().is_dyadic()) {
    fail(ErrorKind::Input, "renormalized statistic expects a uniform-grid path");
  }
  if (!(alpha > 0.0 && alpha < 2.0)) fail(ErrorKind::Parameter, "alpha must lie in (0, 2)");
  const auto record = p_variation_sum(path, p);
  const double n = static_cast<double>(path.grid().steps());
  return std::pow(n, p * alpha / 2.0 - 1.0) * record.value;
}

TrichotomyLabel variation_trichotomy(double alpha, double beta, double p) {
  const GreyParams params(alpha, beta);
  check_exponent(p);
  const double gap = p * alpha / 2.0 - 1.0;
  if (std::abs(gap) <= kCriticalExponentTol) {
    return {TrichotomyLabel::CriticalFinite{theoretical_variation_limit(params)}};
  }
  if (gap > 0.0) return {TrichotomyLabel::Zero{}};
  return {TrichotomyLabel::Infinite{}};
}

std::vector<VariationRecord> variation_sequence(const SamplePath& path, double p, int level_lo,
                                                int level_hi) {
  check_exponent(p);
  if (!path.grid().is_dyadic()) fail(ErrorKind::Input, "variation sequence needs a dyadic path");
  const auto top = static_cast<int>(path.grid().resolution());
  if (level_lo < 1 || level_lo > level_hi) {
    fail(ErrorKind::Input, "invalid level range [" + std::to_string(level_lo) + ", " +
                               std::to_string(level_hi) + "]");
  }
  if (level_hi > top) {
    fail(ErrorKind::Input, "level " + std::to_string(level_hi) + " exceeds path level " +
                               std::to_string(top));
  }
  std::vector<VariationRecord> out;
  out.reserve(static_cast<std::size_t>(level_hi - level_lo + 1));
  const auto x = path.values();
  for (int level = level_lo; level <= level_hi; ++level) {
    const std::size_t stride = std::size_t{1} << (top - level);
    double sum = 0.0;
    for (std::size_t j = stride; j < x.size(); j += stride) {
      sum += std::pow(std::abs(x[j] - x[j - stride]), p);
    }
    out.push_back(VariationRecord{static_cast<std::size_t>(level), p, sum});
  }
  return out;
}

DominanceBound hoelder_dominance_bound(const SamplePath& path, double p, double q) {
  check_exponent(p);
  check_exponent(q);
  if (!(q > p)) fail(ErrorKind::Parameter, "dominance bound needs q > p");
  check_path(path);
  const auto x = path.values();
  double sup = 0.0;
  for (std::size_t j = 1; j < x.size(); ++j) sup = std::max(sup, std::abs(x[j] - x[j - 1]));
  return DominanceBound{std::pow(sup, q - p), p_variation_sum(path, p).value};
}

LogSlope log2_slope(std::span<const VariationRecord> records) {
  if (records.size() < 2) fail(ErrorKind::Estimation, "slope needs at least two levels");
  const double n = static_cast<double>(records.size());
  double sx = 0.0, sy = 0.0;
  for (const auto& r : records) {
    if (!(r.value > 0.0)) {
      fail(ErrorKind::Estimation, "variation value must be positive for a log-slope fit");
    }
    sx += static_cast<double>(r.resolution);
    sy += std::log2(r.value);
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0.0, sxy = 0.0;
  for (const auto& r : records) {
    const double dx = static_cast<double>(r.resolution) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log2(r.value) - my);
  }
  if (sxx == 0.0) fail(ErrorKind::Estimation, "slope needs distinct levels");
  LogSlope fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  if (records.size() > 2) {
    double rss = 0.0;
    for (const auto& r : records) {
      const double e = std::log2(r.value) - (fit.intercept + fit.slope * static_cast<double>(r.resolution));
      rss += e * e;
    }
    fit.std_error = std::sqrt(rss / (n - 2.0) / sxx);
  }
  return fit;
}

}  // namespace greyvar
