#include "greyvar/path.hpp"

#include <cmath>
#include <sstream>

#include "greyvar/error.hpp"

namespace greyvar {

Grid Grid::dyadic(int level) {
  if (level < 0 || level > 30) {
    fail(ErrorKind::Parameter, "dyadic level must lie in [0, 30], got " + std::to_string(level));
  }
  return Grid(Kind::Dyadic, static_cast<std::size_t>(level));
}

Grid Grid::uniform(std::size_t steps) {
  if (steps == 0) fail(ErrorKind::Parameter, "uniform grid needs at least one step");
  return Grid(Kind::Uniform, steps);
}

std::size_t Grid::steps() const noexcept {
  return kind_ == Kind::Dyadic ? (std::size_t{1} << resolution_) : resolution_;
}

std::optional<std::size_t> Grid::index_of(double t) const noexcept {
  if (!(t >= 0.0 && t <= 1.0)) return std::nullopt;
  const double scaled = t * static_cast<double>(steps());
  const double rounded = std::round(scaled);
  if (std::abs(scaled - rounded) > 1e-9) return std::nullopt;
  return static_cast<std::size_t>(rounded);
}

std::string Grid::to_string() const {
  std::ostringstream os;
  os << (is_dyadic() ? "dyadic(level=" : "uniform(n=") << resolution_ << ")";
  return os.str();
}

SamplePath::SamplePath(Grid grid, std::vector<double> values, std::optional<GreyParams> params,
                       RngSpec seed)
    : grid_(grid), values_(std::move(values)), params_(params), seed_(seed) {
  if (values_.size() != grid_.points()) {
    fail(ErrorKind::Input, "path has " + std::to_string(values_.size()) + " values but " +
                               grid_.to_string() + " has " + std::to_string(grid_.points()) +
                               " points");
  }
  if (values_.front() != 0.0) fail(ErrorKind::Input, "path value at t = 0 must be 0");
  for (double v : values_) {
    if (!std::isfinite(v)) fail(ErrorKind::Input, "path contains a non-finite value");
  }
}

SamplePath SamplePath::coarsen(int level) const {
  if (!grid_.is_dyadic()) fail(ErrorKind::Input, "coarsening requires a dyadic path");
  const auto top = static_cast<int>(grid_.resolution());
  if (level < 0 || level > top) {
    fail(ErrorKind::Input, "cannot coarsen level-" + std::to_string(top) + " path to level " +
                               std::to_string(level));
  }
  const std::size_t stride = std::size_t{1} << (top - level);
  std::vector<double> out;
  out.reserve((std::size_t{1} << level) + 1);
  for (std::size_t j = 0; j < values_.size(); j += stride) out.push_back(values_[j]);
  return SamplePath(Grid::dyadic(level), std::move(out), params_, seed_);
}

SamplePath SamplePath::scaled(double factor) const {
  std::vector<double> out(values_);
  for (double& v : out) v *= factor;
  return SamplePath(grid_, std::move(out), params_, seed_);
}

}  // namespace greyvar
