#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "greyvar/params.hpp"
#include "greyvar/rng.hpp"

namespace greyvar {

/// Time grid on [0, 1]: either dyadic (2^n + 1 points) or uniform with n
/// steps (n + 1 points).
class Grid {
public:
  enum class Kind { Dyadic, Uniform };

  static Grid dyadic(int level);
  static Grid uniform(std::size_t steps);

  Kind kind() const noexcept { return kind_; }
  bool is_dyadic() const noexcept { return kind_ == Kind::Dyadic; }
  /// Dyadic level n, or the number of steps for a uniform grid.
  std::size_t resolution() const noexcept { return resolution_; }
  std::size_t steps() const noexcept;
  std::size_t points() const noexcept { return steps() + 1; }
  double time(std::size_t j) const noexcept {
    return static_cast<double>(j) / static_cast<double>(steps());
  }
  /// Index of time t on this grid, if t is a grid point.
  std::optional<std::size_t> index_of(double t) const noexcept;

  std::string to_string() const;

  friend bool operator==(const Grid&, const Grid&) = default;

private:
  Grid(Kind kind, std::size_t resolution) : kind_(kind), resolution_(resolution) {}

  Kind kind_;
  std::size_t resolution_;
};

/// Values of a process on a grid. values[0] is always 0.
class SamplePath {
public:
  SamplePath(Grid grid, std::vector<double> values,
             std::optional<GreyParams> params = std::nullopt, RngSpec seed = {});

  const Grid& grid() const noexcept { return grid_; }
  std::span<const double> values() const noexcept { return values_; }
  const std::optional<GreyParams>& params() const noexcept { return params_; }
  const RngSpec& seed() const noexcept { return seed_; }
  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t j) const { return values_[j]; }

  /// Every 2^(N - level)-th point of a dyadic level-N path.
  SamplePath coarsen(int level) const;
  /// Same grid and provenance, values multiplied by factor.
  SamplePath scaled(double factor) const;

private:
  Grid grid_;
  std::vector<double> values_;
  std::optional<GreyParams> params_;
  RngSpec seed_;
};

}  // namespace greyvar
