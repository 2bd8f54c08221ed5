#pragma once

#include <cstdint>
#include <random>

namespace greyvar {

/// Identifies one reproducible random substream: a master seed plus a
/// per-path stream id. Equal specs produce bit-identical draws.
struct RngSpec {
  std::uint64_t master_seed = 0;
  std::uint64_t stream_id = 0;

  RngSpec substream(std::uint64_t index) const;
  friend bool operator==(const RngSpec&, const RngSpec&) = default;
};

using Engine = std::mt19937_64;

/// Engine seeded from the (master_seed, stream_id) pair via SplitMix64
/// mixing, so neighbouring stream ids give decorrelated states.
Engine make_engine(const RngSpec& spec);

/// Standard normal draws by the Marsaglia polar method, computed directly
/// from engine output so results do not depend on the standard library's
/// distribution implementation. Keeps the second variate of each pair.
class NormalStream {
public:
  explicit NormalStream(Engine& engine) : engine_(engine) {}
  double next();

private:
  Engine& engine_;
  double cached_ = 0.0;
  bool has_cached_ = false;
};

/// Uniform draw in the open interval (0, 1).
double open_uniform(Engine& engine);

}  // namespace greyvar
