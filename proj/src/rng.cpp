#include "greyvar/rng.hpp"

#include <cmath>

namespace greyvar {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

}  // namespace

RngSpec RngSpec::substream(std::uint64_t index) const {
  return RngSpec{master_seed, stream_id + index};
}

Engine make_engine(const RngSpec& spec) {
  const std::uint64_t a = splitmix64(spec.master_seed);
  const std::uint64_t b = splitmix64(a ^ splitmix64(spec.stream_id ^ 0xD1B54A32D192ED03ULL));
  std::seed_seq seq{static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32),
                    static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32)};
  return Engine(seq);
}

double open_uniform(Engine& engine) {
  // 53 random bits, shifted half a step off zero.
  return (static_cast<double>(engine() >> 11) + 0.5) * 0x1.0p-53;
}

double NormalStream::next() {
  if (has_cached_) {
    has_cached_ = false;
    return cached_;
  }
  double u, v, s;
  do {
    u = 2.0 * open_uniform(engine_) - 1.0;
    v = 2.0 * open_uniform(engine_) - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double factor = std::sqrt(-2.0 * std::log(s) / s);
  cached_ = v * factor;
  has_cached_ = true;
  return u * factor;
}

}  // namespace greyvar
