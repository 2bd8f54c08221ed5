#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "greyvar/error.hpp"
#include "greyvar/sampling.hpp"
#include "greyvar/special_functions.hpp"
#include "greyvar/stats.hpp"
#include "greyvar/variation.hpp"

namespace greyvar {
namespace {

SamplePath linear_path(const Grid& grid) {
  std::vector<double> v(grid.points());
  for (std::size_t j = 0; j < v.size(); ++j) v[j] = grid.time(j);
  return SamplePath(grid, std::move(v));
}

SamplePath random_walk(const Grid& grid, std::uint64_t seed) {
  Engine engine = make_engine({seed, 0});
  NormalStream normal(engine);
  std::vector<double> v(grid.points(), 0.0);
  for (std::size_t j = 1; j < v.size(); ++j) v[j] = v[j - 1] + normal.next();
  return SamplePath(grid, std::move(v));
}

TEST(PVariation, LinearPath) {
  for (int level : {0, 3, 10}) {
    const auto path = linear_path(Grid::dyadic(level));
    for (double p : {0.5, 1.0, 2.0, 3.3}) {
      const double n = std::ldexp(1.0, level);
      const auto r = p_variation_sum(path, p);
      EXPECT_NEAR(r.value, std::pow(n, 1.0 - p), 1e-12 * std::pow(n, 1.0 - p));
      EXPECT_EQ(r.resolution, static_cast<std::size_t>(level));
      EXPECT_EQ(r.p, p);
    }
  }
}

TEST(PVariation, ConstantPathIsZero) {
  const SamplePath path(Grid::uniform(17), std::vector<double>(18, 0.0));
  EXPECT_EQ(p_variation_sum(path, 1.5).value, 0.0);
}

TEST(PVariation, HandComputed) {
  const SamplePath path(Grid::uniform(3), {0.0, 1.0, -1.0, 0.5});
  EXPECT_DOUBLE_EQ(p_variation_sum(path, 1.0).value, 1.0 + 2.0 + 1.5);
  EXPECT_DOUBLE_EQ(p_variation_sum(path, 2.0).value, 1.0 + 4.0 + 2.25);
  EXPECT_DOUBLE_EQ(p_variation_sum(path, 3.0).value, 1.0 + 8.0 + 3.375);
}

TEST(PVariation, RejectsBadExponent) {
  const auto path = linear_path(Grid::dyadic(2));
  EXPECT_THROW(p_variation_sum(path, 0.0), Error);
  EXPECT_THROW(p_variation_sum(path, -1.0), Error);
  EXPECT_THROW(p_variation_sum(path, std::nan("")), Error);
}

TEST(PVariation, ScalingProperty) {
  // V_p(c x) = |c|^p V_p(x)
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto path = random_walk(Grid::uniform(100), seed);
    for (double p : {0.7, 1.0, 2.5}) {
      for (double c : {-3.0, 0.1, 2.0}) {
        const double lhs = p_variation_sum(path.scaled(c), p).value;
        const double rhs = std::pow(std::abs(c), p) * p_variation_sum(path, p).value;
        EXPECT_NEAR(lhs, rhs, 1e-12 * rhs);
      }
    }
  }
}

TEST(Renormalized, LinearPathPowerLaw) {
  for (std::size_t n : {10u, 1000u}) {
    const auto path = linear_path(Grid::uniform(n));
    const double p = 1.5, alpha = 0.8;
    const double expected = std::pow(static_cast<double>(n), p * (alpha / 2.0 - 1.0));
    EXPECT_NEAR(renormalized_statistic(path, p, alpha), expected, 1e-12 * expected);
  }
}

TEST(Renormalized, RejectsDyadicAndBadAlpha) {
  EXPECT_THROW(renormalized_statistic(linear_path(Grid::dyadic(3)), 1.0, 1.0), Error);
  EXPECT_THROW(renormalized_statistic(linear_path(Grid::uniform(8)), 1.0, 2.0), Error);
}

TEST(Renormalized, BrownianQuadraticVariationNearOne) {
  // alpha = 1, p = 2: n^0 * sum (dB)^2 -> 1 (beta = 1, Y = 1).
  const auto path = sample_ggbm(GreyParams(1.0, 1.0), Grid::uniform(100000), {1, 0});
  EXPECT_NEAR(renormalized_statistic(path, 2.0, 1.0), 1.0, 4.0 * std::sqrt(2.0 / 100000));
}

TEST(Trichotomy, Regimes) {
  const double alpha = 1.2, beta = 0.7;
  const double pc = 2.0 / alpha;
  EXPECT_TRUE(variation_trichotomy(alpha, beta, pc + 0.01).is_zero());
  EXPECT_TRUE(variation_trichotomy(alpha, beta, pc - 0.01).is_infinite());
  const auto crit = variation_trichotomy(alpha, beta, pc);
  ASSERT_TRUE(crit.is_critical());
  EXPECT_DOUBLE_EQ(crit.limit(), theoretical_variation_limit(GreyParams(alpha, beta)));
  EXPECT_THROW(variation_trichotomy(alpha, beta, pc + 0.01).limit(), Error);
  EXPECT_EQ(variation_trichotomy(alpha, beta, 3.0).to_string(), "Zero");
  EXPECT_EQ(variation_trichotomy(alpha, beta, 1.0).to_string(), "Infinite");
}

TEST(Trichotomy, BrownianQuadraticLimitIsOne) {
  const auto crit = variation_trichotomy(1.0, 1.0, 2.0);
  ASSERT_TRUE(crit.is_critical());
  EXPECT_NEAR(crit.limit(), 1.0, 1e-14);
}

TEST(Trichotomy, RejectsBadParameters) {
  EXPECT_THROW(variation_trichotomy(2.0, 0.5, 1.0), Error);
  EXPECT_THROW(variation_trichotomy(1.0, 0.0, 1.0), Error);
  EXPECT_THROW(variation_trichotomy(1.0, 0.5, 0.0), Error);
}

TEST(Sequence, MatchesCoarsenedSums) {
  const auto path = sample_fbm_circulant(0.35, 10, {2, 0});
  const auto seq = variation_sequence(path, 1.7, 2, 10);
  ASSERT_EQ(seq.size(), 9u);
  for (const auto& r : seq) {
    const double direct = p_variation_sum(path.coarsen(static_cast<int>(r.resolution)), 1.7).value;
    EXPECT_NEAR(r.value, direct, 1e-12 * direct);
  }
}

TEST(Sequence, RejectsBadRanges) {
  const auto path = linear_path(Grid::dyadic(5));
  EXPECT_THROW(variation_sequence(path, 1.0, 0, 3), Error);
  EXPECT_THROW(variation_sequence(path, 1.0, 4, 3), Error);
  EXPECT_THROW(variation_sequence(path, 1.0, 1, 6), Error);
  EXPECT_THROW(variation_sequence(linear_path(Grid::uniform(32)), 1.0, 1, 3), Error);
}

TEST(Dominance, InequalityHoldsOnRandomPaths) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto path = random_walk(Grid::uniform(200 + seed), seed);
    for (double p : {0.5, 1.0, 1.6}) {
      for (double q : {1.7, 2.0, 4.0}) {
        const auto b = hoelder_dominance_bound(path, p, q);
        const double vq = p_variation_sum(path, q).value;
        EXPECT_LE(vq, b.bound() * (1.0 + 1e-12));
      }
    }
  }
  EXPECT_THROW(hoelder_dominance_bound(random_walk(Grid::uniform(4), 0), 2.0, 2.0), Error);
}

TEST(Dominance, TightForEqualIncrements) {
  const auto path = linear_path(Grid::uniform(64));
  const auto b = hoelder_dominance_bound(path, 1.0, 3.0);
  EXPECT_NEAR(b.bound(), p_variation_sum(path, 3.0).value, 1e-15);
}

TEST(LogSlope, ExactPowerLaw) {
  std::vector<VariationRecord> records;
  for (std::size_t level = 3; level <= 9; ++level) {
    records.push_back({level, 1.0, 5.0 * std::pow(2.0, -0.4 * static_cast<double>(level))});
  }
  const auto fit = log2_slope(records);
  EXPECT_NEAR(fit.slope, -0.4, 1e-13);
  EXPECT_NEAR(fit.intercept, std::log2(5.0), 1e-12);
  EXPECT_NEAR(fit.std_error, 0.0, 1e-12);
  records[0].value = 0.0;
  EXPECT_THROW(log2_slope(records), Error);
  EXPECT_THROW(log2_slope(std::span(records).subspan(1, 1)), Error);
}

// Away from the critical exponent the finest-level sum drifts as the
// trichotomy predicts on typical paths.
TEST(Trichotomy, MedianRatiosOnSimulatedPaths) {
  const GreyParams params(1.2, 0.7);
  const GgbmSampler sampler(params, Grid::dyadic(12));
  std::vector<double> r2, r1;
  for (std::uint64_t i = 0; i < 40; ++i) {
    const auto path = sampler.sample({3, i});
    const auto s2 = variation_sequence(path, 2.0, 8, 12);
    const auto s1 = variation_sequence(path, 1.0, 8, 12);
    r2.push_back(s2.back().value / s2.front().value);
    r1.push_back(s1.back().value / s1.front().value);
  }
  // Theory: 2^{4 (1 - p alpha / 2)} = 2^{-0.8} for p = 2 and 2^{1.6} for p = 1.
  EXPECT_NEAR(median(r2), std::pow(2.0, -0.8), 0.1);
  EXPECT_NEAR(median(r1), std::pow(2.0, 1.6), 0.3);
}

}  // namespace
}  // namespace greyvar
