#include <cmath>
#include <vector>

#include <boost/math/special_functions/gamma.hpp>
#include <gtest/gtest.h>

#include "greyvar/error.hpp"
#include "greyvar/sampling.hpp"
#include "greyvar/special_functions.hpp"
#include "greyvar/stats.hpp"

namespace greyvar {
namespace {

constexpr double kSigma = 4.0;

void expect_within_sigma(const RunningMoments& m, double expected, const char* what) {
  const double z = z_score(m.mean(), expected, m.std_error());
  EXPECT_LT(std::abs(z), kSigma) << what << ": mean " << m.mean() << " expected " << expected
                                 << " z=" << z;
}

TEST(FbmCovariance, ClosedForms) {
  EXPECT_DOUBLE_EQ(fbm_covariance(0.5, 0.5, 1.0), 0.5);
  EXPECT_DOUBLE_EQ(fbm_covariance(0.75, 0.5, 1.0), 0.5);
  for (double h : {0.1, 0.4, 0.9}) {
    for (double t : {0.2, 0.7, 1.0}) EXPECT_NEAR(fbm_covariance(h, t, t), std::pow(t, 2 * h), 1e-15);
    EXPECT_DOUBLE_EQ(fbm_covariance(h, 0.3, 0.8), fbm_covariance(h, 0.8, 0.3));
  }
  EXPECT_THROW(fbm_covariance(1.0, 0.5, 0.5), Error);
  EXPECT_THROW(fbm_covariance(0.5, -0.1, 0.5), Error);
}

TEST(FbmCovariance, NonnegativeOnUnitSquare) {
  for (double h : {0.05, 0.3, 0.5, 0.8, 0.97}) {
    for (int i = 0; i <= 20; ++i) {
      for (int j = 0; j <= 20; ++j) EXPECT_GE(fbm_covariance(h, i / 20.0, j / 20.0), -1e-15);
    }
  }
}

TEST(Cholesky, DeterministicAndAnchored) {
  const CholeskyFbm sampler(0.3, Grid::dyadic(6));
  const auto a = sampler.sample({42, 7});
  const auto b = sampler.sample({42, 7});
  const auto c = sampler.sample({42, 8});
  ASSERT_EQ(a.size(), 65u);
  EXPECT_EQ(a[0], 0.0);
  EXPECT_TRUE(std::equal(a.values().begin(), a.values().end(), b.values().begin()));
  EXPECT_FALSE(std::equal(a.values().begin(), a.values().end(), c.values().begin()));
  EXPECT_EQ(sample_fbm_cholesky(0.3, Grid::dyadic(6), {42, 7}).values()[10], a[10]);
}

TEST(Cholesky, BrownianIncrementVariance) {
  const CholeskyFbm sampler(0.5, Grid::dyadic(10));
  RunningMoments first, last;
  for (std::uint64_t i = 0; i < 10000; ++i) {
    const auto p = sampler.sample({1, i});
    first.add(std::pow(p[1] - p[0], 2));
    last.add(std::pow(p[1024] - p[1023], 2));
  }
  expect_within_sigma(first, std::ldexp(1.0, -10), "first increment");
  expect_within_sigma(last, std::ldexp(1.0, -10), "last increment");
}

TEST(Cholesky, CovarianceAtHalfAndOne) {
  const CholeskyFbm sampler(0.7, Grid::dyadic(8));
  RunningMoments prod;
  for (std::uint64_t i = 0; i < 100000; ++i) {
    const auto p = sampler.sample({2, i});
    prod.add(p[128] * p[256]);
  }
  expect_within_sigma(prod, fbm_covariance(0.7, 0.5, 1.0), "Cov(x(0.5), x(1))");
}

TEST(Cholesky, CapacityGuard) {
  try {
    CholeskyFbm(0.5, Grid::dyadic(13));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Capacity);
  }
}

TEST(Cholesky, NearOneHurstFactorizes) {
  const CholeskyFbm sampler(0.999, Grid::dyadic(7));
  EXPECT_EQ(sampler.sample({3, 0}).size(), 129u);
}

TEST(Circulant, EmbeddingIsNonnegative) {
  for (double h : {0.05, 0.3, 0.5, 0.7, 0.95}) {
    for (int level : {0, 1, 5, 12}) {
      const CirculantFbm sampler(h, Grid::dyadic(level));
      EXPECT_GT(sampler.min_eigenvalue(), -kCirculantEigenTolerance) << "H=" << h;
    }
  }
}

TEST(Circulant, BrownianIncrementVariance) {
  const CirculantFbm sampler(0.5, Grid::dyadic(12));
  RunningMoments inc;
  for (std::uint64_t i = 0; i < 10000; ++i) {
    const auto p = sampler.sample({4, i});
    inc.add(std::pow(p[2049] - p[2048], 2));
  }
  expect_within_sigma(inc, std::ldexp(1.0, -12), "increment variance");
}

TEST(Circulant, LagOneIncrementCorrelation) {
  const double h = 0.6;
  const CirculantFbm sampler(h, Grid::dyadic(10));
  RunningMoments prod;
  const double unit = std::pow(1024.0, h);  // rescale to unit-spaced increments
  for (std::uint64_t i = 0; i < 100000; ++i) {
    const auto p = sampler.sample({5, i});
    prod.add(unit * unit * (p[501] - p[500]) * (p[502] - p[501]));
  }
  const double expected = (std::pow(2.0, 2 * h) - 2.0) / 2.0;
  EXPECT_NEAR(expected, 0.1486983549970351, 1e-15);
  expect_within_sigma(prod, expected, "lag-1 autocorrelation");
}

TEST(Circulant, AgreesWithCholeskyInDistribution) {
  for (double h : {0.3, 0.5, 0.7}) {
    const Grid grid = Grid::dyadic(10);
    const CholeskyFbm chol(h, grid);
    const CirculantFbm circ(h, grid);
    std::vector<double> a, b, a_far, b_far;
    for (std::uint64_t i = 0; i < 10000; ++i) {
      const auto pc = chol.sample({6, i});
      const auto pf = circ.sample({7, i});
      a.push_back(pc[301] - pc[300]);
      b.push_back(pf[301] - pf[300]);
      a_far.push_back(pc[1024] - pc[512]);
      b_far.push_back(pf[1024] - pf[512]);
    }
    EXPECT_GT(ks_two_sample(a, b).p_value, 0.001) << "H=" << h;
    EXPECT_GT(ks_two_sample(a_far, b_far).p_value, 0.001) << "H=" << h;
  }
}

TEST(Circulant, UniformGridAndLevelGuard) {
  const CirculantFbm sampler(0.4, Grid::uniform(1000));
  const auto p = sampler.sample({8, 0});
  EXPECT_EQ(p.size(), 1001u);
  EXPECT_FALSE(p.grid().is_dyadic());
  EXPECT_THROW(sample_fbm_circulant(0.4, 25, {8, 0}), Error);
  EXPECT_THROW(sample_fbm_circulant(0.4, -1, {8, 0}), Error);
}

TEST(Circulant, Deterministic) {
  const auto a = sample_fbm_circulant(0.3, 9, {99, 3});
  const auto b = sample_fbm_circulant(0.3, 9, {99, 3});
  EXPECT_TRUE(std::equal(a.values().begin(), a.values().end(), b.values().begin()));
  EXPECT_EQ(a[0], 0.0);
}

TEST(StableSampler, LaplaceTransform) {
  for (double beta : {0.3, 0.5, 0.8}) {
    Engine engine = make_engine({10, static_cast<std::uint64_t>(beta * 100)});
    std::vector<RunningMoments> lt(3);
    const double ss[] = {0.5, 1.0, 2.0};
    for (int i = 0; i < 1000000; ++i) {
      const double x = sample_one_sided_stable(beta, engine);
      ASSERT_GT(x, 0.0);
      for (int k = 0; k < 3; ++k) lt[k].add(std::exp(-ss[k] * x));
    }
    for (int k = 0; k < 3; ++k) {
      expect_within_sigma(lt[k], std::exp(-std::pow(ss[k], beta)), "stable Laplace transform");
    }
  }
}

TEST(StableSampler, Reproducible) {
  EXPECT_EQ(sample_one_sided_stable(0.4, RngSpec{5, 5}), sample_one_sided_stable(0.4, RngSpec{5, 5}));
  EXPECT_THROW(sample_one_sided_stable(1.0, RngSpec{}), Error);
}

TEST(MWrightSampler, BetaOneIsUnitMass) {
  Engine engine = make_engine({1, 1});
  for (int i = 0; i < 100; ++i) EXPECT_EQ(sample_mwright(1.0, engine), 1.0);
}

TEST(MWrightSampler, MomentsMatchGammaRatio) {
  // beta = 0.7, delta = 2: Gamma(3) / Gamma(2.4).
  EXPECT_NEAR(2.0 / boost::math::tgamma(2.4), 1.6100864256943253, 1e-13);
  for (double beta : {0.3, 0.5, 0.7}) {
    Engine engine = make_engine({12, static_cast<std::uint64_t>(beta * 10)});
    RunningMoments m05, m1, m2;
    for (int i = 0; i < 1000000; ++i) {
      const double y = sample_mwright(beta, engine);
      m05.add(std::sqrt(y));
      m1.add(y);
      m2.add(y * y);
    }
    expect_within_sigma(m05, boost::math::tgamma(1.5) / boost::math::tgamma(0.5 * beta + 1), "delta=0.5");
    expect_within_sigma(m1, 1.0 / boost::math::tgamma(beta + 1), "delta=1");
    expect_within_sigma(m2, 2.0 / boost::math::tgamma(2 * beta + 1), "delta=2");
  }
}

TEST(MWrightSampler, SameUniformsAsStableDraw) {
  // Y = S^{-beta} draw for draw.
  for (double beta : {0.2, 0.6, 0.9}) {
    Engine e1 = make_engine({3, 3});
    Engine e2 = make_engine({3, 3});
    for (int i = 0; i < 1000; ++i) {
      const double s = sample_one_sided_stable(beta, e1);
      const double y = sample_mwright(beta, e2);
      EXPECT_NEAR(y, std::pow(s, -beta), 1e-12 * y);
    }
  }
}

TEST(Ggbm, MarginalVarianceAndAnchoring) {
  const GreyParams params(1.2, 0.6);
  const GgbmSampler sampler(params, Grid::dyadic(2));
  RunningMoments var;
  for (std::uint64_t i = 0; i < 100000; ++i) {
    const auto p = sampler.sample({13, i});
    ASSERT_EQ(p[0], 0.0);
    var.add(p[4] * p[4]);
  }
  EXPECT_NEAR(1.0 / boost::math::tgamma(1.6), 1.1191749540701224, 1e-13);
  expect_within_sigma(var, 1.0 / boost::math::tgamma(1.6), "Var x(1)");
}

TEST(Ggbm, BetaOneIsFbmDrawForDraw) {
  // No subordinator draw is consumed at beta = 1.
  const auto g = sample_ggbm(GreyParams(1.0, 1.0), Grid::dyadic(8), {17, 2});
  const auto f = CirculantFbm(0.5, Grid::dyadic(8)).sample({17, 2});
  EXPECT_TRUE(std::equal(g.values().begin(), g.values().end(), f.values().begin()));
}

TEST(Ggbm, SinglePathScaleFactor) {
  // The ratio to the underlying fBm path is the same sqrt(Y) at every point.
  const GreyParams params(0.8, 0.5);
  const auto g = sample_ggbm(params, Grid::dyadic(6), {21, 0});
  Engine engine = make_engine({21, 0});
  const double y = sample_mwright(0.5, engine);
  std::vector<double> fbm(65);
  CirculantFbm(0.4, Grid::dyadic(6)).sample_into(engine, fbm);
  for (std::size_t j = 1; j < 65; ++j) EXPECT_NEAR(g[j], std::sqrt(y) * fbm[j], 1e-12);
}

TEST(Ggbm, CovarianceMatchesClosedForm) {
  for (double alpha : {0.6, 1.0, 1.4}) {
    for (double beta : {0.5, 1.0}) {
      const GreyParams params(alpha, beta);
      const GgbmSampler sampler(params, Grid::dyadic(2));
      RunningMoments c1, c2;
      for (std::uint64_t i = 0; i < 100000; ++i) {
        const auto p = sampler.sample({14, i});
        c1.add(p[1] * p[2]);
        c2.add(p[2] * p[4]);
      }
      auto cov = [&](double s, double t) {
        return (std::pow(t, alpha) + std::pow(s, alpha) - std::pow(std::abs(t - s), alpha)) /
               (2.0 * boost::math::tgamma(beta + 1.0));
      };
      expect_within_sigma(c1, cov(0.25, 0.5), "E x(0.25) x(0.5)");
      expect_within_sigma(c2, cov(0.5, 1.0), "E x(0.5) x(1)");
    }
  }
}

TEST(Ggbm, SelfSimilarMarginals) {
  const GreyParams params(1.2, 0.6);
  const GgbmSampler sampler(params, Grid::dyadic(2));
  std::vector<double> quarter, one;
  const double scale = std::pow(0.25, params.alpha() / 2.0);
  for (std::uint64_t i = 0; i < 20000; ++i) {
    quarter.push_back(sampler.sample({15, i})[1] / scale);
    one.push_back(sampler.sample({16, i})[4]);
  }
  EXPECT_GT(ks_two_sample(quarter, one).p_value, 0.001);
}

}  // namespace
}  // namespace greyvar
