#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

#include "vistrack/errors.hpp"
#include "vistrack/particle.hpp"

namespace vistrack {
namespace {

const CameraModel kCam = CameraModel::default_camera();
const TransitionNoise kNoNoise{{0, 0}, {0, 0}, {0, 0}};

ParticleSet make_set(const std::vector<HomPoint>& points, const std::vector<double>& weights) {
  ParticleSet s;
  for (std::size_t i = 0; i < points.size(); ++i) {
    s.particles.push_back({points[i], weights[i]});
  }
  return s;
}

// Distinct points tagged by x so output copies can be traced back to their source.
ParticleSet tagged_set(const std::vector<double>& weights) {
  std::vector<HomPoint> points;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    points.push_back({static_cast<double>(i), 0, 100, 1});
  }
  return make_set(points, weights);
}

std::vector<int> counts_by_tag(const ParticleSet& s, std::size_t n) {
  std::vector<int> counts(n, 0);
  for (const Particle& p : s.particles) {
    counts.at(static_cast<std::size_t>(p.point.x)) += 1;
  }
  return counts;
}

std::vector<double> random_weights(std::mt19937_64& gen, std::size_t n) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::bernoulli_distribution zero(0.2);
  std::vector<double> w(n);
  double total = 0.0;
  for (double& x : w) {
    x = zero(gen) ? 0.0 : u(gen);
    total += x;
  }
  if (total == 0.0) {
    w[0] = total = 1.0;
  }
  for (double& x : w) {
    x /= total;
  }
  return w;
}

TEST(ParticleInit, ZeroSpreadGivesIdenticalParticles) {
  Rng rng({1});
  const ParticleSet s = pf_init(4, {0, 0, 150, 1}, kNoNoise, rng);
  ASSERT_EQ(s.size(), 4u);
  for (const Particle& p : s.particles) {
    EXPECT_EQ(p.point, (HomPoint{0, 0, 150, 1}));
    EXPECT_EQ(p.weight, 0.25);
  }
}

TEST(ParticleInit, SpreadBoxWeightsAndDeterminism) {
  const TransitionNoise spread{{-40, 40}, {-2, 2}, {-5, 5}};
  Rng a({99});
  Rng b({99});
  const ParticleSet s1 = pf_init(500, {10, 0, 150, 2}, spread, a);
  const ParticleSet s2 = pf_init(500, {10, 0, 150, 2}, spread, b);
  EXPECT_NEAR(s1.weight_sum(), 1.0, 1e-12);
  for (std::size_t i = 0; i < s1.size(); ++i) {
    EXPECT_EQ(s1.particles[i].point, s2.particles[i].point);
    EXPECT_EQ(s1.particles[i].weight, s2.particles[i].weight);
    const HomPoint& p = s1.particles[i].point;
    EXPECT_EQ(p.w, 1.0);
    EXPECT_GE(p.x, 5 - 40);
    EXPECT_LE(p.x, 5 + 40);
    EXPECT_GE(p.z, 75 - 5);
    EXPECT_LE(p.z, 75 + 5);
  }
}

TEST(ParticleInit, ZeroCountThrows) {
  Rng rng;
  EXPECT_THROW(pf_init(0, {0, 0, 150, 1}, kNoNoise, rng), InvalidArgument);
}

TEST(ParticlePredict, DefaultNoiseBounds) {
  Rng rng({5});
  const ParticleSet s = pf_init(2000, {0, 0, 150, 1}, kNoNoise, rng);
  const ParticleSet p = pf_predict(s, TransitionNoise{}, rng);
  ASSERT_EQ(p.size(), s.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double dz = p.particles[i].point.z - s.particles[i].point.z;
    const double dx = p.particles[i].point.x - s.particles[i].point.x;
    EXPECT_GE(-dz, 0.1 - 1e-12);
    EXPECT_LE(-dz, 1.0 + 1e-12);
    EXPECT_LE(std::abs(dx), 40.0);
    EXPECT_EQ(p.particles[i].point.y, s.particles[i].point.y);
    EXPECT_EQ(p.particles[i].weight, s.particles[i].weight);
  }
}

TEST(ParticlePredict, ZeroNoiseIsIdentity) {
  Rng rng({5});
  const ParticleSet s = pf_init(50, {0, 0, 150, 1}, {{-10, 10}, {0, 0}, {0, 0}}, rng);
  const ParticleSet p = pf_predict(s, kNoNoise, rng);
  for (std::size_t i = 0; i < p.size(); ++i) {
    EXPECT_EQ(p.particles[i].point, s.particles[i].point);
  }
}

TEST(ParticlePredict, InvalidRange) {
  Rng rng;
  const ParticleSet s = pf_init(3, {0, 0, 150, 1}, kNoNoise, rng);
  EXPECT_THROW(pf_predict(s, {{1, -1}, {0, 0}, {0, 0}}, rng), InvalidArgument);
}

TEST(ParticleWeight, FormulaValues) {
  EXPECT_EQ(observation_weight({0, 0}), 1.0);
  EXPECT_EQ(observation_weight({3, 0}), 0.1);
  EXPECT_EQ(observation_weight({0, -3}), 0.1);
}

TEST(ParticleWeight, NormalizesTwoParticles) {
  // Second particle projects 3 px right of the observation.
  const HomPoint exact{0, 0, 100, 1};
  const HomPoint off{0.6, 0, 100, 1};  // 500 * 0.6 / 100 = 3 px
  const ParticleSet s = make_set({exact, off}, {0.5, 0.5});
  const ParticleSet w = pf_weight(s, project(kCam, exact), kCam);
  EXPECT_NEAR(w.particles[0].weight, 10.0 / 11.0, 1e-15);
  EXPECT_NEAR(w.particles[1].weight, 1.0 / 11.0, 1e-15);
}

TEST(ParticleWeight, BehindCameraGetsZero) {
  const ParticleSet s = make_set({{0, 0, 100, 1}, {0, 0, -50, 1}}, {0.5, 0.5});
  const ParticleSet w = pf_weight(s, {320, 240}, kCam);
  EXPECT_EQ(w.particles[1].weight, 0.0);
  EXPECT_EQ(w.particles[0].weight, 1.0);
}

TEST(ParticleWeight, AllBehindCameraThrows) {
  const ParticleSet s = make_set({{0, 0, -1, 1}, {0, 0, -50, 1}}, {0.5, 0.5});
  EXPECT_THROW(pf_weight(s, {320, 240}, kCam), NumericalError);
}

TEST(ParticleWeight, MonotoneInErrorNorm) {
  std::mt19937_64 gen(2);
  std::uniform_real_distribution<double> angle(0, 2 * M_PI);
  double prev = observation_weight({0, 0});
  for (double r = 0.01; r < 500; r *= 1.1) {
    const double a = angle(gen);
    const double w = observation_weight({r * std::cos(a), r * std::sin(a)});
    EXPECT_LT(w, prev);
    EXPECT_LT(w, 1.0);
    prev = w;
  }
}

TEST(ParticleWeight, SumsToOneOnRandomSets) {
  std::mt19937_64 gen(8);
  std::uniform_real_distribution<double> lateral(-60, 60);
  std::uniform_real_distribution<double> depth_cm(50, 400);
  std::uniform_real_distribution<double> pix(0, 640);
  std::uniform_int_distribution<int> size(1, 200);
  for (int trial = 0; trial < 200; ++trial) {
    ParticleSet s;
    const int n = size(gen);
    for (int i = 0; i < n; ++i) {
      s.particles.push_back({{lateral(gen), lateral(gen), depth_cm(gen), 1}, 1.0 / n});
    }
    const ParticleSet w = pf_weight(s, {pix(gen), pix(gen)}, kCam);
    EXPECT_NEAR(w.weight_sum(), 1.0, 1e-12);
    EXPECT_EQ(w.size(), s.size());
    for (const Particle& p : w.particles) {
      EXPECT_GE(p.weight, 0.0);
    }
  }
}

TEST(ResampleSystematic, EqualWeightsOneCopyEach) {
  Rng rng({3});
  for (int i = 0; i < 20; ++i) {
    const ParticleSet out = pf_resample_systematic(tagged_set({0.5, 0.5}), rng);
    EXPECT_EQ(counts_by_tag(out, 2), (std::vector<int>{1, 1}));
    EXPECT_EQ(out.particles[0].weight, 0.5);
  }
}

TEST(ResampleSystematic, DegenerateDistribution) {
  Rng rng({3});
  const ParticleSet out = pf_resample_systematic(tagged_set({1, 0, 0}), rng);
  EXPECT_EQ(counts_by_tag(out, 3), (std::vector<int>{3, 0, 0}));
}

TEST(ResampleSystematic, ThreeToOneForAnyOffset) {
  // Four particles carrying weights (0.75, 0.25) on two of them: counts (3, 1).
  Rng rng({4});
  for (int i = 0; i < 200; ++i) {
    const ParticleSet out = pf_resample_systematic(tagged_set({0.75, 0.0, 0.25, 0.0}), rng);
    EXPECT_EQ(counts_by_tag(out, 4), (std::vector<int>{3, 0, 1, 0}));
  }
}

TEST(ResampleSystematic, CountBoundProperty) {
  std::mt19937_64 gen(17);
  std::uniform_int_distribution<std::size_t> size(1, 64);
  Rng rng({17});
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = size(gen);
    const std::vector<double> w = random_weights(gen, n);
    const ParticleSet out = pf_resample_systematic(tagged_set(w), rng);
    ASSERT_EQ(out.size(), n);
    const std::vector<int> counts = counts_by_tag(out, n);
    for (std::size_t i = 0; i < n; ++i) {
      const double expected = static_cast<double>(n) * w[i];
      EXPECT_GE(counts[i], static_cast<int>(std::floor(expected)));
      EXPECT_LE(counts[i], static_cast<int>(std::ceil(expected)));
    }
  }
}

TEST(ResampleMultinomial, DegenerateDistribution) {
  Rng rng({6});
  const ParticleSet out = pf_resample_multinomial(tagged_set({1, 0}), rng);
  EXPECT_EQ(counts_by_tag(out, 2), (std::vector<int>{2, 0}));
}

TEST(ResampleMultinomial, EmpiricalFrequencies) {
  const std::vector<double> w{0.1, 0.2, 0.3, 0.4};
  Rng rng({12});
  constexpr int kDraws = 100000;
  std::vector<double> freq(4, 0.0);
  // 25000 resamples of 4 particles = 10^5 categorical draws.
  for (int i = 0; i < kDraws / 4; ++i) {
    const std::vector<int> c = counts_by_tag(pf_resample_multinomial(tagged_set(w), rng), 4);
    for (std::size_t k = 0; k < 4; ++k) {
      freq[k] += c[k];
    }
  }
  for (std::size_t k = 0; k < 4; ++k) {
    const double p = freq[k] / kDraws;
    EXPECT_LE(std::abs(p - w[k]), 3.0 * std::sqrt(w[k] * (1 - w[k]) / kDraws));
  }
}

TEST(Resample, ClosureAndSizeForBothSchemes) {
  std::mt19937_64 gen(23);
  Rng rng({23});
  for (Resampler kind : {Resampler::kSystematic, Resampler::kMultinomial}) {
    for (int trial = 0; trial < 200; ++trial) {
      const std::vector<double> w = random_weights(gen, 1 + trial % 40);
      const ParticleSet in = tagged_set(w);
      const ParticleSet out = pf_resample(in, kind, rng);
      ASSERT_EQ(out.size(), in.size());
      for (const Particle& p : out.particles) {
        const auto idx = static_cast<std::size_t>(p.point.x);
        EXPECT_EQ(p.point, in.particles.at(idx).point);
        EXPECT_GT(w[idx], 0.0);
        EXPECT_DOUBLE_EQ(p.weight, 1.0 / static_cast<double>(in.size()));
      }
    }
  }
}

TEST(Resample, ZeroWeightsThrow) {
  Rng rng;
  EXPECT_THROW(pf_resample_systematic(tagged_set({0, 0}), rng), NumericalError);
  EXPECT_THROW(pf_resample_multinomial(tagged_set({0, 0}), rng), NumericalError);
}

TEST(Estimate, WeightedMean) {
  const HomPoint a{0, 0, 0, 1};
  const HomPoint b{2, 0, 0, 1};
  EXPECT_EQ(pf_estimate(make_set({a, b}, {0.5, 0.5})), (HomPoint{1, 0, 0, 1}));
  EXPECT_EQ(pf_estimate(make_set({a, b}, {0.75, 0.25})), (HomPoint{0.5, 0, 0, 1}));
  const HomPoint p{-3.5, 1.25, 140, 1};
  const HomPoint e = pf_estimate(make_set({p, p, p}, {0.2, 0.5, 0.3}));
  EXPECT_NEAR(e.x, p.x, 1e-12);
  EXPECT_NEAR(e.y, p.y, 1e-12);
  EXPECT_NEAR(e.z, p.z, 1e-12);
}

TEST(Ess, KnownValues) {
  EXPECT_NEAR(pf_ess(tagged_set(std::vector<double>(100, 0.01))), 100.0, 1e-9);
  EXPECT_EQ(pf_ess(tagged_set({1.0, 0.0, 0.0})), 1.0);
  EXPECT_NEAR(pf_ess(tagged_set({0.75, 0.25})), 1.6, 1e-12);
}

TEST(ParticleStep, EqualsManualComposition) {
  const TransitionNoise noise;
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    Rng init_rng({seed});
    const ParticleSet s = pf_init(300, {0, 0, 150, 1}, {{-40, 40}, {0, 0}, {0, 0}}, init_rng);
    const Pixel z{250.0, 240.0};

    Rng a({seed + 100});
    const ParticleStep step = pf_step(s, z, kCam, noise, a, Resampler::kSystematic);

    Rng b({seed + 100});
    const ParticleSet weighted = pf_weight(pf_predict(s, noise, b), z, kCam);
    const HomPoint est = pf_estimate(weighted);
    const ParticleSet resampled = pf_resample_systematic(weighted, b);

    EXPECT_EQ(step.estimate, est);
    EXPECT_EQ(step.ess, pf_ess(weighted));
    ASSERT_EQ(step.particles.size(), resampled.size());
    for (std::size_t i = 0; i < resampled.size(); ++i) {
      EXPECT_EQ(step.particles.particles[i].point, resampled.particles[i].point);
      EXPECT_EQ(step.particles.particles[i].weight, resampled.particles[i].weight);
    }
  }
}

TEST(ParticleStep, NoiselessLargeSetFindsOffsetSign) {
  // 10^4 particles, exact pixels: the x estimate must carry the sign of the true offset.
  for (double start_x : {-36.0, 30.0}) {
    Rng rng({77});
    ParticleSet s = pf_init(10000, {0, 0, 150, 1}, {{-40, 40}, {0, 0}, {0, 0}}, rng);
    for (int t = 1; t < 30; ++t) {
      const Pixel z = project(kCam, {start_x, 0, 150 - 0.5 * t, 1});
      ParticleStep step = pf_step(s, z, kCam, TransitionNoise{}, rng);
      if (t >= 5) {
        EXPECT_EQ(std::signbit(step.estimate.x), std::signbit(start_x)) << "frame " << t;
      }
      s = std::move(step.particles);
    }
  }
}

TEST(ParticleStep, Deterministic) {
  auto run = [] {
    Rng rng({2024});
    ParticleSet s = pf_init(200, {0, 0, 150, 1}, {{-40, 40}, {0, 0}, {0, 0}}, rng);
    std::vector<HomPoint> estimates;
    for (int t = 0; t < 10; ++t) {
      ParticleStep step = pf_step(s, {260.0 - t, 240.0}, kCam, TransitionNoise{}, rng,
                                  Resampler::kMultinomial);
      estimates.push_back(step.estimate);
      s = std::move(step.particles);
    }
    return estimates;
  };
  EXPECT_EQ(run(), run());
}

}  // namespace
}  // namespace vistrack
