#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "vistrack/geometry.hpp"
#include "vistrack/rng.hpp"

namespace vistrack {

struct Particle {
  HomPoint point;
  double weight = 0.0;
};

struct ParticleSet {
  std::vector<Particle> particles;

  std::size_t size() const { return particles.size(); }
  double weight_sum() const;
};

/// Closed interval [lo, hi] in centimeters; sampled as U[lo, hi).
struct Range {
  double lo = 0.0;
  double hi = 0.0;
};

/// Per-frame additive uniform noise. Defaults: forward motion of 0.1 to 1 cm toward the
/// camera and an 80 cm wide horizontal bubble.
struct TransitionNoise {
  Range x{-40.0, 40.0};
  Range y{0.0, 0.0};
  Range z{-1.0, -0.1};

  /// Throws InvalidArgument if any lo > hi or a bound is non-finite.
  void validate() const;
};

enum class Resampler { kSystematic, kMultinomial };

inline constexpr std::size_t kDefaultParticleCount = 1000;

/// N particles sampled uniformly in the box center + spread, weights 1/N.
ParticleSet pf_init(std::size_t count, const HomPoint& center, const TransitionNoise& spread,
                    Rng& rng);

/// Adds independent U(x), U(y), U(z) offsets to every particle; weights unchanged.
ParticleSet pf_predict(const ParticleSet& s, const TransitionNoise& noise, Rng& rng);

/// 1 / (1 + |z - project(point)|^2) per particle, then normalized to sum 1. Particles
/// behind the camera get weight 0; throws NumericalError if every weight is 0.
ParticleSet pf_weight(const ParticleSet& s, const Pixel& z, const CameraModel& cam);

/// The unnormalized weight for a pixel error vector.
double observation_weight(const Eigen::Vector2d& pixel_error);

/// Low-variance resampling: one offset in [0, 1/N), stride 1/N over the cumulative weights.
ParticleSet pf_resample_systematic(const ParticleSet& s, Rng& rng);

/// N i.i.d. categorical draws.
ParticleSet pf_resample_multinomial(const ParticleSet& s, Rng& rng);

ParticleSet pf_resample(const ParticleSet& s, Resampler kind, Rng& rng);

/// Weighted mean position, w = 1.
HomPoint pf_estimate(const ParticleSet& s);

/// Effective sample size 1 / sum(w^2).
double pf_ess(const ParticleSet& s);

struct ParticleStep {
  ParticleSet particles;  // after resampling
  HomPoint estimate;      // weighted mean before resampling
  double ess = 0.0;       // before resampling
};

/// predict -> weight -> estimate -> resample.
ParticleStep pf_step(const ParticleSet& s, const Pixel& z, const CameraModel& cam,
                     const TransitionNoise& noise, Rng& rng,
                     Resampler resampler = Resampler::kSystematic);

}  // namespace vistrack
