#include "vistrack/particle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "vistrack/errors.hpp"

namespace vistrack {
namespace {

void check_range(const Range& r, const char* axis) {
  if (!std::isfinite(r.lo) || !std::isfinite(r.hi) || r.lo > r.hi) {
    throw InvalidArgument(std::string("invalid ") + axis + " noise range");
  }
}

// Inclusive prefix sums, rescaled so the last entry is exactly `total_out`.
std::vector<double> cumulative(const ParticleSet& s, double total_out) {
  std::vector<double> cum(s.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    acc += s.particles[i].weight;
    cum[i] = acc;
  }
  if (!(acc > 0.0) || !std::isfinite(acc)) {
    throw NumericalError("particle weights are degenerate (sum is zero or non-finite)");
  }
  for (double& c : cum) {
    c = c / acc * total_out;
  }
  // Pin the tail so draws never fall off the end; zero-weight trailing particles keep the
  // same cumulative value as their predecessor and stay unreachable.
  for (std::size_t i = cum.size(); i-- > 0;) {
    if (s.particles[i].weight > 0.0) {
      std::fill(cum.begin() + static_cast<std::ptrdiff_t>(i), cum.end(), total_out);
      break;
    }
  }
  return cum;
}

ParticleSet uniform_copies(const ParticleSet& s, const std::vector<std::size_t>& picks) {
  ParticleSet out;
  out.particles.reserve(picks.size());
  const double w = 1.0 / static_cast<double>(picks.size());
  for (std::size_t idx : picks) {
    out.particles.push_back({s.particles[idx].point, w});
  }
  return out;
}

}  // namespace

double ParticleSet::weight_sum() const {
  return std::accumulate(particles.begin(), particles.end(), 0.0,
                         [](double acc, const Particle& p) { return acc + p.weight; });
}

void TransitionNoise::validate() const {
  check_range(x, "x");
  check_range(y, "y");
  check_range(z, "z");
}

ParticleSet pf_init(std::size_t count, const HomPoint& center, const TransitionNoise& spread,
                    Rng& rng) {
  if (count == 0) {
    throw InvalidArgument("particle count must be at least 1");
  }
  spread.validate();
  const HomPoint c = normalize(center);
  ParticleSet s;
  s.particles.reserve(count);
  const double w = 1.0 / static_cast<double>(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double x = c.x + rng.uniform(spread.x.lo, spread.x.hi);
    const double y = c.y + rng.uniform(spread.y.lo, spread.y.hi);
    const double z = c.z + rng.uniform(spread.z.lo, spread.z.hi);
    s.particles.push_back({{x, y, z, 1.0}, w});
  }
  return s;
}

ParticleSet pf_predict(const ParticleSet& s, const TransitionNoise& noise, Rng& rng) {
  noise.validate();
  ParticleSet out = s;
  for (Particle& p : out.particles) {
    p.point.x += rng.uniform(noise.x.lo, noise.x.hi);
    p.point.y += rng.uniform(noise.y.lo, noise.y.hi);
    p.point.z += rng.uniform(noise.z.lo, noise.z.hi);
  }
  return out;
}

double observation_weight(const Eigen::Vector2d& pixel_error) {
  return 1.0 / (1.0 + pixel_error.squaredNorm());
}

ParticleSet pf_weight(const ParticleSet& s, const Pixel& z, const CameraModel& cam) {
  ParticleSet out = s;
  double total = 0.0;
  for (Particle& p : out.particles) {
    if (depth(cam, p.point) > 0.0) {
      p.weight = observation_weight(z.vec() - project(cam, p.point).vec());
    } else {
      p.weight = 0.0;
    }
    total += p.weight;
  }
  if (!(total > 0.0)) {
    throw NumericalError("every particle has zero weight");
  }
  for (Particle& p : out.particles) {
    p.weight /= total;
  }
  return out;
}

ParticleSet pf_resample_systematic(const ParticleSet& s, Rng& rng) {
  const std::size_t n = s.size();
  // Work in units of 1/N: positions k + offset against N * cumulative weight.
  const std::vector<double> cum = cumulative(s, static_cast<double>(n));
  const double offset = rng.uniform(0.0, 1.0);
  std::vector<std::size_t> picks;
  picks.reserve(n);
  std::size_t i = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const double position = static_cast<double>(k) + offset;
    while (i + 1 < n && cum[i] <= position) {
      ++i;
    }
    picks.push_back(i);
  }
  return uniform_copies(s, picks);
}

ParticleSet pf_resample_multinomial(const ParticleSet& s, Rng& rng) {
  const std::size_t n = s.size();
  const std::vector<double> cum = cumulative(s, 1.0);
  std::vector<std::size_t> picks;
  picks.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double u = rng.uniform(0.0, 1.0);
    const auto it = std::upper_bound(cum.begin(), cum.end(), u);
    picks.push_back(std::min<std::size_t>(static_cast<std::size_t>(it - cum.begin()), n - 1));
  }
  return uniform_copies(s, picks);
}

ParticleSet pf_resample(const ParticleSet& s, Resampler kind, Rng& rng) {
  return kind == Resampler::kSystematic ? pf_resample_systematic(s, rng)
                                        : pf_resample_multinomial(s, rng);
}

HomPoint pf_estimate(const ParticleSet& s) {
  Eigen::Vector3d acc = Eigen::Vector3d::Zero();
  double total = 0.0;
  for (const Particle& p : s.particles) {
    acc += p.weight * p.point.position();
    total += p.weight;
  }
  if (!(total > 0.0)) {
    throw NumericalError("cannot estimate from zero total weight");
  }
  acc /= total;
  return {acc[0], acc[1], acc[2], 1.0};
}

double pf_ess(const ParticleSet& s) {
  double sq = 0.0;
  for (const Particle& p : s.particles) {
    sq += p.weight * p.weight;
  }
  return 1.0 / sq;
}

ParticleStep pf_step(const ParticleSet& s, const Pixel& z, const CameraModel& cam,
                     const TransitionNoise& noise, Rng& rng, Resampler resampler) {
  const ParticleSet weighted = pf_weight(pf_predict(s, noise, rng), z, cam);
  ParticleStep out;
  out.estimate = pf_estimate(weighted);
  out.ess = pf_ess(weighted);
  out.particles = pf_resample(weighted, resampler, rng);
  return out;
}

}  // namespace vistrack
