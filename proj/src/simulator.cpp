#include "vistrack/simulator.hpp"

#include <cmath>
#include <string>

#include "vistrack/errors.hpp"

namespace vistrack {

HomPoint mid_end_point(double z0) { return {0.0, 0.0, z0, 1.0}; }

ScenarioConfig preset(std::string_view name, double z0) {
  ScenarioConfig cfg;
  if (name == "left36") {
    cfg.start = {-36.0, 0.0, z0, 1.0};
  } else if (name == "right30") {
    cfg.start = {30.0, 0.0, z0, 1.0};
  } else {
    throw InvalidArgument("unknown scenario preset '" + std::string(name) +
                          "' (expected left36 or right30)");
  }
  return cfg;
}

GroundTruthTrack generate_truth(const ScenarioConfig& cfg) {
  if (cfg.frames < 1) {
    throw InvalidArgument("scenario needs at least one frame");
  }
  if (!std::isfinite(cfg.d)) {
    throw InvalidArgument("displacement must be finite");
  }
  const HomPoint start = normalize(cfg.start);
  GroundTruthTrack track;
  track.reserve(static_cast<std::size_t>(cfg.frames));
  for (int t = 0; t < cfg.frames; ++t) {
    const HomPoint p{start.x, start.y, start.z + static_cast<double>(t) * cfg.d, 1.0};
    if (!(depth(cfg.camera, p) > 0.0)) {
      throw BehindCameraError("trajectory leaves the camera frustum at frame " +
                              std::to_string(t));
    }
    track.push_back({t, p});
  }
  return track;
}

ObservationTrack observe(const GroundTruthTrack& truth, const CameraModel& cam, double sigma,
                         Rng& rng) {
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) {
    throw InvalidArgument("pixel noise standard deviation must be finite and non-negative");
  }
  ObservationTrack obs;
  obs.reserve(truth.size());
  for (const TruthSample& s : truth) {
    const Pixel exact = project(cam, s.point);
    const double du = rng.normal(0.0, sigma);
    const double dv = rng.normal(0.0, sigma);
    obs.push_back({s.frame, {exact.u + du, exact.v + dv}});
  }
  return obs;
}

}  // namespace vistrack
