#pragma once

#include <string_view>
#include <vector>

#include "vistrack/geometry.hpp"
#include "vistrack/rng.hpp"

namespace vistrack {

struct TruthSample {
  int frame = 0;
  HomPoint point;
};

struct Observation {
  int frame = 0;
  Pixel pixel;
};

using GroundTruthTrack = std::vector<TruthSample>;
using ObservationTrack = std::vector<Observation>;

/// Depth of the mid-end reference point the presets start from and filters initialize at.
inline constexpr double kMidEndDepth = 150.0;

struct ScenarioConfig {
  HomPoint start{0.0, 0.0, kMidEndDepth, 1.0};
  double d = -0.5;
  int frames = 60;
  double pixel_noise_std = 1.0;
  CameraModel camera = CameraModel::default_camera();
  RngSeed seed{};
};

/// "left36" starts 36 cm left of the mid-end point, "right30" 30 cm right; both move
/// 0.5 cm per frame toward the camera. Throws InvalidArgument for other names.
ScenarioConfig preset(std::string_view name, double z0 = kMidEndDepth);

/// The mid-end point at depth z0 on the optical axis.
HomPoint mid_end_point(double z0 = kMidEndDepth);

/// start + (0, 0, t*d) for t = 0..frames-1, computed in closed form. Throws
/// BehindCameraError if any point leaves the region in front of the camera.
GroundTruthTrack generate_truth(const ScenarioConfig& cfg);

/// Exact projections plus independent N(0, sigma^2) noise on u and v.
ObservationTrack observe(const GroundTruthTrack& truth, const CameraModel& cam, double sigma,
                         Rng& rng);

}  // namespace vistrack
