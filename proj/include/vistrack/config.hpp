#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>

#include "vistrack/kalman.hpp"
#include "vistrack/particle.hpp"
#include "vistrack/rng.hpp"

namespace vistrack {

enum class FilterKind { kEkf, kPf };

FilterKind parse_filter_kind(std::string_view name);
std::string to_string(FilterKind kind);
Resampler parse_resampler(std::string_view name);
std::string to_string(Resampler kind);

struct CameraParams {
  double focal = CameraModel::kDefaultFocal;
  double cx = CameraModel::kDefaultCx;
  double cy = CameraModel::kDefaultCy;
  int image_width = 640;
  int image_height = 480;

  CameraModel model() const {
    return CameraModel::from_intrinsics(focal, cx, cy, image_width, image_height);
  }
};

struct ParticleConfig {
  std::size_t count = kDefaultParticleCount;
  TransitionNoise noise;
  /// Box the initial particles are drawn from, around the initial point.
  TransitionNoise init_spread{{-40.0, 40.0}, {0.0, 0.0}, {0.0, 0.0}};
  Resampler resampler = Resampler::kSystematic;
};

/// Everything `track` needs besides the observations. Only the section matching
/// `filter` is used.
struct RunConfig {
  FilterKind filter = FilterKind::kEkf;
  CameraParams camera;
  HomPoint initial{0.0, 0.0, 150.0, 1.0};
  RngSeed seed{};
  /// Per-frame displacement along z used by the ekf transition.
  double displacement = -0.5;
  KalmanConfig kalman;
  ParticleConfig particle;

  /// Throws InvalidArgument on non-finite values or invalid ranges.
  void validate() const;
};

/// Parses a flat JSON object (see docs/config.md). Unknown keys, keys belonging to the
/// other filter kind and a mismatching "filter" entry are rejected with InvalidArgument;
/// syntax errors raise FormatError.
RunConfig parse_run_config(std::string_view json_text, FilterKind filter,
                           std::string_view source = "<config>");
RunConfig load_run_config(const std::filesystem::path& path, FilterKind filter);

/// Fully resolved configuration, defaults included, as pretty-printed JSON.
std::string run_config_to_json(const RunConfig& cfg);

}  // namespace vistrack
