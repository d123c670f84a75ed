#pragma once

#include <Eigen/Dense>
#include <vector>

#include "vistrack/csv_io.hpp"
#include "vistrack/simulator.hpp"

namespace vistrack {

struct TrackingMetrics {
  int frames = 0;
  int tail = 0;
  Eigen::Vector3d rmse = Eigen::Vector3d::Zero();      // per axis, all frames
  Eigen::Vector3d tail_mae = Eigen::Vector3d::Zero();  // per axis, last `tail` frames
};

/// Per-axis RMSE over the whole track and mean absolute error over the last `tail` frames.
/// Estimates and truth must cover the same frames in the same order; 1 <= tail <= frames.
TrackingMetrics evaluate(const std::vector<EstimateRecord>& estimates,
                         const GroundTruthTrack& truth, int tail);

/// Pixel distance between an observation and the projection of an estimated point.
double reprojection_error(const CameraModel& cam, const Eigen::Vector3d& estimate,
                          const Pixel& observed);

}  // namespace vistrack
