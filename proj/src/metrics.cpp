#include "vistrack/metrics.hpp"

#include <cmath>
#include <string>

#include "vistrack/errors.hpp"

namespace vistrack {

TrackingMetrics evaluate(const std::vector<EstimateRecord>& estimates,
                         const GroundTruthTrack& truth, int tail) {
  if (estimates.size() != truth.size()) {
    throw InvalidArgument("estimate and truth tracks differ in length (" +
                          std::to_string(estimates.size()) + " vs " +
                          std::to_string(truth.size()) + ")");
  }
  const int frames = static_cast<int>(truth.size());
  if (tail < 1 || tail > frames) {
    throw InvalidArgument("tail must be in [1, " + std::to_string(frames) + "]");
  }
  TrackingMetrics m;
  m.frames = frames;
  m.tail = tail;
  Eigen::Vector3d sq = Eigen::Vector3d::Zero();
  Eigen::Vector3d abs_tail = Eigen::Vector3d::Zero();
  for (int i = 0; i < frames; ++i) {
    const auto idx = static_cast<std::size_t>(i);
    if (estimates[idx].frame != truth[idx].frame) {
      throw InvalidArgument("frame mismatch at row " + std::to_string(i) + ": estimate frame " +
                            std::to_string(estimates[idx].frame) + ", truth frame " +
                            std::to_string(truth[idx].frame));
    }
    const Eigen::Vector3d err = estimates[idx].position - truth[idx].point.position();
    sq += err.cwiseAbs2();
    if (i >= frames - tail) {
      abs_tail += err.cwiseAbs();
    }
  }
  m.rmse = (sq / frames).cwiseSqrt();
  m.tail_mae = abs_tail / tail;
  return m;
}

double reprojection_error(const CameraModel& cam, const Eigen::Vector3d& estimate,
                          const Pixel& observed) {
  const Pixel p = project(cam, {estimate[0], estimate[1], estimate[2], 1.0});
  return (p.vec() - observed.vec()).norm();
}

}  // namespace vistrack
