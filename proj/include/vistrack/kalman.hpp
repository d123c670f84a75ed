#pragma once

#include <Eigen/Dense>

#include "vistrack/geometry.hpp"

namespace vistrack {

/// Gaussian posterior over the homogeneous state. The w row/column of `cov` is zero.
struct GaussianState {
  HomPoint mean;
  Mat4 cov = Mat4::Zero();
};

struct KalmanConfig {
  static constexpr double kDefaultInitCovScale = 150.0;

  Mat4 transition = make_transition(-0.5);
  Mat4 process_noise = Eigen::Vector4d(1.0, 1.0, 1.0, 0.0).asDiagonal();
  Eigen::Matrix2d pixel_noise = Eigen::Vector2d(4.0, 4.0).asDiagonal();
  /// Prior variance (cm^2) on each position axis at time zero.
  double init_cov_scale = kDefaultInitCovScale;

  /// Throws InvalidArgument unless Q and R are symmetric PSD, R is invertible, the w
  /// row/column of Q is zero and everything is finite.
  void validate() const;
};

/// Prior centred on normalize(x0) with init_cov_scale * I on the position block.
GaussianState kf_init(const HomPoint& x0, const KalmanConfig& cfg);

/// mean' = A mean, cov' = A cov A^T + Q.
GaussianState kf_predict(const GaussianState& s, const KalmanConfig& cfg);

/// EKF measurement update in pixel space, linearized through projection_jacobian, with
/// the Joseph-form covariance update. Throws NumericalError if the innovation covariance
/// is singular and BehindCameraError if the mean projects behind the camera.
GaussianState kf_update(const GaussianState& s, const Pixel& z, const CameraModel& cam,
                        const KalmanConfig& cfg);

/// kf_update(kf_predict(s, cfg), z, cam, cfg).
GaussianState kf_step(const GaussianState& s, const Pixel& z, const CameraModel& cam,
                      const KalmanConfig& cfg);

}  // namespace vistrack
