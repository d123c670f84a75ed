#include "vistrack/kalman.hpp"

#include <algorithm>
#include <cmath>

#include "vistrack/errors.hpp"

namespace vistrack {
namespace {

bool symmetric_psd(const Eigen::MatrixXd& m) {
  if (!m.allFinite()) {
    return false;
  }
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-9 * scale) {
    return false;
  }
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(0.5 * (m + m.transpose()),
                                                           Eigen::EigenvaluesOnly);
  return eig.eigenvalues().minCoeff() >= -1e-12 * scale;
}

// w is deterministic: keep its variance row and column exactly zero.
void clamp_w(Mat4& cov) {
  cov = 0.5 * (cov + cov.transpose()).eval();
  cov.row(3).setZero();
  cov.col(3).setZero();
}

}  // namespace

void KalmanConfig::validate() const {
  if (!transition.allFinite()) {
    throw InvalidArgument("transition matrix has non-finite entries");
  }
  if (!symmetric_psd(process_noise)) {
    throw InvalidArgument("process noise must be symmetric positive semidefinite");
  }
  if (!process_noise.row(3).isZero(0.0) || !process_noise.col(3).isZero(0.0)) {
    throw InvalidArgument("process noise must have a zero w row and column");
  }
  if (!symmetric_psd(pixel_noise) || pixel_noise.determinant() <= 0.0) {
    throw InvalidArgument("pixel noise must be symmetric positive definite");
  }
  if (!std::isfinite(init_cov_scale) || init_cov_scale < 0.0) {
    throw InvalidArgument("initial covariance scale must be finite and non-negative");
  }
}

GaussianState kf_init(const HomPoint& x0, const KalmanConfig& cfg) {
  GaussianState s;
  s.mean = normalize(x0);
  s.cov.topLeftCorner<3, 3>() = cfg.init_cov_scale * Eigen::Matrix3d::Identity();
  return s;
}

GaussianState kf_predict(const GaussianState& s, const KalmanConfig& cfg) {
  GaussianState out;
  out.mean = normalize(apply_transition(cfg.transition, s.mean));
  out.cov = cfg.transition * s.cov * cfg.transition.transpose() + cfg.process_noise;
  clamp_w(out.cov);
  return out;
}

GaussianState kf_update(const GaussianState& s, const Pixel& z, const CameraModel& cam,
                        const KalmanConfig& cfg) {
  const Pixel predicted = project(cam, s.mean);
  const Mat24 jac = projection_jacobian(cam, s.mean);
  const Eigen::Vector2d innovation = z.vec() - predicted.vec();

  const Eigen::Matrix2d innov_cov = jac * s.cov * jac.transpose() + cfg.pixel_noise;
  const Eigen::FullPivLU<Eigen::Matrix2d> lu(innov_cov);
  if (!innov_cov.allFinite() || !lu.isInvertible()) {
    throw NumericalError("innovation covariance is singular");
  }
  // K = cov J^T S^-1, solved as (S^-1 J cov)^T since S and cov are symmetric.
  const Eigen::Matrix<double, 4, 2> gain = lu.solve(jac * s.cov).transpose();

  GaussianState out;
  out.mean = normalize(HomPoint::from(s.mean.vec() + gain * innovation));
  const Mat4 i_kj = Mat4::Identity() - gain * jac;
  out.cov = i_kj * s.cov * i_kj.transpose() + gain * cfg.pixel_noise * gain.transpose();
  clamp_w(out.cov);
  return out;
}

GaussianState kf_step(const GaussianState& s, const Pixel& z, const CameraModel& cam,
                      const KalmanConfig& cfg) {
  return kf_update(kf_predict(s, cfg), z, cam, cfg);
}

}  // namespace vistrack
