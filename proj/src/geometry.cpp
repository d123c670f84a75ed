#include "vistrack/geometry.hpp"

#include <cmath>
#include <string>

#include "vistrack/errors.hpp"

namespace vistrack {

Eigen::Vector3d HomPoint::position() const {
  const HomPoint n = normalize(*this);
  return {n.x, n.y, n.z};
}

HomPoint operator*(double s, const HomPoint& p) { return {s * p.x, s * p.y, s * p.z, s * p.w}; }

CameraModel::CameraModel(const Mat34& projection, int image_width, int image_height)
    : projection_(projection), image_width_(image_width), image_height_(image_height) {
  if (!projection_.allFinite()) {
    throw InvalidArgument("camera projection matrix has non-finite entries");
  }
  if (projection_.row(2).isZero(0.0)) {
    throw InvalidArgument("camera projection matrix has an all-zero third row");
  }
  if (image_width_ <= 0 || image_height_ <= 0) {
    throw InvalidArgument("camera image size must be positive");
  }
}

CameraModel CameraModel::from_intrinsics(double focal, double cx, double cy, int image_width,
                                         int image_height) {
  Mat34 p;
  p << focal, 0.0, cx, 0.0,
       0.0, focal, cy, 0.0,
       0.0, 0.0, 1.0, 0.0;
  return CameraModel(p, image_width, image_height);
}

HomPoint normalize(const HomPoint& p) {
  if (p.w == 0.0) {
    throw DegeneratePointError("homogeneous point has w = 0");
  }
  if (p.w == 1.0) {
    return p;
  }
  return {p.x / p.w, p.y / p.w, p.z / p.w, 1.0};
}

Mat4 make_transition(double d) {
  Mat4 a = Mat4::Identity();
  a(2, 3) = d;
  return a;
}

HomPoint apply_transition(const Mat4& transition, const HomPoint& p) {
  return HomPoint::from(transition * p.vec());
}

double depth(const CameraModel& cam, const HomPoint& p) {
  if (p.w == 0.0) {
    throw DegeneratePointError("homogeneous point has w = 0");
  }
  // Dividing by w makes the sign independent of the homogeneous representative.
  return cam.projection().row(2).dot(p.vec()) / p.w;
}

namespace {

Eigen::Vector3d projected_checked(const CameraModel& cam, const HomPoint& p) {
  const double d = depth(cam, p);
  // Negated comparison so NaN depth is rejected as well.
  if (!(d > 0.0)) {
    throw BehindCameraError("point (" + std::to_string(p.x) + ", " + std::to_string(p.y) + ", " +
                            std::to_string(p.z) + ", " + std::to_string(p.w) +
                            ") has non-positive depth");
  }
  return cam.projection() * p.vec();
}

}  // namespace

Pixel project(const CameraModel& cam, const HomPoint& p) {
  const Eigen::Vector3d h = projected_checked(cam, p);
  return {h[0] / h[2], h[1] / h[2]};
}

Mat24 projection_jacobian(const CameraModel& cam, const HomPoint& p) {
  const Eigen::Vector3d h = projected_checked(cam, p);
  const Mat34& proj = cam.projection();
  // Quotient rule on u = h1/h3, v = h2/h3 with h = P p.
  const double inv = 1.0 / h[2];
  Mat24 j;
  j.row(0) = (proj.row(0) - (h[0] * inv) * proj.row(2)) * inv;
  j.row(1) = (proj.row(1) - (h[1] * inv) * proj.row(2)) * inv;
  return j;
}

std::vector<HomPoint> board_corners(const BoardSpec& spec) {
  if (spec.rows < 1 || spec.cols < 1) {
    throw InvalidArgument("board must have at least one corner row and column");
  }
  if (!(spec.square_size > 0.0)) {
    throw InvalidArgument("board square size must be positive");
  }
  const HomPoint c = normalize(spec.center);
  const double row_mid = 0.5 * (spec.rows - 1);
  const double col_mid = 0.5 * (spec.cols - 1);
  std::vector<HomPoint> corners;
  corners.reserve(static_cast<std::size_t>(spec.rows) * static_cast<std::size_t>(spec.cols));
  for (int r = 0; r < spec.rows; ++r) {
    for (int col = 0; col < spec.cols; ++col) {
      corners.push_back({c.x + (col - col_mid) * spec.square_size,
                         c.y + (r - row_mid) * spec.square_size, c.z, 1.0});
    }
  }
  return corners;
}

}  // namespace vistrack
