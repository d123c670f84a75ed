#pragma once

#include <Eigen/Dense>
#include <vector>

namespace vistrack {

using Mat4 = Eigen::Matrix4d;
using Mat34 = Eigen::Matrix<double, 3, 4>;
using Mat24 = Eigen::Matrix<double, 2, 4>;

/// Homogeneous 3D point, positions in centimeters. Canonical form has w = 1.
struct HomPoint {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
  double w = 1.0;

  Eigen::Vector4d vec() const { return {x, y, z, w}; }
  static HomPoint from(const Eigen::Vector4d& v) { return {v[0], v[1], v[2], v[3]}; }

  /// Cartesian position; requires w != 0.
  Eigen::Vector3d position() const;

  bool operator==(const HomPoint&) const = default;
};

HomPoint operator*(double s, const HomPoint& p);

struct Pixel {
  double u = 0.0;
  double v = 0.0;

  Eigen::Vector2d vec() const { return {u, v}; }
  bool operator==(const Pixel&) const = default;
};

/// Pinhole camera: 3x4 projection matrix plus image size (metadata only).
class CameraModel {
 public:
  static constexpr double kDefaultFocal = 500.0;
  static constexpr double kDefaultCx = 320.0;
  static constexpr double kDefaultCy = 240.0;

  /// Throws InvalidArgument if the third row of `projection` is all zero or non-finite.
  explicit CameraModel(const Mat34& projection, int image_width = 640, int image_height = 480);

  /// P = [[f,0,cx,0],[0,f,cy,0],[0,0,1,0]]: camera at the world origin looking along +z.
  static CameraModel from_intrinsics(double focal, double cx, double cy, int image_width = 640,
                                     int image_height = 480);
  static CameraModel default_camera() {
    return from_intrinsics(kDefaultFocal, kDefaultCx, kDefaultCy);
  }

  const Mat34& projection() const { return projection_; }
  int image_width() const { return image_width_; }
  int image_height() const { return image_height_; }

 private:
  Mat34 projection_;
  int image_width_;
  int image_height_;
};

/// Chessboard corner grid centered on `center`, lying in the plane z = center.z.
struct BoardSpec {
  HomPoint center{0.0, 0.0, 150.0, 1.0};
  double square_size = 4.0;
  int rows = 3;
  int cols = 3;
};

/// (x/w, y/w, z/w, 1). Throws DegeneratePointError when w == 0.
HomPoint normalize(const HomPoint& p);

/// Identity with entry (3,4) (1-based) set to `d`: adds d*w to z each frame.
Mat4 make_transition(double d);

HomPoint apply_transition(const Mat4& transition, const HomPoint& p);

/// Depth of the Cartesian point: third component of P*p divided by w. Positive means in
/// front of the camera. Throws DegeneratePointError when w == 0.
double depth(const CameraModel& cam, const HomPoint& p);

/// Perspective projection. Throws BehindCameraError when depth <= 0.
Pixel project(const CameraModel& cam, const HomPoint& p);

/// d(u,v)/d(x,y,z,w) of `project` at p, including the w column.
Mat24 projection_jacobian(const CameraModel& cam, const HomPoint& p);

/// rows*cols corners, row-major, spaced square_size apart and centered on spec.center.
std::vector<HomPoint> board_corners(const BoardSpec& spec);

}  // namespace vistrack
