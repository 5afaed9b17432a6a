// Copyright 2026 The mpi_engine Authors.
// SPDX-License-Identifier: Apache-2.0

#include "mpie/geometry.hpp"

#include <Eigen/LU>
#include <cmath>
#include <sstream>

#include "mpie/error.hpp"

namespace mpie {

namespace {

constexpr double kRotationTol = 1e-9;
constexpr double kPlaneDenomTol = 1e-12;
constexpr double kDepthTol = 1e-9;

}  // namespace

CameraIntrinsics::CameraIntrinsics(double fx, double fy, double cx, double cy, int width,
                                   int height)
    : fx_(fx), fy_(fy), cx_(cx), cy_(cy), width_(width), height_(height) {
  if (!(fx > 0) || !(fy > 0) || !std::isfinite(fx) || !std::isfinite(fy)) {
    throw ValidationError("intrinsics: focal lengths must be positive and finite");
  }
  if (!std::isfinite(cx) || !std::isfinite(cy)) {
    throw ValidationError("intrinsics: principal point must be finite");
  }
  if (width < 1 || height < 1) {
    throw ValidationError("intrinsics: width and height must be >= 1");
  }
}

CameraIntrinsics CameraIntrinsics::centered(double focal, int width, int height) {
  return CameraIntrinsics(focal, focal, 0.5 * (width - 1), 0.5 * (height - 1), width, height);
}

Mat3 CameraIntrinsics::matrix() const {
  Mat3 k;
  k << fx_, 0, cx_, 0, fy_, cy_, 0, 0, 1;
  return k;
}

Mat3 CameraIntrinsics::inverse_matrix() const {
  Mat3 k;
  k << 1.0 / fx_, 0, -cx_ / fx_, 0, 1.0 / fy_, -cy_ / fy_, 0, 0, 1;
  return k;
}

Pose::Pose(const Mat3& rotation, const Vec3& translation)
    : rotation_(rotation), translation_(translation) {
  if (!rotation.allFinite() || !translation.allFinite()) {
    throw ValidationError("pose: non-finite entries");
  }
  const double ortho = (rotation.transpose() * rotation - Mat3::Identity()).cwiseAbs().maxCoeff();
  if (ortho > kRotationTol) {
    throw ValidationError("pose: rotation is not orthonormal");
  }
  if (std::abs(rotation.determinant() - 1.0) > kRotationTol) {
    throw ValidationError("pose: rotation determinant is not +1");
  }
}

Pose Pose::identity() { return Pose(Mat3::Identity(), Vec3::Zero(), Unchecked{}); }

Pose Pose::translation(const Vec3& t) {
  if (!t.allFinite()) throw ValidationError("pose: non-finite translation");
  return Pose(Mat3::Identity(), t, Unchecked{});
}

Pose offset_camera(const Vec3& centre) { return Pose::translation(-centre); }

Pose invert_pose(const Pose& p) {
  const Mat3 rt = p.rotation_.transpose();
  return Pose(rt, -(rt * p.translation_), Pose::Unchecked{});
}

Pose compose_pose(const Pose& a, const Pose& b) {
  return Pose(a.rotation_ * b.rotation_, a.rotation_ * b.translation_ + a.translation_,
              Pose::Unchecked{});
}

Plane::Plane(const Vec3& normal, double distance) : normal_(normal), distance_(distance) {
  if (!normal.allFinite() || std::abs(normal.norm() - 1.0) > 1e-9) {
    throw ValidationError("plane: normal must be a unit vector");
  }
  if (!(distance > 0) || !std::isfinite(distance)) {
    throw ValidationError("plane: distance must be positive");
  }
}

bool Plane::is_fronto_parallel() const {
  return std::abs(normal_.x()) <= 1e-9 && std::abs(normal_.y()) <= 1e-9 && normal_.z() > 0;
}

Plane transform_plane(const Plane& plane, const Pose& pose) {
  // n^T X_r = d with X_r = R^T (X_t - t)  =>  (R n)^T X_t = d + n^T R^T t
  const Vec3 n = pose.rotation() * plane.normal();
  const double d = plane.distance() + plane.normal().dot(pose.rotation().transpose() *
                                                         pose.translation());
  if (!(d > kPlaneDenomTol)) {
    throw GeometryError("plane does not lie in front of the transformed camera centre");
  }
  return Plane(n.normalized(), d);
}

std::vector<Plane> plane_set(double d_near, double d_far, std::size_t m) {
  if (m < 2) throw ValidationError("plane_set: need at least 2 planes");
  if (!(d_near > 0) || !std::isfinite(d_far)) {
    throw ValidationError("plane_set: near distance must be positive and far finite");
  }
  if (!(d_near < d_far)) {
    throw ValidationError("plane_set: empty range, near must be < far");
  }
  const double inv_near = 1.0 / d_near;
  const double inv_far = 1.0 / d_far;
  std::vector<Plane> planes;
  planes.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    double d;
    if (i == 0) {
      d = d_near;
    } else if (i + 1 == m) {
      d = d_far;
    } else {
      const double s = static_cast<double>(i) / static_cast<double>(m - 1);
      d = 1.0 / (inv_near + s * (inv_far - inv_near));
    }
    planes.push_back(Plane::fronto_parallel(d));
  }
  return planes;
}

Homography::Homography(const Mat3& m) : matrix_(m) {
  if (!m.allFinite()) throw GeometryError("homography: non-finite entries");
  const double fro = m.norm();
  if (!(fro > 0) || std::abs((m / fro).determinant()) <= 1e-12) {
    throw GeometryError("homography: matrix is singular");
  }
}

Homography Homography::inverse() const { return Homography(matrix_.inverse()); }

Vec2 Homography::map(const Vec2& pixel) const {
  const Vec3 q = matrix_ * Vec3(pixel.x(), pixel.y(), 1.0);
  return Vec2(q.x() / q.z(), q.y() / q.z());
}

namespace {

// -d - n^T R^T t, i.e. minus the plane offset seen from the target camera.
double plane_denominator(const Plane& plane, const Pose& theta) {
  const Mat3& r = theta.rotation();
  return -plane.distance() - plane.normal().dot(r.transpose() * theta.translation());
}

void check_denominator(double denom) {
  if (!(std::abs(denom) > kPlaneDenomTol)) {
    std::ostringstream os;
    os << "homography: target camera centre lies on the plane (denominator " << denom << ")";
    throw GeometryError(os.str());
  }
}

}  // namespace

Homography homography_tgt_to_ref(const Plane& plane, const CameraIntrinsics& k_ref,
                                 const CameraIntrinsics& k_tgt, const Pose& theta) {
  const double denom = plane_denominator(plane, theta);
  check_denominator(denom);
  const Mat3 rt = theta.rotation().transpose();
  const Vec3& n = plane.normal();
  const Mat3 rays = rt + (rt * theta.translation()) * (n.transpose() * rt) / denom;
  return Homography(k_ref.matrix() * rays * k_tgt.inverse_matrix());
}

Homography homography_ref_to_tgt(const Plane& plane, const CameraIntrinsics& k_ref,
                                 const CameraIntrinsics& k_tgt, const Pose& theta) {
  check_denominator(plane_denominator(plane, theta));
  const Mat3 rays =
      theta.rotation() + theta.translation() * plane.normal().transpose() / plane.distance();
  return Homography(k_tgt.matrix() * rays * k_ref.inverse_matrix());
}

Vec2 project_point(const CameraIntrinsics& k, const Pose& pose, const Vec3& x) {
  const Vec3 c = pose.apply(x);
  if (!(c.z() > kDepthTol)) {
    throw GeometryError("project_point: point is behind the camera");
  }
  return Vec2(k.fx() * c.x() / c.z() + k.cx(), k.fy() * c.y() / c.z() + k.cy());
}

}  // namespace mpie
