// Copyright 2026 The mpi_engine Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Core>
#include <cstddef>
#include <vector>

// Conventions used throughout the engine:
//   camera frame: x right, y down, z forward;
//   pixel (u, v) <-> homogeneous [u, v, 1], texel (i, j) centred at (i, j);
//   a Pose maps reference-frame points to target-frame points, X_t = R X_r + t;
//   a Plane is the set n^T X = d in the reference frame, d > 0.

namespace mpie {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

/// Pinhole intrinsics.
class CameraIntrinsics {
 public:
  CameraIntrinsics(double fx, double fy, double cx, double cy, int width, int height);

  /// Square pixels with the principal point at the image centre.
  static CameraIntrinsics centered(double focal, int width, int height);

  double fx() const { return fx_; }
  double fy() const { return fy_; }
  double cx() const { return cx_; }
  double cy() const { return cy_; }
  int width() const { return width_; }
  int height() const { return height_; }

  Mat3 matrix() const;
  Mat3 inverse_matrix() const;

  bool operator==(const CameraIntrinsics&) const = default;

 private:
  double fx_, fy_, cx_, cy_;
  int width_, height_;
};

/// Rigid transform from the reference camera frame to the target frame.
class Pose {
 public:
  /// Throws ValidationError unless R is orthonormal with det +1 (1e-9).
  Pose(const Mat3& rotation, const Vec3& translation);

  static Pose identity();
  static Pose translation(const Vec3& t);

  const Mat3& rotation() const { return rotation_; }
  const Vec3& translation() const { return translation_; }

  Vec3 apply(const Vec3& x) const { return rotation_ * x + translation_; }

 private:
  struct Unchecked {};
  Pose(const Mat3& r, const Vec3& t, Unchecked) : rotation_(r), translation_(t) {}
  friend Pose compose_pose(const Pose&, const Pose&);
  friend Pose invert_pose(const Pose&);

  Mat3 rotation_;
  Vec3 translation_;
};

/// Pose of an unrotated target camera whose centre sits at `centre` in the
/// reference frame (translation = -centre). `offset_camera({0.54, 0, 0})`
/// is a camera 54 cm to the right of the reference.
Pose offset_camera(const Vec3& centre);

/// Inverse transform; compose_pose(p, invert_pose(p)) is the identity.
Pose invert_pose(const Pose& p);

/// Applying the result equals applying `b` first, then `a`.
Pose compose_pose(const Pose& a, const Pose& b);

/// Plane n^T X = d in the reference camera frame.
class Plane {
 public:
  /// Throws ValidationError unless |n| = 1 (1e-9) and d > 0.
  Plane(const Vec3& normal, double distance);

  static Plane fronto_parallel(double distance) { return Plane(Vec3(0, 0, 1), distance); }

  const Vec3& normal() const { return normal_; }
  double distance() const { return distance_; }
  bool is_fronto_parallel() const;

  bool operator==(const Plane&) const = default;

 private:
  Vec3 normal_;
  double distance_;
};

/// The same plane expressed in the frame that `pose` maps into. Throws
/// GeometryError if the camera centre of that frame lies on or behind it
/// (the transformed offset would be <= 0).
Plane transform_plane(const Plane& plane, const Pose& pose);

/// m fronto-parallel planes with 1/d uniformly spaced from 1/d_near to
/// 1/d_far inclusive, nearest first.
std::vector<Plane> plane_set(double d_near, double d_far, std::size_t m);

/// 3x3 projective map, meaningful up to scale.
class Homography {
 public:
  /// Throws GeometryError if the matrix is singular (|det| <= 1e-12 after
  /// scaling to unit Frobenius norm).
  explicit Homography(const Mat3& m);

  const Mat3& matrix() const { return matrix_; }
  Homography inverse() const;
  Vec2 map(const Vec2& pixel) const;

  static Homography identity() { return Homography(Mat3::Identity()); }

 private:
  Mat3 matrix_;
};

/// Plane-induced homography taking target-camera pixels to reference-camera
/// pixels:
///
///   K_ref [R^T + R^T t n^T R^T / (-d - n^T R^T t)] K_tgt^-1
///
/// The bracket is the ray map X_r = M X_t for points on the plane; the
/// denominator is minus the plane offset seen from the target camera.
/// Throws GeometryError when that offset is within 1e-12 of zero.
Homography homography_tgt_to_ref(const Plane& plane, const CameraIntrinsics& k_ref,
                                 const CameraIntrinsics& k_tgt, const Pose& theta);

/// Inverse of homography_tgt_to_ref: K_tgt (R + t n^T / d) K_ref^-1. This is
/// the forward map that `warp` expects.
Homography homography_ref_to_tgt(const Plane& plane, const CameraIntrinsics& k_ref,
                                 const CameraIntrinsics& k_tgt, const Pose& theta);

/// Alias for homography_tgt_to_ref (the inverse-warping direction).
inline Homography homography(const Plane& plane, const CameraIntrinsics& k_ref,
                             const CameraIntrinsics& k_tgt, const Pose& theta) {
  return homography_tgt_to_ref(plane, k_ref, k_tgt, theta);
}

/// Pinhole projection of pose.apply(x). Throws GeometryError if the
/// transformed depth is <= 1e-9.
Vec2 project_point(const CameraIntrinsics& k, const Pose& pose, const Vec3& x);

}  // namespace mpie
