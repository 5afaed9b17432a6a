// Copyright 2026 The mpi_engine Authors.
// SPDX-License-Identifier: Apache-2.0

#include <catch2/catch_amalgamated.hpp>

#include "mpie/error.hpp"
#include "mpie/geometry.hpp"
#include "mpie/geometry_json.hpp"
#include "support/oracles.hpp"

using namespace mpie;
using mpie::testing::Rng;
using mpie::testing::uniform;
using Catch::Approx;

namespace {

Mat3 unit_frobenius(const Mat3& m) {
  Mat3 n = m / m.norm();
  // fix the projective sign so comparisons are meaningful
  return n(2, 2) < 0 ? Mat3(-n) : n;
}

}  // namespace

TEST_CASE("invert_pose", "[geometry]") {
  SECTION("identity") {
    const Pose p = invert_pose(Pose::identity());
    CHECK(p.rotation().isIdentity(0));
    CHECK(p.translation().isZero(0));
  }
  SECTION("pure translation negates") {
    const Pose p = invert_pose(Pose::translation(Vec3(1, 0, 0)));
    CHECK(p.rotation().isIdentity(0));
    CHECK(p.translation() == Vec3(-1, 0, 0));
  }
  SECTION("round trip through compose is the identity") {
    Rng rng(11);
    for (int i = 0; i < 200; ++i) {
      const Pose p = testing::random_pose(rng, M_PI, 10.0);
      const Pose e = compose_pose(p, invert_pose(p));
      CHECK((e.rotation() - Mat3::Identity()).cwiseAbs().maxCoeff() < 1e-9);
      CHECK(e.translation().cwiseAbs().maxCoeff() < 1e-9);
    }
  }
}

TEST_CASE("compose_pose", "[geometry]") {
  SECTION("identities") {
    const Pose p = compose_pose(Pose::identity(), Pose::identity());
    CHECK(p.rotation().isIdentity(0));
    CHECK(p.translation().isZero(0));
  }
  SECTION("translations add") {
    const Pose p = compose_pose(Pose::translation(Vec3(1, 0, 0)), Pose::translation(Vec3(0, 1, 0)));
    CHECK(p.translation() == Vec3(1, 1, 0));
  }
  SECTION("matches the 4x4 homogeneous product") {
    Rng rng(5);
    for (int i = 0; i < 200; ++i) {
      const Pose a = testing::random_pose(rng);
      const Pose b = testing::random_pose(rng);
      const Eigen::Matrix4d expected = testing::homogeneous(a) * testing::homogeneous(b);
      const Eigen::Matrix4d got = testing::homogeneous(compose_pose(a, b));
      CHECK((expected - got).cwiseAbs().maxCoeff() < 1e-12);
      const Vec3 x(uniform(rng, -5, 5), uniform(rng, -5, 5), uniform(rng, -5, 5));
      CHECK((compose_pose(a, b).apply(x) - a.apply(b.apply(x))).norm() < 1e-12);
    }
  }
}

TEST_CASE("pose validation", "[geometry]") {
  Mat3 scaled = Mat3::Identity() * 1.01;
  CHECK_THROWS_AS(Pose(scaled, Vec3::Zero()), ValidationError);
  Mat3 reflection = Mat3::Identity();
  reflection(0, 0) = -1;
  CHECK_THROWS_AS(Pose(reflection, Vec3::Zero()), ValidationError);
}

TEST_CASE("plane_set", "[geometry]") {
  SECTION("1..100 with 32 planes, linear in inverse depth") {
    const auto planes = plane_set(1, 100, 32);
    REQUIRE(planes.size() == 32);
    CHECK(planes.front().distance() == 1.0);
    CHECK(planes.back().distance() == 100.0);
    const double step = (1.0 / 100.0 - 1.0) / 31.0;
    for (std::size_t i = 0; i < planes.size(); ++i) {
      CHECK(planes[i].is_fronto_parallel());
      CHECK(1.0 / planes[i].distance() == Approx(1.0 + step * static_cast<double>(i)).epsilon(1e-12));
      if (i > 0) CHECK(planes[i].distance() > planes[i - 1].distance());
    }
  }
  SECTION("hand-evaluated 1..3 with 3 planes") {
    const auto planes = plane_set(1, 3, 3);
    CHECK(planes[0].distance() == 1.0);
    CHECK(planes[1].distance() == Approx(1.5).epsilon(1e-15));
    CHECK(planes[2].distance() == 3.0);
  }
  SECTION("degenerate ranges are rejected") {
    CHECK_THROWS_AS(plane_set(2, 2, 8), ValidationError);
    CHECK_THROWS_AS(plane_set(3, 2, 8), ValidationError);
    CHECK_THROWS_AS(plane_set(0, 2, 8), ValidationError);
    CHECK_THROWS_AS(plane_set(1, 2, 1), ValidationError);
  }
}

TEST_CASE("project_point", "[geometry]") {
  const CameraIntrinsics unit(1, 1, 0, 0, 1, 1);
  CHECK(project_point(unit, Pose::identity(), Vec3(0, 0, 1)) == Vec2(0, 0));
  const CameraIntrinsics k(100, 100, 50, 50, 100, 100);
  CHECK(project_point(k, Pose::identity(), Vec3(1, 0, 2)) == Vec2(100, 50));
  CHECK_THROWS_AS(project_point(k, Pose::identity(), Vec3(0, 0, -1)), GeometryError);
}

TEST_CASE("homography special cases", "[geometry]") {
  const auto k = CameraIntrinsics::centered(120, 64, 48);
  SECTION("identity configuration gives I up to scale") {
    Rng rng(3);
    for (int i = 0; i < 50; ++i) {
      const Vec3 n = Vec3(uniform(rng, -0.5, 0.5), uniform(rng, -0.5, 0.5), 1).normalized();
      const Plane plane(n, uniform(rng, 0.5, 50));
      for (const Homography& h : {homography(plane, k, k, Pose::identity()),
                                  homography_ref_to_tgt(plane, k, k, Pose::identity())}) {
        const Mat3 diff = unit_frobenius(h.matrix()) - unit_frobenius(Mat3::Identity());
        CHECK(diff.cwiseAbs().maxCoeff() < 1e-12);
      }
    }
  }
  SECTION("lateral translation of a fronto-parallel plane is a pixel shift of f*tx/d") {
    const double d = 4.0;
    const double tx = 0.54;
    const Homography h = homography_ref_to_tgt(Plane::fronto_parallel(d), k, k,
                                               Pose::translation(Vec3(tx, 0, 0)));
    const Mat3 m = h.matrix() / h.matrix()(2, 2);
    CHECK(m(0, 2) == Approx(120 * tx / d).epsilon(1e-12));
    CHECK(std::abs(m(1, 2)) < 1e-12);
    CHECK((m.topLeftCorner<2, 2>() - Eigen::Matrix2d::Identity()).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((h.map(Vec2(10, 7)) - Vec2(10 + 120 * tx / d, 7)).norm() < 1e-9);
  }
  SECTION("camera centre on the plane is an explicit error") {
    const Pose onto_plane = Pose::translation(Vec3(0, 0, -2));  // target centre at z = 2
    CHECK_THROWS_AS(homography(Plane::fronto_parallel(2), k, k, onto_plane), GeometryError);
    CHECK_THROWS_AS(homography_ref_to_tgt(Plane::fronto_parallel(2), k, k, onto_plane), GeometryError);
  }
}

TEST_CASE("homography agrees with point projection", "[geometry][property]") {
  Rng rng(2024);
  int checked = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const CameraIntrinsics kr(uniform(rng, 50, 500), uniform(rng, 50, 500), uniform(rng, 20, 60),
                              uniform(rng, 20, 60), 80, 80);
    const CameraIntrinsics kt(uniform(rng, 50, 500), uniform(rng, 50, 500), uniform(rng, 20, 60),
                              uniform(rng, 20, 60), 80, 80);
    const Pose theta = testing::random_pose(rng, 0.3, 1.0);
    const Plane plane(Vec3(uniform(rng, -0.5, 0.5), uniform(rng, -0.5, 0.5), 1).normalized(),
                      uniform(rng, 2, 20));
    const Homography to_tgt = homography_ref_to_tgt(plane, kr, kt, theta);
    const Homography to_ref = homography_tgt_to_ref(plane, kr, kt, theta);
    for (int p = 0; p < 10; ++p) {
      const Vec3 ray = kr.inverse_matrix() * Vec3(uniform(rng, 0, 80), uniform(rng, 0, 80), 1);
      const double s = plane.distance() / plane.normal().dot(ray);
      if (s <= 0) continue;
      const Vec3 x = s * ray;
      if (theta.apply(x).z() <= 1e-3) continue;
      const Vec2 ur = project_point(kr, Pose::identity(), x);
      const Vec2 ut = project_point(kt, theta, x);
      CHECK((to_tgt.map(ur) - ut).norm() < 1e-6);
      CHECK((to_ref.map(ut) - ur).norm() < 1e-6);
      ++checked;
    }
  }
  CHECK(checked > 1000);
}

TEST_CASE("homographies compose through an intermediate camera", "[geometry][property]") {
  Rng rng(77);
  const auto k = CameraIntrinsics::centered(200, 64, 64);
  for (int trial = 0; trial < 100; ++trial) {
    const Plane plane = Plane::fronto_parallel(uniform(rng, 3, 30));
    const Pose ab = testing::random_pose(rng, 0.1, 0.5);
    const Pose bc = testing::random_pose(rng, 0.1, 0.5);
    const Plane in_b = transform_plane(plane, ab);
    const Mat3 chained = homography_ref_to_tgt(in_b, k, k, bc).matrix() *
                         homography_ref_to_tgt(plane, k, k, ab).matrix();
    const Mat3 direct = homography_ref_to_tgt(plane, k, k, compose_pose(bc, ab)).matrix();
    CHECK((unit_frobenius(chained) - unit_frobenius(direct)).cwiseAbs().maxCoeff() < 1e-9);
  }
}

TEST_CASE("geometry json", "[geometry][json]") {
  Rng rng(9);
  const Pose p = testing::random_pose(rng);
  const Pose back = pose_from_json(to_json(p));
  CHECK(back.rotation() == p.rotation());
  CHECK(back.translation() == p.translation());

  const auto flat = nlohmann::json::parse(
      R"({"rotation": [1,0,0, 0,1,0, 0,0,1], "translation": [0.54, 0, 0]})");
  CHECK(pose_from_json(flat).translation().x() == 0.54);

  const CameraIntrinsics k(100, 110, 31.5, 23.5, 64, 48);
  CHECK(intrinsics_from_json(to_json(k)) == k);
  const Plane pl(Vec3(0, 0, 1), 7.5);
  CHECK(plane_from_json(to_json(pl)) == pl);

  CHECK_THROWS_AS(pose_from_json(nlohmann::json::parse(R"({"rotation": [1,2]})")), ValidationError);
  CHECK_THROWS_AS(intrinsics_from_json(nlohmann::json::parse(R"({"fx": 1})")), ValidationError);
}
