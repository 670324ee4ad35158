#include <doctest.h>

#include "plred/charts.hpp"
#include "plred/geom.hpp"

using namespace plred;

namespace {

double mat_dev(const Mat3& A, const Mat3& B) {
  double d = 0;
  for (int i = 0; i < 9; ++i) d = std::max(d, std::abs(A.a[i] - B.a[i]));
  return d;
}

}  // namespace

TEST_CASE("elementary rotations at zero are the identity") {
  CHECK(mat_dev(rot1(0.0), Mat3::identity()) == 0.0);
  CHECK(mat_dev(rot3(0.0), Mat3::identity()) == 0.0);
}

TEST_CASE("quarter turns move the axes as expected") {
  const Vec3 a = rot1(M_PI / 2) * Vec3{0, 1, 0};
  CHECK(norm(a - Vec3{0, 0, 1}) < 1e-15);
  const Vec3 b = rot3(M_PI / 2) * Vec3{1, 0, 0};
  CHECK(norm(b - Vec3{0, 1, 0}) < 1e-15);
}

TEST_CASE("rot1 is orthogonal") {
  const Mat3 R = rot1(0.7);
  CHECK(mat_dev(R.transpose() * R, Mat3::identity()) <= 1e-15);
}

TEST_CASE("rot3 composes additively") {
  CHECK(mat_dev(rot3(0.3) * rot3(1.1), rot3(1.4)) <= 1e-15);
}

TEST_CASE("rotations are orthogonal with unit determinant") {
  Rng rng(11);
  for (int k = 0; k < 200; ++k) {
    const double ang = rng.uniform(-10.0, 10.0);
    for (const Mat3& R : {rot1(ang), rot3(ang)}) {
      CHECK(mat_dev(R.transpose() * R, Mat3::identity()) <= 1e-14);
      const double det = R(0, 0) * (R(1, 1) * R(2, 2) - R(1, 2) * R(2, 1)) -
                         R(0, 1) * (R(1, 0) * R(2, 2) - R(1, 2) * R(2, 0)) +
                         R(0, 2) * (R(1, 0) * R(2, 1) - R(1, 1) * R(2, 0));
      CHECK(std::abs(det - 1.0) <= 1e-14);
    }
  }
}

TEST_CASE("cross products are perpendicular to their factors") {
  Rng rng(12);
  for (int k = 0; k < 100; ++k) {
    const Vec3 u{rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)};
    const Vec3 v{rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)};
    const Vec3 w = cross(u, v);
    CHECK(std::abs(dot(w, u)) <= 1e-14);
    CHECK(std::abs(dot(w, v)) <= 1e-14);
  }
}

TEST_CASE("oriented_angle on the reference triple") {
  CHECK(oriented_angle(k1(), k1(), k3()) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(oriented_angle(k1(), k2(), k3()) == doctest::Approx(M_PI / 2).epsilon(1e-15));
  CHECK(oriented_angle(k1(), -k1(), k3()) == doctest::Approx(M_PI).epsilon(1e-15));
}

TEST_CASE("oriented_angle antisymmetry and scale invariance") {
  Rng rng(13);
  for (int k = 0; k < 100; ++k) {
    const double a = rng.uniform(0.1, kTwoPi - 0.1);
    const double b = rng.uniform(0.1, kTwoPi - 0.1);
    const Vec3 u = rot3(a) * k1();
    const Vec3 v = rot3(b) * k1();
    const double fwd = oriented_angle(u, v, k3());
    const double bwd = oriented_angle(v, u, k3());
    CHECK(std::abs(angle_diff(fwd + bwd, 0.0)) <= 1e-12);
    const double s1 = rng.uniform(0.5, 3.0), s2 = rng.uniform(0.5, 3.0), s3 = rng.uniform(0.5, 3.0);
    CHECK(oriented_angle(s1 * u, s2 * v, s3 * k3()) == doctest::Approx(fwd).epsilon(1e-12));
  }
}

TEST_CASE("oriented_angle rejects degenerate input") {
  CHECK_THROWS_AS(oriented_angle(Vec3{0, 0, 0}, k1(), k3()), Error);
  CHECK_THROWS_AS(oriented_angle(k1(), k2(), k1() + 0.1 * k3()), Error);
}

TEST_CASE("axis_tilt tends to the identity with its inclination") {
  const Mat3 M = axis_tilt(1.234, 1.0, 0.0);
  CHECK(mat_dev(M, Mat3::identity()) <= 1e-15);
  // And matches the conjugated form for generic arguments.
  const double th = 0.8, ci = std::cos(0.5), si = std::sin(0.5);
  CHECK(mat_dev(axis_tilt(th, ci, si), rot3(th) * rot1(0.5) * rot3(-th)) <= 1e-15);
}
