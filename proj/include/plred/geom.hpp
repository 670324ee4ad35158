#pragma once

#include <array>
#include <cmath>

#include "plred/errors.hpp"

namespace plred {

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

// Tolerances separating genuine singular manifolds from round-off.
inline constexpr double kEpsNode = 1e-12;   // vanishing-node threshold, problem units
inline constexpr double kTauPerp = 1e-8;    // relative perpendicularity tolerance
inline constexpr double kEpsColl = 1e-10;   // collision threshold, problem units
inline constexpr double kEpsEcc = 1e-10;    // zero-eccentricity threshold

struct Vec3 {
  double x1 = 0.0, x2 = 0.0, x3 = 0.0;

  double& operator[](int i) { return i == 0 ? x1 : (i == 1 ? x2 : x3); }
  double operator[](int i) const { return i == 0 ? x1 : (i == 1 ? x2 : x3); }

  Vec3 operator+(const Vec3& o) const { return {x1 + o.x1, x2 + o.x2, x3 + o.x3}; }
  Vec3 operator-(const Vec3& o) const { return {x1 - o.x1, x2 - o.x2, x3 - o.x3}; }
  Vec3 operator-() const { return {-x1, -x2, -x3}; }
  Vec3 operator*(double s) const { return {s * x1, s * x2, s * x3}; }
  Vec3 operator/(double s) const { return {x1 / s, x2 / s, x3 / s}; }
  Vec3& operator+=(const Vec3& o) { x1 += o.x1; x2 += o.x2; x3 += o.x3; return *this; }
  Vec3& operator-=(const Vec3& o) { x1 -= o.x1; x2 -= o.x2; x3 -= o.x3; return *this; }
};

inline Vec3 operator*(double s, const Vec3& v) { return v * s; }
inline double dot(const Vec3& a, const Vec3& b) { return a.x1 * b.x1 + a.x2 * b.x2 + a.x3 * b.x3; }
inline Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.x2 * b.x3 - a.x3 * b.x2, a.x3 * b.x1 - a.x1 * b.x3, a.x1 * b.x2 - a.x2 * b.x1};
}
inline double norm(const Vec3& v) { return std::sqrt(dot(v, v)); }
inline Vec3 normalized(const Vec3& v) { return v / norm(v); }

inline Vec3 k1() { return {1, 0, 0}; }
inline Vec3 k2() { return {0, 1, 0}; }
inline Vec3 k3() { return {0, 0, 1}; }

// Row-major 3x3 matrix.
struct Mat3 {
  std::array<double, 9> a{};

  double& operator()(int r, int c) { return a[3 * r + c]; }
  double operator()(int r, int c) const { return a[3 * r + c]; }

  static Mat3 identity() {
    Mat3 m;
    m.a = {1, 0, 0, 0, 1, 0, 0, 0, 1};
    return m;
  }
  Mat3 transpose() const {
    Mat3 m;
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) m(r, c) = (*this)(c, r);
    return m;
  }
};

inline Vec3 operator*(const Mat3& m, const Vec3& v) {
  return {m(0, 0) * v.x1 + m(0, 1) * v.x2 + m(0, 2) * v.x3,
          m(1, 0) * v.x1 + m(1, 1) * v.x2 + m(1, 2) * v.x3,
          m(2, 0) * v.x1 + m(2, 1) * v.x2 + m(2, 2) * v.x3};
}

inline Mat3 operator*(const Mat3& A, const Mat3& B) {
  Mat3 m;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c)
      m(r, c) = A(r, 0) * B(0, c) + A(r, 1) * B(1, c) + A(r, 2) * B(2, c);
  return m;
}

// Rotation about the x1-axis by the (convex) inclination iota.
Mat3 rot1(double iota);
// Rotation about the x3-axis.
Mat3 rot3(double h);
// rot3(psi) * rot1(iota): one link of a frame chain.
Mat3 frame_rotation(double psi, double iota);

// Same rotations built from (cos, sin) pairs; avoids acos round-trips when the
// inclination is only known through its cosine.
Mat3 rot1_cs(double c, double s);
// rot3(theta) * rot1_cs(ci, si) * rot3(-theta): rotation by the inclination
// about the in-plane axis at azimuth theta.  Regular as the inclination
// vanishes, whatever theta does.
Mat3 axis_tilt(double theta, double ci, double si);

inline double wrap_2pi(double a) {
  a = std::fmod(a, kTwoPi);
  return a < 0 ? a + kTwoPi : a;
}

// Difference of two angles reduced to (-pi, pi].
double angle_diff(double a, double b);

// Counterclockwise angle from u to v in the plane oriented by w, in [0, 2pi).
// u, v need not be normalized; w must be perpendicular to both.
double oriented_angle(const Vec3& u, const Vec3& v, const Vec3& w);

}  // namespace plred
