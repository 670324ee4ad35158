#include "plred/geom.hpp"

namespace plred {

const char* error_code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::ok: return "ok";
    case ErrorCode::parse_error: return "ParseError";
    case ErrorCode::unknown_chart: return "UnknownChart";
    case ErrorCode::collision: return "Collision";
    case ErrorCode::unsupported_body_count: return "UnsupportedBodyCount";
    case ErrorCode::chart_singular: return "ChartSingular";
    case ErrorCode::node_singular: return "NodeSingular";
    case ErrorCode::triangle_violation: return "TriangleViolation";
    case ErrorCode::action_overflow: return "ActionOverflow";
    case ErrorCode::invalid_actions: return "InvalidActions";
    case ErrorCode::eccentricity_out_of_range: return "EccentricityOutOfRange";
    case ErrorCode::not_elliptic: return "NotElliptic";
    case ErrorCode::rectilinear: return "Rectilinear";
    case ErrorCode::degenerate_node: return "DegenerateNode";
    case ErrorCode::not_coplanar: return "NotCoplanar";
    case ErrorCode::domain_violation: return "DomainViolation";
    case ErrorCode::quadrature_not_converged: return "QuadratureNotConverged";
    case ErrorCode::collision_detected: return "CollisionDetected";
    case ErrorCode::step_rejected: return "StepRejected";
  }
  return "UnknownError";
}

Mat3 rot1(double iota) { return rot1_cs(std::cos(iota), std::sin(iota)); }

Mat3 rot1_cs(double c, double s) {
  Mat3 m;
  m.a = {1, 0, 0,
         0, c, -s,
         0, s, c};
  return m;
}

Mat3 rot3(double h) {
  const double c = std::cos(h), s = std::sin(h);
  Mat3 m;
  m.a = {c, -s, 0,
         s, c, 0,
         0, 0, 1};
  return m;
}

Mat3 frame_rotation(double psi, double iota) { return rot3(psi) * rot1(iota); }

Mat3 axis_tilt(double theta, double ci, double si) {
  return rot3(theta) * rot1_cs(ci, si) * rot3(-theta);
}

double angle_diff(double a, double b) {
  double d = std::fmod(a - b, kTwoPi);
  if (d > M_PI) d -= kTwoPi;
  if (d <= -M_PI) d += kTwoPi;
  return d;
}

double oriented_angle(const Vec3& u, const Vec3& v, const Vec3& w) {
  const double nu = norm(u), nv = norm(v), nw = norm(w);
  if (nu < kEpsNode || nv < kEpsNode)
    throw Error(ErrorCode::degenerate_node, "oriented_angle: vanishing argument");
  if (nw < kEpsNode)
    throw Error(ErrorCode::degenerate_node, "oriented_angle: vanishing orientation axis");
  const Vec3 un = u / nu, vn = v / nv, wn = w / nw;
  if (std::abs(dot(wn, un)) > kTauPerp || std::abs(dot(wn, vn)) > kTauPerp)
    throw Error(ErrorCode::not_coplanar, "oriented_angle: axis not perpendicular to arguments");
  // atan2 of the signed area against the dot product is stable near 0 and pi.
  const double s = dot(wn, cross(un, vn));
  const double c = dot(un, vn);
  return wrap_2pi(std::atan2(s, c));
}

}  // namespace plred
