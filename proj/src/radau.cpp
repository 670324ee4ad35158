#include "plred/radau.hpp"

#include <cmath>

namespace plred {

namespace {

void require_two_planets(int n, const char* who) {
  if (n != 2)
    throw Error(ErrorCode::unsupported_body_count, std::string(who) + " requires two planets");
}

// Rotation taking the state onto the chart manifold: rows are the manifold
// frame (first node, completion, angular-momentum direction).
Mat3 manifold_rotation(const HelioState& hs) {
  Vec3 C{0, 0, 0};
  for (int i = 0; i < hs.n(); ++i) C += cross(hs.x[i], hs.y[i]);
  const double G = norm(C);
  if (G < kEpsNode) throw ChartSingular("node reduction: vanishing total angular momentum");
  const Vec3 C1 = cross(hs.x[0], hs.y[0]);
  const Vec3 nu1 = cross(C, C1);
  if (norm(nu1) < kEpsNode)
    throw ChartSingular("node reduction: planar configuration (first node vanishes)");
  const Vec3 u3 = C / G;
  const Vec3 u1 = normalized(nu1);
  const Vec3 u2 = cross(u3, u1);
  Mat3 R;
  for (int c = 0; c < 3; ++c) {
    R(0, c) = u1[c];
    R(1, c) = u2[c];
    R(2, c) = u3[c];
  }
  return R;
}

}  // namespace

void radau_inclinations(double Gamma1, double Gamma2, double G, double& i1, double& i2) {
  if (Gamma1 <= 0 || Gamma2 <= 0 || G <= 0)
    throw Error(ErrorCode::invalid_actions, "radau_inclinations: actions must be positive");
  const double c1 = (Gamma1 * Gamma1 + G * G - Gamma2 * Gamma2) / (2.0 * Gamma1 * G);
  const double c2 = (Gamma2 * Gamma2 + G * G - Gamma1 * Gamma1) / (2.0 * Gamma2 * G);
  if (c1 < -1.0 - 1e-12 || c1 > 1.0 + 1e-12 || c2 < -1.0 - 1e-12 || c2 > 1.0 + 1e-12)
    throw TriangleViolation("radau_inclinations: |Gamma1 - Gamma2| <= G <= Gamma1 + Gamma2 violated");
  i1 = std::acos(std::min(1.0, std::max(-1.0, c1)));
  i2 = std::acos(std::min(1.0, std::max(-1.0, c2)));
}

double radau_mutual_cos(double Gamma1, double Gamma2, double G) {
  return (Gamma1 * Gamma1 + Gamma2 * Gamma2 - G * G) / (2.0 * Gamma1 * Gamma2);
}

HelioState radau_inverse(const RadauCoords& c, const MassParams& mp) {
  require_two_planets(mp.n(), "radau_inverse");
  double i1, i2;
  radau_inclinations(c.Gamma[0], c.Gamma[1], c.G, i1, i2);
  HelioState hs;
  hs.y.resize(2);
  hs.x.resize(2);
  const double sgn[2] = {1.0, -1.0};
  const double incl[2] = {i1, i2};
  for (int i = 0; i < 2; ++i) {
    std::array<double, 2> xbar, ybar;
    planar_delaunay(c.Lambda[i], c.Gamma[i], c.ell[i], c.g[i], mp.mred(i), mp.mgrav(i), xbar,
                    ybar);
    const Mat3 R = rot1(sgn[i] * incl[i]);
    hs.x[i] = R * Vec3{xbar[0], xbar[1], 0.0};
    hs.y[i] = R * Vec3{ybar[0], ybar[1], 0.0};
  }
  return hs;
}

RadauCoords radau_forward(const HelioState& hs, const MassParams& mp) {
  require_two_planets(hs.n(), "radau_forward");
  const Mat3 R = manifold_rotation(hs);
  const HelioState rs = rotate_state(hs, R);

  RadauCoords c;
  Vec3 C{0, 0, 0};
  for (int i = 0; i < 2; ++i) C += cross(rs.x[i], rs.y[i]);
  c.G = norm(C);
  const double Gamma1 = norm(cross(rs.x[0], rs.y[0]));
  const double Gamma2 = norm(cross(rs.x[1], rs.y[1]));
  double i1, i2;
  radau_inclinations(Gamma1, Gamma2, c.G, i1, i2);

  const double sgn[2] = {1.0, -1.0};
  const double incl[2] = {i1, i2};
  for (int i = 0; i < 2; ++i) {
    const Vec3 xb = rot1(-sgn[i] * incl[i]) * rs.x[i];
    const Vec3 yb = rot1(-sgn[i] * incl[i]) * rs.y[i];
    if (std::abs(xb.x3) > 1e-8 * norm(xb))
      throw ChartSingular("radau_forward: state not reducible to the node manifold");
    const PlanarElements pe =
        planar_delaunay_forward({yb.x1, yb.x2}, {xb.x1, xb.x2}, mp.mred(i), mp.mgrav(i));
    c.Lambda[i] = pe.Lambda;
    c.Gamma[i] = pe.Gamma;
    c.ell[i] = pe.ell;
    c.g[i] = pe.g;
  }
  return c;
}

RadauRegCoords radau_regularize(const RadauCoords& c) {
  RadauRegCoords r;
  r.G = c.G;
  for (int i = 0; i < 2; ++i) {
    if (c.Gamma[i] > c.Lambda[i] + 1e-12)
      throw ActionOverflow("radau_regularize: Gamma exceeds Lambda");
    r.Lambda[i] = c.Lambda[i];
    r.lamhat[i] = wrap_2pi(c.ell[i] + c.g[i]);
    const double re = std::sqrt(std::max(0.0, 2.0 * (c.Lambda[i] - c.Gamma[i])));
    r.hhat[i] = re * std::cos(c.g[i]);
    r.xhat[i] = -re * std::sin(c.g[i]);
  }
  return r;
}

RadauCoords radau_unregularize(const RadauRegCoords& c) {
  RadauCoords out;
  out.G = c.G;
  for (int i = 0; i < 2; ++i) {
    const double rho = 0.5 * (c.hhat[i] * c.hhat[i] + c.xhat[i] * c.xhat[i]);
    if (rho >= c.Lambda[i])
      throw ActionOverflow("radau_unregularize: hhat^2 + xhat^2 >= 2 Lambda");
    out.Lambda[i] = c.Lambda[i];
    out.Gamma[i] = c.Lambda[i] - rho;
    out.g[i] = rho > 0 ? wrap_2pi(std::atan2(-c.xhat[i], c.hhat[i])) : 0.0;
    out.ell[i] = wrap_2pi(c.lamhat[i] - out.g[i]);
  }
  return out;
}

HelioState radau_reg_inverse(const RadauRegCoords& c, const MassParams& mp) {
  require_two_planets(mp.n(), "radau_reg_inverse");
  double Gamma[2];
  for (int i = 0; i < 2; ++i) {
    const double rho = 0.5 * (c.hhat[i] * c.hhat[i] + c.xhat[i] * c.xhat[i]);
    if (rho >= c.Lambda[i])
      throw ActionOverflow("radau_reg_inverse: hhat^2 + xhat^2 >= 2 Lambda");
    Gamma[i] = c.Lambda[i] - rho;
  }
  double i1, i2;
  radau_inclinations(Gamma[0], Gamma[1], c.G, i1, i2);
  const double sgn[2] = {1.0, -1.0};
  const double incl[2] = {i1, i2};
  HelioState hs;
  hs.y.resize(2);
  hs.x.resize(2);
  for (int i = 0; i < 2; ++i) {
    std::array<double, 2> xbar, ybar;
    planar_poincare(c.Lambda[i], c.lamhat[i], c.hhat[i], c.xhat[i], mp.mred(i), mp.mgrav(i),
                    xbar, ybar);
    const Mat3 R = rot1(sgn[i] * incl[i]);
    hs.x[i] = R * Vec3{xbar[0], xbar[1], 0.0};
    hs.y[i] = R * Vec3{ybar[0], ybar[1], 0.0};
  }
  return hs;
}

RadauRegCoords radau_reg_forward(const HelioState& hs, const MassParams& mp) {
  return radau_regularize(radau_forward(hs, mp));
}

RadauRegCoords reflect_radau_reg(const RadauRegCoords& c, int kind) {
  RadauRegCoords out = c;
  for (int i = 0; i < 2; ++i) {
    if (kind == 1) {
      out.lamhat[i] = wrap_2pi(-c.lamhat[i]);
      out.hhat[i] = c.hhat[i];
      out.xhat[i] = -c.xhat[i];
    } else if (kind == 2) {
      out.lamhat[i] = wrap_2pi(M_PI - c.lamhat[i]);
      out.hhat[i] = -c.hhat[i];
      out.xhat[i] = c.xhat[i];
    } else {
      throw Error(ErrorCode::domain_violation, "reflect_radau_reg: kind must be 1 or 2");
    }
  }
  return out;
}

void radau_reflection_signs(int kind, Vec3& r_signs, Vec3& s_signs) {
  if (kind == 1) {
    r_signs = {-1, 1, 1};
    s_signs = {1, -1, -1};
  } else if (kind == 2) {
    r_signs = {1, -1, -1};
    s_signs = {-1, 1, 1};
  } else {
    throw Error(ErrorCode::domain_violation, "radau_reflection_signs: kind must be 1 or 2");
  }
}

}  // namespace plred
