#include "plred/twobody.hpp"

#include <cmath>

namespace plred {

double solve_kepler(double ell, double e) {
  if (e < 0.0 || e >= 1.0)
    throw Error(ErrorCode::eccentricity_out_of_range, "solve_kepler: need 0 <= e < 1");
  const double ell0 = ell;
  ell = wrap_2pi(ell);
  if (e == 0.0) return ell0;

  const double sign = std::sin(ell) >= 0.0 ? 1.0 : -1.0;
  double E = ell + 0.85 * e * sign;
  bool converged = false;
  for (int it = 0; it < 50; ++it) {
    const double f = E - e * std::sin(E) - ell;
    const double fp = 1.0 - e * std::cos(E);
    const double dE = f / fp;
    E -= dE;
    if (std::abs(dE) < 1e-15) {
      converged = true;
      break;
    }
  }
  if (!converged || std::abs(E - e * std::sin(E) - ell) > 1e-12) {
    // Bisection fallback on [ell - e, ell + e], where the root always lies.
    double lo = ell - e, hi = ell + e;
    for (int it = 0; it < 200; ++it) {
      E = 0.5 * (lo + hi);
      if (E - e * std::sin(E) - ell > 0)
        hi = E;
      else
        lo = E;
    }
  }
  // Polish so the residual is at round-off whatever the path taken.
  for (int it = 0; it < 3; ++it)
    E -= (E - e * std::sin(E) - ell) / (1.0 - e * std::cos(E));
  return E + (ell0 - ell);
}

OrbitalElements elements_from_state(const Vec3& y, const Vec3& x, double mred, double mgrav) {
  OrbitalElements el;
  const double r = norm(x);
  if (r < kEpsColl) throw Collision("elements_from_state: body at the center");
  const double energy = dot(y, y) / (2.0 * mred) - mred * mgrav / r;
  if (energy >= 0.0)
    throw Error(ErrorCode::not_elliptic, "elements_from_state: nonnegative two-body energy");
  el.a = -mred * mgrav / (2.0 * energy);
  el.C_vec = cross(x, y);
  const double Gamma = norm(el.C_vec);
  if (Gamma < kEpsNode)
    throw Error(ErrorCode::rectilinear, "elements_from_state: vanishing angular momentum");

  const Vec3 lap = cross(y, el.C_vec) / (mred * mred * mgrav) - x / r;
  el.e = norm(lap);
  el.P_dir = el.e > kEpsEcc ? lap / el.e : Vec3{0, 0, 0};

  // Mean anomaly through the eccentric anomaly; both components vanish as the
  // orbit circularizes, where ell loses meaning.
  const double sqrtMa = std::sqrt(mgrav * el.a);
  const double ecosE = 1.0 - r / el.a;
  const double esinE = dot(x, y) / (mred * sqrtMa);
  if (el.e > kEpsEcc) {
    const double E = std::atan2(esinE, ecosE);
    el.ell = wrap_2pi(E - esinE);
  } else {
    el.ell = 0.0;
  }
  return el;
}

void planar_ellipse(double Lambda, double Gamma, double ell, double mred, double mgrav,
                    std::array<double, 2>& xf, std::array<double, 2>& yf) {
  if (Lambda <= 0 || Gamma <= 0 || Gamma > Lambda * (1.0 + 1e-12))
    throw Error(ErrorCode::invalid_actions, "planar_ellipse: need 0 < Gamma <= Lambda");
  const double a = (Lambda / mred) * (Lambda / mred) / mgrav;
  const double ratio = std::min(1.0, Gamma / Lambda);
  const double e = std::sqrt(std::max(0.0, (1.0 - ratio) * (1.0 + ratio)));
  const double E = solve_kepler(ell, e);
  const double cE = std::cos(E), sE = std::sin(E);
  const double se = std::sqrt(std::max(0.0, 1.0 - e * e));
  xf = {a * (cE - e), a * se * sE};
  const double nmot = mean_motion(Lambda, mred, mgrav);
  const double fac = mred * nmot * a / (1.0 - e * cE);
  yf = {-fac * sE, fac * se * cE};
}

namespace {
inline void rot2(double ang, std::array<double, 2>& v) {
  const double c = std::cos(ang), s = std::sin(ang);
  v = {c * v[0] - s * v[1], s * v[0] + c * v[1]};
}
}  // namespace

void planar_delaunay(double Lambda, double Gamma, double ell, double g, double mred,
                     double mgrav, std::array<double, 2>& xbar, std::array<double, 2>& ybar) {
  planar_ellipse(Lambda, Gamma, ell, mred, mgrav, xbar, ybar);
  rot2(g, xbar);
  rot2(g, ybar);
}

void planar_poincare(double Lambda, double lambda, double eta, double xi, double mred,
                     double mgrav, std::array<double, 2>& xbar, std::array<double, 2>& ybar) {
  const double rho = 0.5 * (eta * eta + xi * xi);
  const double Gamma = Lambda - rho;
  if (Gamma <= 0) throw ActionOverflow("planar_poincare: eta^2 + xi^2 exceeds 2 Lambda");
  const double sigma = rho > 0 ? std::atan2(-xi, eta) : 0.0;
  planar_delaunay(Lambda, Gamma, lambda - sigma, sigma, mred, mgrav, xbar, ybar);
}

PlanarElements planar_delaunay_forward(const std::array<double, 2>& ybar,
                                       const std::array<double, 2>& xbar, double mred,
                                       double mgrav) {
  const double r = std::hypot(xbar[0], xbar[1]);
  if (r < kEpsColl) throw Collision("planar_delaunay_forward: body at the center");
  const double Cz = xbar[0] * ybar[1] - xbar[1] * ybar[0];
  if (Cz < kEpsNode)
    throw ChartSingular("planar_delaunay_forward: orbit not counterclockwise in its plane");
  const double energy = (ybar[0] * ybar[0] + ybar[1] * ybar[1]) / (2.0 * mred) - mred * mgrav / r;
  if (energy >= 0.0)
    throw Error(ErrorCode::not_elliptic, "planar_delaunay_forward: nonnegative energy");
  const double a = -mred * mgrav / (2.0 * energy);

  PlanarElements pe;
  pe.Lambda = mred * std::sqrt(mgrav * a);
  pe.Gamma = Cz;
  const double c = mred * mred * mgrav;
  const double lx = ybar[1] * Cz / c - xbar[0] / r;
  const double ly = -ybar[0] * Cz / c - xbar[1] / r;
  const double e = std::hypot(lx, ly);
  if (e < kEpsEcc) throw ChartSingular("planar_delaunay_forward: zero eccentricity");
  pe.g = wrap_2pi(std::atan2(ly, lx));
  const double ecosE = 1.0 - r / a;
  const double esinE = (xbar[0] * ybar[0] + xbar[1] * ybar[1]) / (mred * std::sqrt(mgrav * a));
  pe.ell = wrap_2pi(std::atan2(esinE, ecosE) - esinE);
  return pe;
}

DelaunayCoords delaunay_forward(const Vec3& y, const Vec3& x, double mred, double mgrav) {
  const OrbitalElements el = elements_from_state(y, x, mred, mgrav);
  if (el.e < kEpsEcc) throw ChartSingular("delaunay_forward: zero eccentricity");
  const Vec3 node = cross(k3(), el.C_vec);
  if (norm(node) < kEpsNode)
    throw ChartSingular("delaunay_forward: orbital angular momentum parallel to k3");
  DelaunayCoords d;
  d.Lambda = mred * std::sqrt(mgrav * el.a);
  d.Gamma = norm(el.C_vec);
  d.H = el.C_vec.x3;
  d.ell = el.ell;
  d.h = oriented_angle(k1(), node, k3());
  d.g = oriented_angle(node, el.P_dir, el.C_vec);
  return d;
}

void delaunay_inverse(const DelaunayCoords& d, double mred, double mgrav, Vec3& y, Vec3& x) {
  if (!(d.Lambda >= d.Gamma - 1e-12 * std::abs(d.Lambda)) || !(d.Gamma >= std::abs(d.H)) ||
      !(d.Gamma > 0))
    throw Error(ErrorCode::invalid_actions, "delaunay_inverse: need Lambda >= Gamma >= |H| > 0");
  std::array<double, 2> xbar, ybar;
  planar_delaunay(d.Lambda, std::min(d.Gamma, d.Lambda), d.ell, d.g, mred, mgrav, xbar, ybar);
  const double ci = d.H / d.Gamma;
  const double si = std::sqrt(std::max(0.0, 1.0 - ci * ci));
  const Mat3 R = rot3(d.h) * rot1_cs(ci, si);
  x = R * Vec3{xbar[0], xbar[1], 0.0};
  y = R * Vec3{ybar[0], ybar[1], 0.0};
}

PoincareCoords poincare_forward(const DelaunayCoords& d) {
  PoincareCoords pc;
  pc.Lambda = d.Lambda;
  pc.lambda = wrap_2pi(d.ell + d.g + d.h);
  const double re = std::sqrt(std::max(0.0, 2.0 * (d.Lambda - d.Gamma)));
  pc.eta = re * std::cos(d.g + d.h);
  pc.xi = -re * std::sin(d.g + d.h);
  const double ri = std::sqrt(std::max(0.0, 2.0 * (d.Gamma - d.H)));
  pc.p = ri * std::cos(d.h);
  pc.q = -ri * std::sin(d.h);
  return pc;
}

DelaunayCoords poincare_inverse(const PoincareCoords& pc) {
  DelaunayCoords d;
  d.Lambda = pc.Lambda;
  const double re2 = 0.5 * (pc.eta * pc.eta + pc.xi * pc.xi);
  if (re2 >= pc.Lambda) throw ActionOverflow("poincare_inverse: eta^2 + xi^2 >= 2 Lambda");
  d.Gamma = pc.Lambda - re2;
  const double ri2 = 0.5 * (pc.p * pc.p + pc.q * pc.q);
  if (ri2 >= d.Gamma) throw ActionOverflow("poincare_inverse: p^2 + q^2 >= 2 Gamma");
  d.H = d.Gamma - ri2;
  d.h = wrap_2pi(std::atan2(-pc.q, pc.p));
  const double gh = std::atan2(-pc.xi, pc.eta);
  d.g = wrap_2pi(gh - d.h);
  d.ell = wrap_2pi(pc.lambda - gh);
  return d;
}

void poincare_to_cartesian(const PoincareCoords& pc, double mred, double mgrav, Vec3& y,
                           Vec3& x) {
  const double re2 = 0.5 * (pc.eta * pc.eta + pc.xi * pc.xi);
  if (re2 >= pc.Lambda) throw ActionOverflow("poincare_to_cartesian: eta^2 + xi^2 >= 2 Lambda");
  const double Gamma = pc.Lambda - re2;
  const double rho = 0.5 * (pc.p * pc.p + pc.q * pc.q);
  if (rho >= Gamma) throw ActionOverflow("poincare_to_cartesian: p^2 + q^2 >= 2 Gamma");
  std::array<double, 2> xbar, ybar;
  planar_poincare(pc.Lambda, pc.lambda, pc.eta, pc.xi, mred, mgrav, xbar, ybar);
  // Tilt by the inclination about the node axis; regular at p = q = 0.
  const double delta = rho > 0 ? std::atan2(-pc.q, pc.p) : 0.0;
  const double ci = (Gamma - rho) / Gamma;
  const double si = std::sqrt(std::max(0.0, rho * (2.0 * Gamma - rho))) / Gamma;
  const Mat3 R = axis_tilt(delta, ci, si);
  x = R * Vec3{xbar[0], xbar[1], 0.0};
  y = R * Vec3{ybar[0], ybar[1], 0.0};
}

PoincareCoords poincare_from_cartesian(const Vec3& y, const Vec3& x, double mred,
                                       double mgrav) {
  const OrbitalElements el = elements_from_state(y, x, mred, mgrav);
  const double Gamma = norm(el.C_vec);
  const double H = el.C_vec.x3;
  PoincareCoords pc;
  pc.Lambda = mred * std::sqrt(mgrav * el.a);

  const Vec3 node = cross(k3(), el.C_vec);
  const double ri = std::sqrt(std::max(0.0, 2.0 * (Gamma - H)));
  double h = 0.0;
  if (norm(node) > kEpsNode) h = oriented_angle(k1(), node, k3());
  pc.p = ri * std::cos(h);
  pc.q = -ri * std::sin(h);

  const double re = std::sqrt(std::max(0.0, 2.0 * (pc.Lambda - Gamma)));
  double gh = 0.0;  // longitude of perihelion through the node chain
  if (el.e > kEpsEcc) {
    const Vec3 nref = norm(node) > kEpsNode ? node : k1();
    gh = h + oriented_angle(nref, el.P_dir, el.C_vec);
    pc.lambda = wrap_2pi(el.ell + gh);
  } else {
    // Circular orbit: the mean longitude survives as the in-plane polar angle
    // of the body measured through the node.
    const Vec3 nref = norm(node) > kEpsNode ? node : k1();
    pc.lambda = wrap_2pi(h + oriented_angle(nref, x, el.C_vec));
  }
  pc.eta = re * std::cos(gh);
  pc.xi = -re * std::sin(gh);
  return pc;
}

DelaunayCoords kepler_flow(const DelaunayCoords& d, double t, double mred, double mgrav) {
  DelaunayCoords out = d;
  out.ell = wrap_2pi(d.ell + mean_motion(d.Lambda, mred, mgrav) * t);
  return out;
}

}  // namespace plred
