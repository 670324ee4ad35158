#pragma once

#include <array>

#include "plred/geom.hpp"

namespace plred {

// Solve E - e sin E = ell for the eccentric anomaly, 0 <= e < 1.
// Newton iteration seeded near the root, bisection fallback; the residual is
// driven to machine precision so that finite differences through the solver
// stay quiet.
double solve_kepler(double ell, double e);

struct OrbitalElements {
  double a = 0.0;    // semi-major axis
  double e = 0.0;    // eccentricity
  Vec3 P_dir;        // unit perihelion direction (zero if e below threshold)
  Vec3 C_vec;        // orbital angular momentum x cross y
  double ell = 0.0;  // mean anomaly in [0, 2pi)
};

// Instantaneous ellipse of the two-body Hamiltonian |y|^2/2m - mM/|x|.
OrbitalElements elements_from_state(const Vec3& y, const Vec3& x, double mred, double mgrav);

// --- Planar maps -----------------------------------------------------------

// Ellipse point and momentum in the perihelion frame (perihelion on the first
// axis, counterclockwise motion).
void planar_ellipse(double Lambda, double Gamma, double ell, double mred, double mgrav,
                    std::array<double, 2>& xf, std::array<double, 2>& yf);

// Planar Delaunay map: perihelion rotated by g from the first axis.
void planar_delaunay(double Lambda, double Gamma, double ell, double g, double mred,
                     double mgrav, std::array<double, 2>& xbar, std::array<double, 2>& ybar);

// Planar Poincare map, regular at eta = xi = 0.
void planar_poincare(double Lambda, double lambda, double eta, double xi, double mred,
                     double mgrav, std::array<double, 2>& xbar, std::array<double, 2>& ybar);

// Planar Delaunay chart of a 2D state (counterclockwise orbits only).
struct PlanarElements {
  double Lambda, Gamma, ell, g;
};
PlanarElements planar_delaunay_forward(const std::array<double, 2>& ybar,
                                       const std::array<double, 2>& xbar, double mred,
                                       double mgrav);

// --- Spatial Delaunay ------------------------------------------------------

struct DelaunayCoords {
  double Lambda, Gamma, H;  // actions
  double ell, g, h;         // mean anomaly, argument of perihelion, node longitude
};

DelaunayCoords delaunay_forward(const Vec3& y, const Vec3& x, double mred, double mgrav);
void delaunay_inverse(const DelaunayCoords& d, double mred, double mgrav, Vec3& y, Vec3& x);

// --- Poincare --------------------------------------------------------------

struct PoincareCoords {
  double Lambda, lambda;  // action, mean longitude
  double eta, xi;         // eccentricity pair
  double p, q;            // inclination pair
};

PoincareCoords poincare_forward(const DelaunayCoords& d);
DelaunayCoords poincare_inverse(const PoincareCoords& pc);
// Regular at eta = xi = 0 and p = q = 0.
void poincare_to_cartesian(const PoincareCoords& pc, double mred, double mgrav, Vec3& y,
                           Vec3& x);
PoincareCoords poincare_from_cartesian(const Vec3& y, const Vec3& x, double mred, double mgrav);

// --- Kepler flow -----------------------------------------------------------

inline double kepler_energy(double Lambda, double mred, double mgrav) {
  if (Lambda <= 0) throw Error(ErrorCode::invalid_actions, "kepler_energy: Lambda must be positive");
  const double m3M2 = mred * mred * mred * mgrav * mgrav;
  return -m3M2 / (2.0 * Lambda * Lambda);
}

inline double mean_motion(double Lambda, double mred, double mgrav) {
  return mred * mred * mred * mgrav * mgrav / (Lambda * Lambda * Lambda);
}

DelaunayCoords kepler_flow(const DelaunayCoords& d, double t, double mred, double mgrav);

}  // namespace plred
