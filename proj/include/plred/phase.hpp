#pragma once

#include <vector>

#include "plred/geom.hpp"

namespace plred {

// Masses of the (1+n)-body problem: a sun of mass m0 and planets of mass
// mu*m[i].  The gravitational constant is absorbed into the masses.
struct MassParams {
  double m0 = 1.0;
  double mu = 0.0;
  std::vector<double> m;

  int n() const { return static_cast<int>(m.size()); }

  // Reduced and attracting masses of the heliocentric two-body terms.
  double mred(int i) const { return m0 * m[i] / (m0 + mu * m[i]); }
  double mgrav(int i) const { return m0 + mu * m[i]; }

  // Jacobi counterparts, three-body case only (i = 0 or 1).
  double jac_mred(int i) const;
  double jac_mgrav(int i) const;
};

// Inertial-frame momenta and positions of all 1+n bodies.
struct FullState {
  std::vector<Vec3> p;  // p[0] is the sun
  std::vector<Vec3> q;
  int n() const { return static_cast<int>(p.size()) - 1; }
};

// Reduced state after a linear-momentum reduction: n momentum/position pairs.
// Used both for heliocentric variables and (n = 2) for Jacobi variables.
struct HelioState {
  std::vector<Vec3> y;
  std::vector<Vec3> x;
  int n() const { return static_cast<int>(y.size()); }
};

struct Integrals {
  Vec3 P;     // total linear momentum
  Vec3 C;     // total angular momentum
  double G;   // |C|
  double C3;  // C . k3
  double E;   // energy
};

double hamiltonian_full(const FullState& s, const MassParams& mp);

HelioState to_heliocentric(const FullState& s, const MassParams& mp);
// Restriction with the sun at the origin and vanishing total momentum.
FullState from_heliocentric(const HelioState& hs, const MassParams& mp);

double hamiltonian_hel(const HelioState& hs, const MassParams& mp);
// The two summands of hamiltonian_hel: the uncoupled two-body part and the
// order-mu perturbing function f_hel (without the mu factor).
double hel_kepler_part(const HelioState& hs, const MassParams& mp);
double hel_perturbation(const HelioState& hs, const MassParams& mp);

// Jacobi variables, three-body case.  The returned HelioState holds the tilde
// momenta/positions.
HelioState to_jacobi(const FullState& s, const MassParams& mp);
FullState from_jacobi(const HelioState& js, const MassParams& mp);

double hamiltonian_jac(const HelioState& js, const MassParams& mp);
double hamiltonian_jac_trunc(const HelioState& js, const MassParams& mp);
double jac_kepler_part(const HelioState& js, const MassParams& mp);
// (H_Jac - Kepler part) / mu, in a form that stays finite as mu -> 0.
double jac_perturbation(const HelioState& js, const MassParams& mp);

// Linear change from Jacobi to heliocentric variables; identity at mu = 0.
HelioState phi_hel_jac(const HelioState& js, const MassParams& mp);

Integrals integrals(const FullState& s, const MassParams& mp);
Integrals integrals(const HelioState& hs, const MassParams& mp);

// State transformations used by the symmetry checks: synchronous rotation of
// every momentum/position pair, and componentwise reflections.
HelioState rotate_state(const HelioState& hs, const Mat3& R);
HelioState reflect_state(const HelioState& hs, const Vec3& r_signs, const Vec3& s_signs);

}  // namespace plred
