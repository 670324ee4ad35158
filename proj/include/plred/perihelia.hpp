#pragma once

#include <vector>

#include "plred/phase.hpp"
#include "plred/twobody.hpp"

namespace plred {

// Full reduction through a chain of frames whose third axes alternate between
// the partial angular momenta S(j) and the perihelion directions P(j).  The
// orbital angular momenta are reconstructed as differences of consecutive
// chain momenta, so their lengths are not coordinates.  Well defined in the
// planar limit, singular at zero eccentricities.
//
// Pairings: (Lambda_i, ell_i), (chi_j, kappa_j), (Theta_j, vartheta_j), with
//   chi = (G, |S(2)|, ..., |S(n)|)
//   Theta = (C3, S(2).P(1), ..., S(n).P(n-1))
struct PeriheliaCoords {
  std::vector<double> Lambda, chi, Theta;      // actions, size n each
  std::vector<double> ell, kappa, vartheta;    // angles, size n each
  int n() const { return static_cast<int>(Lambda.size()); }
};

PeriheliaCoords perihelia_forward(const HelioState& hs, const MassParams& mp);
HelioState perihelia_inverse(const PeriheliaCoords& c, const MassParams& mp);

// Reflection through the plane spanned by k1 and k3, in chart coordinates:
// (Lambda, chi, Theta, ell, kappa, vartheta) -> (Lambda, chi, -Theta, ell,
// kappa, -vartheta).  Conjugates to flipping the second component of every
// position and momentum.
PeriheliaCoords reflect_perihelia(const PeriheliaCoords& c);

}  // namespace plred
