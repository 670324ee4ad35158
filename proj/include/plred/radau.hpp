#pragma once

#include <array>

#include "plred/phase.hpp"
#include "plred/twobody.hpp"

namespace plred {

// Node reduction for two planets: coordinates on the manifold where the total
// angular momentum points along k3 and the first planet's node along k1, with
// G = |C| carried as an external parameter.  The second planet's angles are
// measured from the first planet's node (the two nodes are opposite).
struct RadauCoords {
  std::array<double, 2> Lambda, Gamma, ell, g;
  double G = 0.0;
};

// Same chart with each planet's secular pair replaced by the rectangular
// eccentricity variables; regular at zero eccentricities.
struct RadauRegCoords {
  std::array<double, 2> Lambda, lamhat, hhat, xhat;
  double G = 0.0;
};

// Inclinations of the two orbital planes from the angular-momentum triangle
// (Gamma1, Gamma2, G).  Throws TriangleViolation outside the triangle.
void radau_inclinations(double Gamma1, double Gamma2, double G, double& i1, double& i2);
// Cosine of the mutual inclination.
double radau_mutual_cos(double Gamma1, double Gamma2, double G);

HelioState radau_inverse(const RadauCoords& c, const MassParams& mp);
// Rotates the state so C -> k3 and the first node -> k1, then reads the chart.
RadauCoords radau_forward(const HelioState& hs, const MassParams& mp);

RadauRegCoords radau_regularize(const RadauCoords& c);
RadauCoords radau_unregularize(const RadauRegCoords& c);
HelioState radau_reg_inverse(const RadauRegCoords& c, const MassParams& mp);
RadauRegCoords radau_reg_forward(const HelioState& hs, const MassParams& mp);

// Reflection symmetries of the regularized chart.  kind 1 flips the momenta
// across the node axis, kind 2 across the plane through the node; both
// conjugate to componentwise sign patterns on (y, x).
RadauRegCoords reflect_radau_reg(const RadauRegCoords& c, int kind);

// The sign patterns the two reflections induce on Cartesian (y, x).
void radau_reflection_signs(int kind, Vec3& r_signs, Vec3& s_signs);

}  // namespace plred
