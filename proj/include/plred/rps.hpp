#pragma once

#include <vector>

#include "plred/deprit.hpp"

namespace plred {

// Partially reduced, regular coordinates: mean longitudes plus rectangular
// eccentricity pairs (eta, xi) per body and rectangular node pairs (p, q) per
// chain node, regular at zero eccentricities and zero nodes.  (p0, q0) encode
// (G - C3, zeta) and are integrals of any rotation-invariant Hamiltonian.
struct RpsCoords {
  std::vector<double> Lambda, lambda, eta, xi;  // per body, size n
  std::vector<double> p, q;                     // per node j = 0..n-1, size n
  int n() const { return static_cast<int>(Lambda.size()); }
};

// The node-pair radicands read off the displayed p-line, or off the q-line,
// of the defining relations; the two disagree and only one is canonical.  The
// symplecticity checker arbitrates; PLine is the default everywhere.
enum class RpsIndexConvention { PLine, QLine };

RpsCoords rps_from_deprit(const DepritPlanetaryCoords& c,
                          RpsIndexConvention conv = RpsIndexConvention::PLine);
DepritPlanetaryCoords rps_to_deprit(const RpsCoords& c,
                                    RpsIndexConvention conv = RpsIndexConvention::PLine);

// Direct routes that stay regular through the singular sets of the
// intermediate node variables.
HelioState rps_to_cartesian(const RpsCoords& c, const MassParams& mp);
RpsCoords rps_forward(const HelioState& hs, const MassParams& mp);

}  // namespace plred
