#pragma once

#include "plred/rps.hpp"

namespace plred {

// Complete angular-momentum reduction at fixed G: the cyclic pair and the
// first node pair of the partial reduction are traded for a rotating frame
// with the total angular momentum along k3 and the first node along k1.
// Regular at zero eccentricities and at the remaining zero nodes, but singular
// where the first node vanishes.
struct FullRedCoords {
  std::vector<double> Lambda, lamhat, etahat, xihat;  // per body, size n
  std::vector<double> phat, qhat;                     // nodes j = 2..n-1, size n-2
  double G = 0.0;
  int n() const { return static_cast<int>(Lambda.size()); }
};

HelioState fullred_inverse(const FullRedCoords& c, const MassParams& mp);
// Rotates the state onto the manifold, then reads the chart.
FullRedCoords fullred_forward(const HelioState& hs, const MassParams& mp);

// Lift to the partial-reduction coordinates on the manifold (p0 = q0 = 0,
// first node pair on its positive axis).
RpsCoords fullred_to_rps(const FullRedCoords& c);

// Per-body reflection patterns extending the two-planet rules; the node pairs
// are left untouched (they have no counterpart in the two-planet chart).
FullRedCoords reflect_fullred(const FullRedCoords& c, int kind);

}  // namespace plred
