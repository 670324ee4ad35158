#pragma once

#include <span>
#include <vector>

#include "plred/phase.hpp"
#include "plred/twobody.hpp"

namespace plred {

// Node reduction for any number of planets, built on the partial angular
// momenta S(j) = C(j) + ... + C(n) and the kinetic frames they define.
//
// Layout of the chained actions and angles:
//   Psi = (C3, |S(1)|, ..., |S(n-1)|)   so Psi[0] = C3 and Psi[j] = |S(j)|
//   psi = (zeta, psi_0, ..., psi_{n-2}) the node angles down the chain.
struct DepritCoords {
  std::vector<double> R, Phi, r, phi;  // radial pair and in-plane pair, per body
  std::vector<double> Psi, psi;
  int n() const { return static_cast<int>(R.size()); }
};

// Planetary version: the in-plane pairs integrated into Delaunay-like
// action-angle pairs (Lambda_i, Gamma_i, ell_i, gamma_i), with Phi_i = Gamma_i.
struct DepritPlanetaryCoords {
  std::vector<double> Lambda, Gamma, ell, gamma;
  std::vector<double> Psi, psi;
  int n() const { return static_cast<int>(Lambda.size()); }
};

DepritCoords deprit_forward(const HelioState& hs);
HelioState deprit_inverse(const DepritCoords& c);

DepritPlanetaryCoords deprit_planetary_forward(const HelioState& hs, const MassParams& mp);
HelioState deprit_planetary_inverse(const DepritPlanetaryCoords& c, const MassParams& mp);

// Composed rotation from the reference frame to body i's orbital frame
// (i is 1-based), reconstructed from the actions and node angles alone.
// Phi holds |C(1)|..|C(n)|.
Mat3 deprit_chain_matrix(int i, int n, std::span<const double> Psi,
                         std::span<const double> psi, std::span<const double> Phi);

// Triangle cosines of the chain.  |S(n)| is read from Phi[n-1].
double deprit_cos_iota0(std::span<const double> Psi);
double deprit_cos_iota(int i, int n, std::span<const double> Psi, std::span<const double> Phi);
double deprit_cos_iota_star(int j, int n, std::span<const double> Psi,
                            std::span<const double> Phi);

}  // namespace plred
