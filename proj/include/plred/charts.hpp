#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "plred/deprit.hpp"
#include "plred/fullred.hpp"
#include "plred/perihelia.hpp"
#include "plred/phase.hpp"
#include "plred/radau.hpp"
#include "plred/rps.hpp"
#include "plred/twobody.hpp"

namespace plred {

// Deterministic generator (splitmix64); identical seeds give identical
// samples on every platform.
struct Rng {
  uint64_t state;
  explicit Rng(uint64_t seed) : state(seed) {}
  uint64_t next_u64() {
    uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  double uniform() { return (next_u64() >> 11) * 0x1.0p-53; }
  double uniform(double a, double b) { return a + (b - a) * uniform(); }
};

// Random states clear of every singular manifold: eccentricities in
// [0.05, 0.6], pairwise mutual inclinations of at least a few degrees,
// well-separated semi-major axes.
HelioState sample_regular_state(const MassParams& mp, Rng& rng);
// All orbits in one common plane tilted away from the reference plane.
HelioState sample_planar_state(const MassParams& mp, Rng& rng, double tilt);
// Circular orbits with generic inclinations.
HelioState sample_circular_state(const MassParams& mp, Rng& rng);

// A chart presented as a pair of maps between flat coordinate vectors and the
// flat Cartesian vector [y | x] (momenta first).  Coordinates are laid out
// actions first, conjugate angles second, so the canonical two-form has the
// block form [[0, I], [-I, 0]]; fixed parameters (G) trail the vector and are
// not differentiated.
struct ChartSpec {
  std::string name;
  int n = 0;         // bodies
  int dim = 0;       // differentiable coordinates
  int nparams = 0;   // trailing fixed parameters
  int cart_dim = 0;  // flat Cartesian dimension
  MassParams mp;
  std::vector<std::string> labels;   // size dim + nparams
  std::vector<bool> angle_mask;      // size dim: compare mod 2pi
  std::function<std::vector<double>(std::span<const double>)> inverse_flat;
  std::function<std::vector<double>(std::span<const double>)> forward_flat;
  std::function<std::vector<double>(Rng&)> sample;
  // Vanishing measures of the chart's nodes at a point (labeled); checks
  // annotate near-singular values as warnings instead of refusing the point.
  std::function<std::vector<std::pair<std::string, double>>(std::span<const double>)>
      node_margins;
};

// Charts over the reduced phase space plus the three linear reductions
// (heliocentric, jacobi_linear, phi_hel_jac), which act on full flat vectors.
ChartSpec get_chart(const std::string& name, const MassParams& mp);
std::vector<std::string> chart_names();
bool chart_converts_states(const std::string& name);

std::vector<double> flatten(const HelioState& hs);
HelioState unflatten(std::span<const double> v);

// Index of a label inside a chart's coordinate list.
int chart_label_index(const ChartSpec& chart, const std::string& label);

}  // namespace plred
