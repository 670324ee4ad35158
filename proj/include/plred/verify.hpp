#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "plred/charts.hpp"

namespace plred {

struct CheckReport {
  std::string check_name;
  double max_deviation = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  std::vector<std::pair<std::string, double>> per_component;
  std::vector<std::string> warnings;

  std::string to_text() const;
};

// Central-difference Jacobian of the chart's inverse map at `point`, tested
// against the canonical two-form: reports max |J^T W J - W_chart| entrywise.
CheckReport check_symplectic(const ChartSpec& chart, std::span<const double> point,
                             double step = 1e-5, double tolerance = 1e-7);

// Numerical partials of the pulled-back heliocentric Hamiltonian with respect
// to the named chart coordinates.
CheckReport check_cyclic(const ChartSpec& chart, std::span<const double> point,
                         const std::vector<std::string>& variables, double step = 1e-5,
                         double tolerance = 1e-6);

// --- Quadrature ------------------------------------------------------------

struct QuadratureSpec {
  int nodes_per_angle = 64;  // starting resolution; doubled until converged
  int max_nodes = 4096;
  double rel_tol = 1e-9;
};

// Periodic trapezoidal average of f over [0, 2pi)^d (d = 1 or 2) with
// node-doubling convergence control.
double average_periodic(const std::function<double(std::span<const double>)>& f, int d,
                        const QuadratureSpec& q = {});

// Average of the chart-pulled-back perturbing function f_hel over the listed
// fast angles, the remaining coordinates frozen at `point`.
double average_perturbation(const ChartSpec& chart, std::span<const double> point,
                            const std::vector<int>& fast_indices,
                            const QuadratureSpec& q = {});

// Secular data of a two-planet configuration in spatial Delaunay form.
struct SecularPoint {
  std::array<double, 2> Lambda, Gamma, H, g, h;
};

// Averages of the heliocentric and Jacobi perturbing functions over the two
// mean anomalies, each evaluated through the Kepler map with its own mass
// parameters.
double average_f_hel(const MassParams& mp, const SecularPoint& sp, const QuadratureSpec& q = {});
double average_f_jac(const MassParams& mp, const SecularPoint& sp, const QuadratureSpec& q = {});

// |f_hel_av - f_jac_av| at each mu, with a log-log slope fit; passes when the
// gap closes at first order in mu.
CheckReport check_hel_jac_equivalence(const MassParams& base, const SecularPoint& sp,
                                      std::span<const double> mus,
                                      const QuadratureSpec& q = {});

// --- Reference integration ---------------------------------------------------

struct Trajectory {
  std::vector<double> t;
  std::vector<HelioState> states;
};

struct IntegrationResult {
  Trajectory traj;
  CheckReport conservation;  // relative drifts of E, C, P over the run
};

// Fixed-step explicit Runge-Kutta of order 8 on Hamilton's equations for the
// heliocentric Hamiltonian.  States are recorded every `sample_stride` steps.
IntegrationResult integrate(const HelioState& hs0, const MassParams& mp, double T, double dt,
                            int sample_stride = 16, double drift_tolerance = 1e-8);

// Right-hand side of Hamilton's equations for the heliocentric Hamiltonian.
void hel_rhs(const HelioState& s, const MassParams& mp, HelioState& ds);

}  // namespace plred
