#include "plred/verify.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace plred {

std::string CheckReport::to_text() const {
  std::ostringstream os;
  char buf[64];
  os << "check: " << check_name << "\n";
  std::snprintf(buf, sizeof buf, "%.17g", tolerance);
  os << "tolerance: " << buf << "\n";
  std::snprintf(buf, sizeof buf, "%.17g", max_deviation);
  os << "max_deviation: " << buf << "\n";
  os << "passed: " << (passed ? "true" : "false") << "\n";
  for (const auto& [label, value] : per_component) {
    std::snprintf(buf, sizeof buf, "%.17g", value);
    os << "  " << label << ": " << buf << "\n";
  }
  for (const auto& w : warnings) os << "warning: " << w << "\n";
  return os.str();
}

namespace {

// Central-difference Jacobian of chart.inverse_flat: cart_dim rows, dim cols.
std::vector<double> numerical_jacobian(const ChartSpec& chart, std::span<const double> point,
                                       double step) {
  const int d = chart.dim;
  const int cd = chart.cart_dim;
  std::vector<double> J(static_cast<size_t>(cd) * d);
  std::vector<double> pp(point.begin(), point.end());
  for (int k = 0; k < d; ++k) {
    const double h = step * std::max(1.0, std::abs(point[k]));
    const double saved = pp[k];
    // Fourth-order central stencil on the realized offsets; the denominator
    // uses the same combination, so linear maps differentiate exactly.
    const double up1 = saved + h, dn1 = saved - h;
    const double up2 = saved + 2 * h, dn2 = saved - 2 * h;
    std::vector<double> f_up1, f_dn1, f_up2, f_dn2;
    try {
      pp[k] = up1;
      f_up1 = chart.inverse_flat(pp);
      pp[k] = dn1;
      f_dn1 = chart.inverse_flat(pp);
      pp[k] = up2;
      f_up2 = chart.inverse_flat(pp);
      pp[k] = dn2;
      f_dn2 = chart.inverse_flat(pp);
    } catch (const Error& e) {
      throw Error(ErrorCode::domain_violation,
                  std::string("finite-difference stencil left the chart domain: ") + e.what());
    }
    pp[k] = saved;
    const double denom = 8.0 * (up1 - dn1) - (up2 - dn2);
    for (int r = 0; r < cd; ++r)
      J[static_cast<size_t>(r) * d + k] =
          (8.0 * (f_up1[r] - f_dn1[r]) - (f_up2[r] - f_dn2[r])) / denom;
  }
  return J;
}

}  // namespace

CheckReport check_symplectic(const ChartSpec& chart, std::span<const double> point, double step,
                             double tolerance) {
  const int d = chart.dim;
  const int cd = chart.cart_dim;
  const int hc = cd / 2;
  const std::vector<double> J = numerical_jacobian(chart, point, step);

  // W J, with W the block form [[0, I], [-I, 0]] on [momenta | positions].
  std::vector<double> WJ(static_cast<size_t>(cd) * d);
  for (int r = 0; r < hc; ++r)
    for (int k = 0; k < d; ++k) {
      WJ[static_cast<size_t>(r) * d + k] = J[static_cast<size_t>(r + hc) * d + k];
      WJ[static_cast<size_t>(r + hc) * d + k] = -J[static_cast<size_t>(r) * d + k];
    }

  CheckReport rep;
  rep.check_name = "symplectic:" + chart.name;
  rep.tolerance = tolerance;
  std::vector<double> coldev(d, 0.0);
  const int hd = d / 2;
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) {
      double s = 0.0;
      for (int r = 0; r < cd; ++r)
        s += J[static_cast<size_t>(r) * d + a] * WJ[static_cast<size_t>(r) * d + b];
      double want = 0.0;
      if (a < hd && b == a + hd) want = 1.0;
      if (a >= hd && b == a - hd) want = -1.0;
      const double dev = std::abs(s - want);
      coldev[a] = std::max(coldev[a], dev);
      rep.max_deviation = std::max(rep.max_deviation, dev);
    }
  for (int a = 0; a < d; ++a) rep.per_component.emplace_back(chart.labels[a], coldev[a]);
  if (chart.node_margins) {
    for (const auto& [label, margin] : chart.node_margins(point))
      if (margin < 1e-6)
        rep.warnings.push_back("near-singular " + label + " (vanishing measure " +
                               std::to_string(margin) + ")");
  }
  rep.passed = rep.max_deviation <= tolerance;
  return rep;
}

CheckReport check_cyclic(const ChartSpec& chart, std::span<const double> point,
                         const std::vector<std::string>& variables, double step,
                         double tolerance) {
  CheckReport rep;
  rep.check_name = "cyclic:" + chart.name;
  rep.tolerance = tolerance;
  std::vector<double> pp(point.begin(), point.end());
  const auto pullback = [&](std::span<const double> v) {
    return hamiltonian_hel(unflatten(chart.inverse_flat(v)), chart.mp);
  };
  for (const auto& label : variables) {
    const int k = chart_label_index(chart, label);
    const double h = step * std::max(1.0, std::abs(pp[k]));
    const double saved = pp[k];
    double dplus, dminus;
    try {
      pp[k] = saved + h;
      dplus = pullback(pp);
      pp[k] = saved - h;
      dminus = pullback(pp);
    } catch (const Error& e) {
      throw Error(ErrorCode::domain_violation,
                  std::string("cyclic-check stencil left the chart domain: ") + e.what());
    }
    pp[k] = saved;
    const double partial = std::abs((dplus - dminus) / (2.0 * h));
    rep.per_component.emplace_back("dH/d" + label, partial);
    rep.max_deviation = std::max(rep.max_deviation, partial);
  }
  rep.passed = rep.max_deviation <= tolerance;
  return rep;
}

double average_periodic(const std::function<double(std::span<const double>)>& f, int d,
                        const QuadratureSpec& q) {
  if (d != 1 && d != 2)
    throw Error(ErrorCode::domain_violation, "average_periodic supports one or two angles");
  auto eval = [&](int nodes) {
    double acc = 0.0;
    if (d == 1) {
      for (int i = 0; i < nodes; ++i) {
        const double a = kTwoPi * i / nodes;
        acc += f(std::span<const double>(&a, 1));
      }
      return acc / nodes;
    }
    for (int i = 0; i < nodes; ++i)
      for (int j = 0; j < nodes; ++j) {
        const double ab[2] = {kTwoPi * i / nodes, kTwoPi * j / nodes};
        acc += f(std::span<const double>(ab, 2));
      }
    return acc / (static_cast<double>(nodes) * nodes);
  };
  int nodes = q.nodes_per_angle;
  double prev = eval(nodes);
  while (nodes < q.max_nodes) {
    nodes *= 2;
    const double cur = eval(nodes);
    if (std::abs(cur - prev) <= q.rel_tol * std::max(1.0, std::abs(cur))) return cur;
    prev = cur;
  }
  throw Error(ErrorCode::quadrature_not_converged,
              "average_periodic: node doubling did not settle");
}

double average_perturbation(const ChartSpec& chart, std::span<const double> point,
                            const std::vector<int>& fast_indices, const QuadratureSpec& q) {
  std::vector<double> pp(point.begin(), point.end());
  const int d = static_cast<int>(fast_indices.size());
  return average_periodic(
      [&](std::span<const double> ang) {
        for (int k = 0; k < d; ++k) pp[fast_indices[k]] = ang[k];
        return hel_perturbation(unflatten(chart.inverse_flat(pp)), chart.mp);
      },
      d, q);
}

namespace {

HelioState secular_state(const SecularPoint& sp, double ell1, double ell2, double mred[2],
                         double mgrav[2]) {
  HelioState hs;
  hs.y.resize(2);
  hs.x.resize(2);
  const double ells[2] = {ell1, ell2};
  for (int i = 0; i < 2; ++i) {
    DelaunayCoords d{sp.Lambda[i], sp.Gamma[i], sp.H[i], ells[i], sp.g[i], sp.h[i]};
    delaunay_inverse(d, mred[i], mgrav[i], hs.y[i], hs.x[i]);
  }
  return hs;
}

}  // namespace

double average_f_hel(const MassParams& mp, const SecularPoint& sp, const QuadratureSpec& q) {
  double mr[2] = {mp.mred(0), mp.mred(1)};
  double mg[2] = {mp.mgrav(0), mp.mgrav(1)};
  return average_periodic(
      [&](std::span<const double> ang) {
        return hel_perturbation(secular_state(sp, ang[0], ang[1], mr, mg), mp);
      },
      2, q);
}

double average_f_jac(const MassParams& mp, const SecularPoint& sp, const QuadratureSpec& q) {
  double mr[2] = {mp.jac_mred(0), mp.jac_mred(1)};
  double mg[2] = {mp.jac_mgrav(0), mp.jac_mgrav(1)};
  return average_periodic(
      [&](std::span<const double> ang) {
        return jac_perturbation(secular_state(sp, ang[0], ang[1], mr, mg), mp);
      },
      2, q);
}

CheckReport check_hel_jac_equivalence(const MassParams& base, const SecularPoint& sp,
                                      std::span<const double> mus, const QuadratureSpec& q) {
  CheckReport rep;
  rep.check_name = "hel_jac_equivalence";
  rep.tolerance = 0.1;
  std::vector<double> logs_mu, logs_d;
  for (const double mu : mus) {
    MassParams mp = base;
    mp.mu = mu;
    const double fh = average_f_hel(mp, sp, q);
    const double fj = average_f_jac(mp, sp, q);
    const double d = std::abs(fh - fj);
    rep.per_component.emplace_back("d(mu=" + std::to_string(mu) + ")", d);
    if (mu > 0 && d > 0) {
      logs_mu.push_back(std::log(mu));
      logs_d.push_back(std::log(d));
    }
  }
  // Least-squares slope of log d against log mu.
  double slope = 0.0;
  if (logs_mu.size() >= 2) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double m = static_cast<double>(logs_mu.size());
    for (size_t i = 0; i < logs_mu.size(); ++i) {
      sx += logs_mu[i];
      sy += logs_d[i];
      sxx += logs_mu[i] * logs_mu[i];
      sxy += logs_mu[i] * logs_d[i];
    }
    slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  }
  rep.per_component.emplace_back("slope", slope);
  rep.max_deviation = std::abs(slope - 1.0);
  rep.passed = rep.max_deviation <= rep.tolerance;
  return rep;
}

void hel_rhs(const HelioState& s, const MassParams& mp, HelioState& ds) {
  const int n = s.n();
  ds.y.resize(n);
  ds.x.resize(n);
  Vec3 ysum{0, 0, 0};
  for (int i = 0; i < n; ++i) ysum += s.y[i];
  for (int i = 0; i < n; ++i) {
    ds.x[i] = s.y[i] / mp.mred(i) + (mp.mu / mp.m0) * (ysum - s.y[i]);
    const double ri = norm(s.x[i]);
    if (ri < kEpsColl) throw Error(ErrorCode::collision_detected, "integrate: central collision");
    ds.y[i] = s.x[i] * (-mp.mred(i) * mp.mgrav(i) / (ri * ri * ri));
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      const Vec3 dx = s.x[i] - s.x[j];
      const double rij = norm(dx);
      if (rij < kEpsColl) throw Error(ErrorCode::collision_detected, "integrate: mutual collision");
      ds.y[i] -= dx * (mp.mu * mp.m[i] * mp.m[j] / (rij * rij * rij));
    }
  }
}

namespace {

// Cooper-Verner explicit Runge-Kutta, eleven stages, order eight.
struct RK8 {
  static constexpr int stages = 11;
  double a[11][11] = {};
  double b[11] = {};
  RK8() {
    const double s = std::sqrt(21.0);
    a[1][0] = 1.0 / 2;
    a[2][0] = 1.0 / 4;
    a[2][1] = 1.0 / 4;
    a[3][0] = 1.0 / 7;
    a[3][1] = -(7 + 3 * s) / 98;
    a[3][2] = (21 + 5 * s) / 49;
    a[4][0] = (11 + s) / 84;
    a[4][2] = (18 + 4 * s) / 63;
    a[4][3] = (21 - s) / 252;
    a[5][0] = (5 + s) / 48;
    a[5][2] = (9 + s) / 36;
    a[5][3] = (-231 + 14 * s) / 360;
    a[5][4] = (63 - 7 * s) / 80;
    a[6][0] = (10 - s) / 42;
    a[6][2] = (-432 + 92 * s) / 315;
    a[6][3] = (633 - 145 * s) / 90;
    a[6][4] = (-504 + 115 * s) / 70;
    a[6][5] = (63 - 13 * s) / 35;
    a[7][0] = 1.0 / 14;
    a[7][4] = (14 - 3 * s) / 126;
    a[7][5] = (13 - 3 * s) / 63;
    a[7][6] = 1.0 / 9;
    a[8][0] = 1.0 / 32;
    a[8][4] = (91 - 21 * s) / 576;
    a[8][5] = 11.0 / 72;
    a[8][6] = -(385 + 75 * s) / 1152;
    a[8][7] = (63 + 13 * s) / 128;
    a[9][0] = 1.0 / 14;
    a[9][4] = 1.0 / 9;
    a[9][5] = -(733 + 147 * s) / 2205;
    a[9][6] = (515 + 111 * s) / 504;
    a[9][7] = -(51 + 11 * s) / 56;
    a[9][8] = (132 + 28 * s) / 245;
    a[10][4] = (-42 + 7 * s) / 18;
    a[10][5] = (-18 + 28 * s) / 45;
    a[10][6] = -(273 + 53 * s) / 72;
    a[10][7] = (301 + 53 * s) / 72;
    a[10][8] = (28 - 28 * s) / 45;
    a[10][9] = (49 - 7 * s) / 18;
    b[0] = 1.0 / 20;
    b[7] = 49.0 / 180;
    b[8] = 16.0 / 45;
    b[9] = 49.0 / 180;
    b[10] = 1.0 / 20;
  }
};

void axpy(HelioState& out, const HelioState& base, double c, const HelioState& dir) {
  const int n = base.n();
  out.y.resize(n);
  out.x.resize(n);
  for (int i = 0; i < n; ++i) {
    out.y[i] = base.y[i] + c * dir.y[i];
    out.x[i] = base.x[i] + c * dir.x[i];
  }
}

}  // namespace

IntegrationResult integrate(const HelioState& hs0, const MassParams& mp, double T, double dt,
                            int sample_stride, double drift_tolerance) {
  static const RK8 tab;
  IntegrationResult res;
  HelioState s = hs0;
  const Integrals I0 = integrals(hs0, mp);
  const long nsteps = std::lround(T / dt);

  double maxdE = 0.0, maxdC = 0.0, maxdP = 0.0;
  const double cscale = std::max(1.0, I0.G);
  const double escale = std::max(1.0, std::abs(I0.E));
  double pscale = 0.0;
  for (const auto& y : hs0.y) pscale = std::max(pscale, norm(y));
  pscale = std::max(1.0, pscale);

  std::vector<HelioState> k(RK8::stages);
  HelioState tmp;
  res.traj.t.push_back(0.0);
  res.traj.states.push_back(s);
  for (long step = 0; step < nsteps; ++step) {
    try {
      for (int st = 0; st < RK8::stages; ++st) {
        tmp = s;
        for (int j = 0; j < st; ++j)
          if (tab.a[st][j] != 0.0) axpy(tmp, tmp, dt * tab.a[st][j], k[j]);
        hel_rhs(tmp, mp, k[st]);
      }
    } catch (const Error& e) {
      if (e.code() == ErrorCode::collision_detected)
        throw Error(ErrorCode::collision_detected,
                    std::string(e.what()) + " at t = " + std::to_string(step * dt));
      throw;
    }
    for (int st = 0; st < RK8::stages; ++st)
      if (tab.b[st] != 0.0) axpy(s, s, dt * tab.b[st], k[st]);
    for (const auto& y : s.y)
      if (!std::isfinite(y.x1) || !std::isfinite(y.x2) || !std::isfinite(y.x3))
        throw Error(ErrorCode::step_rejected, "integrate: state blew up");

    const Integrals I = integrals(s, mp);
    maxdE = std::max(maxdE, std::abs(I.E - I0.E) / escale);
    maxdC = std::max(maxdC, norm(I.C - I0.C) / cscale);
    maxdP = std::max(maxdP, norm(I.P - I0.P) / pscale);
    if ((step + 1) % sample_stride == 0 || step + 1 == nsteps) {
      res.traj.t.push_back((step + 1) * dt);
      res.traj.states.push_back(s);
    }
  }

  CheckReport& rep = res.conservation;
  rep.check_name = "conservation";
  rep.tolerance = drift_tolerance;
  rep.per_component = {{"dE_rel", maxdE}, {"dC_rel", maxdC}, {"dP_rel", maxdP}};
  rep.max_deviation = std::max({maxdE, maxdC, maxdP});
  rep.passed = rep.max_deviation <= drift_tolerance;
  return res;
}

}  // namespace plred
