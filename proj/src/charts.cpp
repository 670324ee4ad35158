#include "plred/charts.hpp"

#include <cmath>
#include <stdexcept>

namespace plred {

namespace {

constexpr double kDeg = M_PI / 180.0;

std::vector<double> concat(std::initializer_list<std::span<const double>> parts) {
  std::vector<double> out;
  for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

std::vector<std::string> numbered(std::initializer_list<const char*> stems, int n) {
  std::vector<std::string> out;
  for (const char* s : stems)
    for (int i = 1; i <= n; ++i) out.push_back(std::string(s) + std::to_string(i));
  return out;
}

// Componentwise labels for vector-valued slots: y1.1, y1.2, y1.3, y2.1, ...
std::vector<std::string> numbered3(std::initializer_list<const char*> stems, int n) {
  std::vector<std::string> out;
  for (const char* s : stems)
    for (int i = 1; i <= n; ++i)
      for (int k = 1; k <= 3; ++k)
        out.push_back(std::string(s) + std::to_string(i) + "." + std::to_string(k));
  return out;
}

}  // namespace

std::vector<double> flatten(const HelioState& hs) {
  std::vector<double> v;
  v.reserve(6 * hs.n());
  for (const Vec3& y : hs.y) {
    v.push_back(y.x1);
    v.push_back(y.x2);
    v.push_back(y.x3);
  }
  for (const Vec3& x : hs.x) {
    v.push_back(x.x1);
    v.push_back(x.x2);
    v.push_back(x.x3);
  }
  return v;
}

HelioState unflatten(std::span<const double> v) {
  const int n = static_cast<int>(v.size()) / 6;
  HelioState hs;
  hs.y.resize(n);
  hs.x.resize(n);
  for (int i = 0; i < n; ++i) {
    hs.y[i] = {v[3 * i], v[3 * i + 1], v[3 * i + 2]};
    hs.x[i] = {v[3 * n + 3 * i], v[3 * n + 3 * i + 1], v[3 * n + 3 * i + 2]};
  }
  return hs;
}

namespace {

// The node reductions degenerate where an orbital momentum aligns with the
// partial sum behind it, which pairwise inclination bounds alone do not
// prevent; keep the chain angles clear as well.
bool chain_angles_clear(const HelioState& hs, double smin) {
  const int n = hs.n();
  std::vector<Vec3> C(n);
  for (int i = 0; i < n; ++i) C[i] = cross(hs.x[i], hs.y[i]);
  Vec3 S = C[n - 1];
  for (int j = n - 2; j >= 0; --j) {
    const Vec3 Snext = S;
    S += C[j];
    const double s1 = norm(cross(S, C[j])) / (norm(S) * norm(C[j]));
    const double s2 = norm(cross(S, Snext)) / (norm(S) * norm(Snext));
    if (s1 < smin || s2 < smin) return false;
  }
  return true;
}

}  // namespace

HelioState sample_regular_state(const MassParams& mp, Rng& rng) {
  const int n = mp.n();
  HelioState hs;
  hs.y.resize(n);
  hs.x.resize(n);
  for (int attempt = 0; attempt < 256; ++attempt) {
    const double a0 = rng.uniform(1.0, 1.4);
    const double ratio = rng.uniform(1.6, 2.2);
    const double tilt0 = rng.uniform(6.0 * kDeg, 14.0 * kDeg);
    const double spacing = rng.uniform(8.0 * kDeg, 15.0 * kDeg);
    double a = a0;
    for (int i = 0; i < n; ++i) {
      DelaunayCoords d;
      // Lower bound 0.2: the fifth derivatives of the action-angle inverse
      // maps grow like 1/e^9, and the canonicity checks differentiate at a
      // fixed step; this keeps their truncation an order below tolerance.
      const double e = rng.uniform(0.2, 0.6);
      const double incl = tilt0 + i * spacing;
      d.Lambda = mp.mred(i) * std::sqrt(mp.mgrav(i) * a);
      d.Gamma = d.Lambda * std::sqrt(1.0 - e * e);
      d.H = d.Gamma * std::cos(incl);
      d.ell = rng.uniform(0.0, kTwoPi);
      d.g = rng.uniform(0.0, kTwoPi);
      d.h = rng.uniform(0.0, kTwoPi);
      delaunay_inverse(d, mp.mred(i), mp.mgrav(i), hs.y[i], hs.x[i]);
      a *= ratio;
    }
    if (chain_angles_clear(hs, 0.1)) return hs;
  }
  throw Error(ErrorCode::domain_violation, "sample_regular_state: no clear configuration found");
}

HelioState sample_planar_state(const MassParams& mp, Rng& rng, double tilt) {
  const int n = mp.n();
  HelioState hs;
  hs.y.resize(n);
  hs.x.resize(n);
  const double node = rng.uniform(0.0, kTwoPi);
  double a = rng.uniform(1.0, 1.4);
  const double ratio = rng.uniform(1.6, 2.2);
  for (int i = 0; i < n; ++i) {
    DelaunayCoords d;
    const double e = rng.uniform(0.05, 0.5);
    d.Lambda = mp.mred(i) * std::sqrt(mp.mgrav(i) * a);
    d.Gamma = d.Lambda * std::sqrt(1.0 - e * e);
    d.H = d.Gamma * std::cos(tilt);
    d.ell = rng.uniform(0.0, kTwoPi);
    d.g = rng.uniform(0.0, kTwoPi);
    d.h = node;  // common plane: same node, same inclination
    delaunay_inverse(d, mp.mred(i), mp.mgrav(i), hs.y[i], hs.x[i]);
    a *= ratio;
  }
  return hs;
}

HelioState sample_circular_state(const MassParams& mp, Rng& rng) {
  const int n = mp.n();
  HelioState hs;
  hs.y.resize(n);
  hs.x.resize(n);
  double a = rng.uniform(1.0, 1.4);
  const double ratio = rng.uniform(1.6, 2.2);
  const double tilt0 = rng.uniform(6.0 * kDeg, 14.0 * kDeg);
  const double spacing = rng.uniform(8.0 * kDeg, 15.0 * kDeg);
  for (int i = 0; i < n; ++i) {
    PoincareCoords pc;
    pc.Lambda = mp.mred(i) * std::sqrt(mp.mgrav(i) * a);
    pc.lambda = rng.uniform(0.0, kTwoPi);
    pc.eta = pc.xi = 0.0;
    const double incl = tilt0 + i * spacing;
    const double ri = std::sqrt(2.0 * pc.Lambda * (1.0 - std::cos(incl)));
    const double h = rng.uniform(0.0, kTwoPi);
    pc.p = ri * std::cos(h);
    pc.q = -ri * std::sin(h);
    poincare_to_cartesian(pc, mp.mred(i), mp.mgrav(i), hs.y[i], hs.x[i]);
    a *= ratio;
  }
  return hs;
}

namespace {

ChartSpec make_delaunay(const MassParams& mp) {
  ChartSpec c;
  const int n = mp.n();
  c.name = "delaunay";
  c.n = n;
  c.dim = 6 * n;
  c.cart_dim = 6 * n;
  c.mp = mp;
  c.labels = numbered({"Lambda", "Gamma", "H", "ell", "g", "h"}, n);
  c.angle_mask.assign(6 * n, false);
  for (int k = 3 * n; k < 6 * n; ++k) c.angle_mask[k] = true;
  c.inverse_flat = [mp, n](std::span<const double> v) {
    HelioState hs;
    hs.y.resize(n);
    hs.x.resize(n);
    for (int i = 0; i < n; ++i) {
      DelaunayCoords d{v[i], v[n + i], v[2 * n + i], v[3 * n + i], v[4 * n + i], v[5 * n + i]};
      delaunay_inverse(d, mp.mred(i), mp.mgrav(i), hs.y[i], hs.x[i]);
    }
    return flatten(hs);
  };
  c.forward_flat = [mp, n](std::span<const double> v) {
    const HelioState hs = unflatten(v);
    std::vector<double> out(6 * n);
    for (int i = 0; i < n; ++i) {
      const DelaunayCoords d = delaunay_forward(hs.y[i], hs.x[i], mp.mred(i), mp.mgrav(i));
      out[i] = d.Lambda;
      out[n + i] = d.Gamma;
      out[2 * n + i] = d.H;
      out[3 * n + i] = d.ell;
      out[4 * n + i] = d.g;
      out[5 * n + i] = d.h;
    }
    return out;
  };
  c.sample = [fwd = c.forward_flat, mp](Rng& rng) {
    return fwd(flatten(sample_regular_state(mp, rng)));
  };
  return c;
}

ChartSpec make_poincare(const MassParams& mp) {
  ChartSpec c;
  const int n = mp.n();
  c.name = "poincare";
  c.n = n;
  c.dim = 6 * n;
  c.cart_dim = 6 * n;
  c.mp = mp;
  c.labels = numbered({"Lambda", "eta", "p", "lambda", "xi", "q"}, n);
  c.angle_mask.assign(6 * n, false);
  for (int i = 0; i < n; ++i) c.angle_mask[3 * n + i] = true;  // only lambda is an angle
  c.inverse_flat = [mp, n](std::span<const double> v) {
    HelioState hs;
    hs.y.resize(n);
    hs.x.resize(n);
    for (int i = 0; i < n; ++i) {
      PoincareCoords pc{v[i], v[3 * n + i], v[n + i], v[4 * n + i], v[2 * n + i], v[5 * n + i]};
      poincare_to_cartesian(pc, mp.mred(i), mp.mgrav(i), hs.y[i], hs.x[i]);
    }
    return flatten(hs);
  };
  c.forward_flat = [mp, n](std::span<const double> v) {
    const HelioState hs = unflatten(v);
    std::vector<double> out(6 * n);
    for (int i = 0; i < n; ++i) {
      const PoincareCoords pc = poincare_from_cartesian(hs.y[i], hs.x[i], mp.mred(i), mp.mgrav(i));
      out[i] = pc.Lambda;
      out[n + i] = pc.eta;
      out[2 * n + i] = pc.p;
      out[3 * n + i] = pc.lambda;
      out[4 * n + i] = pc.xi;
      out[5 * n + i] = pc.q;
    }
    return out;
  };
  c.sample = [fwd = c.forward_flat, mp](Rng& rng) {
    return fwd(flatten(sample_regular_state(mp, rng)));
  };
  c.node_margins = [n](std::span<const double> v) {
    std::vector<std::pair<std::string, double>> out;
    for (int i = 0; i < n; ++i)
      out.emplace_back("node" + std::to_string(i),
                       0.5 * (v[2 * n + i] * v[2 * n + i] + v[5 * n + i] * v[5 * n + i]));
    return out;
  };
  return c;
}

ChartSpec make_jacobi_radau(const MassParams& mp, bool regularized) {
  ChartSpec c;
  c.name = regularized ? "radau_reg" : "jacobi_radau";
  c.n = 2;
  c.dim = 8;
  c.nparams = 1;
  c.cart_dim = 12;
  c.mp = mp;
  if (regularized)
    c.labels = {"Lambda1", "Lambda2", "hhat1", "hhat2", "lamhat1", "lamhat2", "xhat1", "xhat2", "G"};
  else
    c.labels = {"Lambda1", "Lambda2", "Gamma1", "Gamma2", "ell1", "ell2", "g1", "g2", "G"};
  c.angle_mask.assign(8, false);
  if (!regularized)
    for (int k = 4; k < 8; ++k) c.angle_mask[k] = true;
  else
    c.angle_mask[4] = c.angle_mask[5] = true;
  c.inverse_flat = [mp, regularized](std::span<const double> v) {
    if (regularized) {
      RadauRegCoords r;
      r.Lambda = {v[0], v[1]};
      r.hhat = {v[2], v[3]};
      r.lamhat = {v[4], v[5]};
      r.xhat = {v[6], v[7]};
      r.G = v[8];
      return flatten(radau_reg_inverse(r, mp));
    }
    RadauCoords r;
    r.Lambda = {v[0], v[1]};
    r.Gamma = {v[2], v[3]};
    r.ell = {v[4], v[5]};
    r.g = {v[6], v[7]};
    r.G = v[8];
    return flatten(radau_inverse(r, mp));
  };
  c.forward_flat = [mp, regularized](std::span<const double> v) {
    const HelioState hs = unflatten(v);
    std::vector<double> out(9);
    if (regularized) {
      const RadauRegCoords r = radau_reg_forward(hs, mp);
      out = {r.Lambda[0], r.Lambda[1], r.hhat[0], r.hhat[1],
             r.lamhat[0], r.lamhat[1], r.xhat[0], r.xhat[1], r.G};
    } else {
      const RadauCoords r = radau_forward(hs, mp);
      out = {r.Lambda[0], r.Lambda[1], r.Gamma[0], r.Gamma[1],
             r.ell[0], r.ell[1], r.g[0], r.g[1], r.G};
    }
    return out;
  };
  c.sample = [fwd = c.forward_flat, mp](Rng& rng) {
    return fwd(flatten(sample_regular_state(mp, rng)));
  };
  return c;
}

ChartSpec make_deprit(const MassParams& mp, bool planetary) {
  ChartSpec c;
  const int n = mp.n();
  c.name = planetary ? "deprit_planetary" : "deprit";
  c.n = n;
  c.dim = 6 * n;
  c.cart_dim = 6 * n;
  c.mp = mp;
  if (planetary)
    c.labels = numbered({"Lambda", "Gamma", "Psi", "ell", "gamma", "psi"}, n);
  else
    c.labels = numbered({"R", "Phi", "Psi", "r", "phi", "psi"}, n);
  c.angle_mask.assign(6 * n, false);
  for (int k = 3 * n; k < 6 * n; ++k) c.angle_mask[k] = true;
  if (!planetary)
    for (int i = 0; i < n; ++i) c.angle_mask[3 * n + i] = false;  // r is a radius
  c.inverse_flat = [mp, n, planetary](std::span<const double> v) {
    if (planetary) {
      DepritPlanetaryCoords d;
      d.Lambda.assign(v.begin(), v.begin() + n);
      d.Gamma.assign(v.begin() + n, v.begin() + 2 * n);
      d.Psi.assign(v.begin() + 2 * n, v.begin() + 3 * n);
      d.ell.assign(v.begin() + 3 * n, v.begin() + 4 * n);
      d.gamma.assign(v.begin() + 4 * n, v.begin() + 5 * n);
      d.psi.assign(v.begin() + 5 * n, v.begin() + 6 * n);
      return flatten(deprit_planetary_inverse(d, mp));
    }
    DepritCoords d;
    d.R.assign(v.begin(), v.begin() + n);
    d.Phi.assign(v.begin() + n, v.begin() + 2 * n);
    d.Psi.assign(v.begin() + 2 * n, v.begin() + 3 * n);
    d.r.assign(v.begin() + 3 * n, v.begin() + 4 * n);
    d.phi.assign(v.begin() + 4 * n, v.begin() + 5 * n);
    d.psi.assign(v.begin() + 5 * n, v.begin() + 6 * n);
    return flatten(deprit_inverse(d));
  };
  c.forward_flat = [mp, n, planetary](std::span<const double> v) {
    const HelioState hs = unflatten(v);
    std::vector<double> out;
    out.reserve(6 * n);
    if (planetary) {
      const DepritPlanetaryCoords d = deprit_planetary_forward(hs, mp);
      out = concat({d.Lambda, d.Gamma, d.Psi, d.ell, d.gamma, d.psi});
    } else {
      const DepritCoords d = deprit_forward(hs);
      out = concat({d.R, d.Phi, d.Psi, d.r, d.phi, d.psi});
    }
    return out;
  };
  c.sample = [fwd = c.forward_flat, mp](Rng& rng) {
    return fwd(flatten(sample_regular_state(mp, rng)));
  };
  return c;
}

ChartSpec make_rps(const MassParams& mp) {
  ChartSpec c;
  const int n = mp.n();
  c.name = "rps";
  c.n = n;
  c.dim = 6 * n;
  c.cart_dim = 6 * n;
  c.mp = mp;
  c.labels = numbered({"Lambda", "eta", "p", "lambda", "xi", "q"}, n);
  c.angle_mask.assign(6 * n, false);
  for (int i = 0; i < n; ++i) c.angle_mask[3 * n + i] = true;
  c.inverse_flat = [mp, n](std::span<const double> v) {
    RpsCoords r;
    r.Lambda.assign(v.begin(), v.begin() + n);
    r.eta.assign(v.begin() + n, v.begin() + 2 * n);
    r.p.assign(v.begin() + 2 * n, v.begin() + 3 * n);
    r.lambda.assign(v.begin() + 3 * n, v.begin() + 4 * n);
    r.xi.assign(v.begin() + 4 * n, v.begin() + 5 * n);
    r.q.assign(v.begin() + 5 * n, v.begin() + 6 * n);
    return flatten(rps_to_cartesian(r, mp));
  };
  c.forward_flat = [mp](std::span<const double> v) {
    const RpsCoords r = rps_forward(unflatten(v), mp);
    return concat({r.Lambda, r.eta, r.p, r.lambda, r.xi, r.q});
  };
  c.sample = [fwd = c.forward_flat, mp](Rng& rng) {
    return fwd(flatten(sample_regular_state(mp, rng)));
  };
  c.node_margins = [n](std::span<const double> v) {
    std::vector<std::pair<std::string, double>> out;
    for (int j = 0; j < n; ++j)
      out.emplace_back("node" + std::to_string(j),
                       0.5 * (v[2 * n + j] * v[2 * n + j] + v[5 * n + j] * v[5 * n + j]));
    return out;
  };
  return c;
}

ChartSpec make_fullred(const MassParams& mp) {
  ChartSpec c;
  const int n = mp.n();
  c.name = "full_reduction";
  c.n = n;
  c.dim = 6 * n - 4;
  c.nparams = 1;
  c.cart_dim = 6 * n;
  c.mp = mp;
  c.labels = numbered({"Lambda", "etahat"}, n);
  for (int j = 2; j <= n - 1; ++j) c.labels.push_back("phat" + std::to_string(j));
  for (const auto& s : numbered({"lamhat", "xihat"}, n)) c.labels.push_back(s);
  for (int j = 2; j <= n - 1; ++j) c.labels.push_back("qhat" + std::to_string(j));
  c.labels.push_back("G");
  c.angle_mask.assign(c.dim, false);
  for (int i = 0; i < n; ++i) c.angle_mask[3 * n - 2 + i] = true;  // lamhat
  c.inverse_flat = [mp, n](std::span<const double> v) {
    FullRedCoords f;
    const int half = 3 * n - 2;
    f.Lambda.assign(v.begin(), v.begin() + n);
    f.etahat.assign(v.begin() + n, v.begin() + 2 * n);
    f.phat.assign(v.begin() + 2 * n, v.begin() + half);
    f.lamhat.assign(v.begin() + half, v.begin() + half + n);
    f.xihat.assign(v.begin() + half + n, v.begin() + half + 2 * n);
    f.qhat.assign(v.begin() + half + 2 * n, v.begin() + 2 * half);
    f.G = v[2 * half];
    return flatten(fullred_inverse(f, mp));
  };
  c.forward_flat = [mp](std::span<const double> v) {
    const FullRedCoords f = fullred_forward(unflatten(v), mp);
    auto out = concat({f.Lambda, f.etahat, f.phat, f.lamhat, f.xihat, f.qhat});
    out.push_back(f.G);
    return out;
  };
  c.sample = [fwd = c.forward_flat, mp](Rng& rng) {
    return fwd(flatten(sample_regular_state(mp, rng)));
  };
  return c;
}

ChartSpec make_perihelia(const MassParams& mp) {
  ChartSpec c;
  const int n = mp.n();
  c.name = "perihelia";
  c.n = n;
  c.dim = 6 * n;
  c.cart_dim = 6 * n;
  c.mp = mp;
  c.labels = numbered({"Lambda", "chi", "Theta", "ell", "kappa", "vartheta"}, n);
  c.angle_mask.assign(6 * n, false);
  for (int k = 3 * n; k < 6 * n; ++k) c.angle_mask[k] = true;
  c.inverse_flat = [mp, n](std::span<const double> v) {
    PeriheliaCoords pc;
    pc.Lambda.assign(v.begin(), v.begin() + n);
    pc.chi.assign(v.begin() + n, v.begin() + 2 * n);
    pc.Theta.assign(v.begin() + 2 * n, v.begin() + 3 * n);
    pc.ell.assign(v.begin() + 3 * n, v.begin() + 4 * n);
    pc.kappa.assign(v.begin() + 4 * n, v.begin() + 5 * n);
    pc.vartheta.assign(v.begin() + 5 * n, v.begin() + 6 * n);
    return flatten(perihelia_inverse(pc, mp));
  };
  c.forward_flat = [mp](std::span<const double> v) {
    const PeriheliaCoords pc = perihelia_forward(unflatten(v), mp);
    return concat({pc.Lambda, pc.chi, pc.Theta, pc.ell, pc.kappa, pc.vartheta});
  };
  c.sample = [fwd = c.forward_flat, mp](Rng& rng) {
    return fwd(flatten(sample_regular_state(mp, rng)));
  };
  return c;
}

// Linear reductions act on full flat vectors [p0..pn | q0..qn].
ChartSpec make_heliocentric(const MassParams& mp) {
  ChartSpec c;
  const int n = mp.n();
  const int N = n + 1;
  c.name = "heliocentric";
  c.n = n;
  c.dim = 6 * N;
  c.cart_dim = 6 * N;
  c.mp = mp;
  c.labels = numbered3({"y", "x"}, N);
  c.angle_mask.assign(6 * N, false);
  c.inverse_flat = [N](std::span<const double> v) {
    // coords: [y0..yn | x0..xn] with y0 the total momentum and x0 the sun.
    std::vector<double> out(6 * N);
    for (int k = 0; k < 3; ++k) {
      double ysum = 0;
      for (int i = 1; i < N; ++i) ysum += v[3 * i + k];
      out[k] = v[k] - ysum;                    // p0 = y0 - sum y_i
      out[3 * N + k] = v[3 * N + k];           // q0 = x0
      for (int i = 1; i < N; ++i) {
        out[3 * i + k] = v[3 * i + k];                             // p_i = y_i
        out[3 * N + 3 * i + k] = v[3 * N + 3 * i + k] + v[3 * N + k];  // q_i = x_i + x0
      }
    }
    return out;
  };
  c.forward_flat = [N](std::span<const double> v) {
    std::vector<double> out(6 * N);
    for (int k = 0; k < 3; ++k) {
      double psum = 0;
      for (int i = 0; i < N; ++i) psum += v[3 * i + k];
      out[k] = psum;                  // y0 = P
      out[3 * N + k] = v[3 * N + k];  // x0 = q0
      for (int i = 1; i < N; ++i) {
        out[3 * i + k] = v[3 * i + k];
        out[3 * N + 3 * i + k] = v[3 * N + 3 * i + k] - v[3 * N + k];
      }
    }
    return out;
  };
  c.sample = [N](Rng& rng) {
    std::vector<double> v(6 * N);
    for (auto& z : v) z = rng.uniform(-1.0, 1.0);
    return v;
  };
  return c;
}

ChartSpec make_jacobi_linear(const MassParams& mp) {
  if (mp.n() != 2)
    throw Error(ErrorCode::unsupported_body_count, "jacobi_linear requires two planets");
  ChartSpec c;
  c.name = "jacobi_linear";
  c.n = 2;
  c.dim = 18;
  c.cart_dim = 18;
  c.mp = mp;
  c.labels = numbered3({"yt", "xt"}, 3);
  c.angle_mask.assign(18, false);
  const double s1 = mp.m0 + mp.mu * mp.m[0];
  const double cmu = mp.mu * mp.m[0] / s1;
  const double cm0 = mp.m0 / s1;
  c.inverse_flat = [cmu, cm0](std::span<const double> v) {
    // coords: [yt0 yt1 yt2 | xt0 xt1 xt2] -> [p0 p1 p2 | q0 q1 q2]
    std::vector<double> out(18);
    for (int k = 0; k < 3; ++k) {
      const double yt0 = v[k], yt1 = v[3 + k], yt2 = v[6 + k];
      const double xt0 = v[9 + k], xt1 = v[12 + k], xt2 = v[15 + k];
      out[k] = yt0 - yt1 - cm0 * yt2;
      out[3 + k] = yt1 - cmu * yt2;
      out[6 + k] = yt2;
      out[9 + k] = xt0;
      out[12 + k] = xt1 + xt0;
      out[15 + k] = xt0 + cmu * xt1 + xt2;
    }
    return out;
  };
  c.forward_flat = [cmu](std::span<const double> v) {
    std::vector<double> out(18);
    for (int k = 0; k < 3; ++k) {
      const double p0 = v[k], p1 = v[3 + k], p2 = v[6 + k];
      const double q0 = v[9 + k], q1 = v[12 + k], q2 = v[15 + k];
      out[k] = p0 + p1 + p2;
      out[3 + k] = p1 + cmu * p2;
      out[6 + k] = p2;
      out[9 + k] = q0;
      out[12 + k] = q1 - q0;
      out[15 + k] = q2 - (q0 + cmu * (q1 - q0));
    }
    return out;
  };
  c.sample = [](Rng& rng) {
    std::vector<double> v(18);
    for (auto& z : v) z = rng.uniform(-1.0, 1.0);
    return v;
  };
  return c;
}

ChartSpec make_phi_hel_jac(const MassParams& mp) {
  if (mp.n() != 2)
    throw Error(ErrorCode::unsupported_body_count, "phi_hel_jac requires two planets");
  ChartSpec c;
  c.name = "phi_hel_jac";
  c.n = 2;
  c.dim = 12;
  c.cart_dim = 12;
  c.mp = mp;
  c.labels = numbered3({"yt", "xt"}, 2);
  c.angle_mask.assign(12, false);
  c.inverse_flat = [mp](std::span<const double> v) {
    return flatten(phi_hel_jac(unflatten(v), mp));
  };
  c.forward_flat = [mp](std::span<const double> v) {
    const HelioState hs = unflatten(v);
    const double cmu = mp.mu * mp.m[0] / (mp.m0 + mp.mu * mp.m[0]);
    HelioState js;
    js.x = {hs.x[0], hs.x[1] - cmu * hs.x[0]};
    js.y = {hs.y[0] + cmu * hs.y[1], hs.y[1]};
    return flatten(js);
  };
  c.sample = [](Rng& rng) {
    std::vector<double> v(12);
    for (auto& z : v) z = rng.uniform(-1.0, 1.0);
    return v;
  };
  return c;
}

}  // namespace

ChartSpec get_chart(const std::string& name, const MassParams& mp) {
  if (name == "delaunay") return make_delaunay(mp);
  if (name == "poincare") return make_poincare(mp);
  if (name == "jacobi_radau") return make_jacobi_radau(mp, false);
  if (name == "radau_reg") return make_jacobi_radau(mp, true);
  if (name == "deprit") return make_deprit(mp, false);
  if (name == "deprit_planetary") return make_deprit(mp, true);
  if (name == "rps") return make_rps(mp);
  if (name == "full_reduction") return make_fullred(mp);
  if (name == "perihelia") return make_perihelia(mp);
  if (name == "heliocentric") return make_heliocentric(mp);
  if (name == "jacobi_linear") return make_jacobi_linear(mp);
  if (name == "phi_hel_jac") return make_phi_hel_jac(mp);
  throw Error(ErrorCode::unknown_chart, "no chart named '" + name + "'");
}

std::vector<std::string> chart_names() {
  return {"delaunay", "poincare", "jacobi_radau", "radau_reg", "deprit",
          "deprit_planetary", "rps", "full_reduction", "perihelia",
          "heliocentric", "jacobi_linear", "phi_hel_jac"};
}

bool chart_converts_states(const std::string& name) {
  return name == "delaunay" || name == "poincare" || name == "jacobi_radau" ||
         name == "radau_reg" || name == "deprit" || name == "deprit_planetary" ||
         name == "rps" || name == "full_reduction" || name == "perihelia";
}

int chart_label_index(const ChartSpec& chart, const std::string& label) {
  for (size_t i = 0; i < chart.labels.size(); ++i)
    if (chart.labels[i] == label) return static_cast<int>(i);
  throw Error(ErrorCode::domain_violation, "chart has no coordinate '" + label + "'");
}

}  // namespace plred
