#include "plred/deprit.hpp"

#include <cmath>
#include <string>

namespace plred {

namespace {

void require_many(int n, const char* who) {
  if (n < 2)
    throw Error(ErrorCode::unsupported_body_count, std::string(who) + " requires n >= 2");
}

double checked_cos(double c, const char* who) {
  if (c < -1.0 - 1e-9 || c > 1.0 + 1e-9)
    throw TriangleViolation(std::string(who) + ": angular-momentum triangle violated");
  return std::min(1.0, std::max(-1.0, c));
}

// |S(j)| for j = 1..n, with |S(n)| = Phi_n.
double s_len(int j, int n, std::span<const double> Psi, std::span<const double> Phi) {
  return j <= n - 1 ? Psi[j] : Phi[n - 1];
}

struct ChainData {
  std::vector<Vec3> C;   // per-body angular momenta
  std::vector<Vec3> S;   // S[j-1] = S(j)
  std::vector<Vec3> nu;  // nu[0] = k3 x C, nu[j] = S(j) x C(j); nu[n] = -nu[n-1]
};

ChainData chain_data(const HelioState& hs, const char* who) {
  const int n = hs.n();
  ChainData d;
  d.C.resize(n);
  d.S.assign(n, Vec3{0, 0, 0});
  for (int i = 0; i < n; ++i) d.C[i] = cross(hs.x[i], hs.y[i]);
  d.S[n - 1] = d.C[n - 1];
  for (int j = n - 2; j >= 0; --j) d.S[j] = d.C[j] + d.S[j + 1];
  d.nu.resize(n + 1);
  d.nu[0] = cross(k3(), d.S[0]);
  for (int j = 1; j <= n - 1; ++j) d.nu[j] = cross(d.S[j - 1], d.C[j - 1]);
  d.nu[n] = -d.nu[n - 1];
  for (int j = 0; j <= n - 1; ++j)
    if (norm(d.nu[j]) < kEpsNode)
      throw NodeSingular(j, std::string(who) + ": node nu_" + std::to_string(j) + " vanishes");
  return d;
}

void chain_angles(const ChainData& d, int n, std::vector<double>& Psi,
                  std::vector<double>& psi) {
  Psi.resize(n);
  psi.resize(n);
  Psi[0] = d.S[0].x3;
  for (int j = 1; j <= n - 1; ++j) Psi[j] = norm(d.S[j - 1]);
  psi[0] = oriented_angle(k1(), d.nu[0], k3());
  for (int j = 1; j <= n - 1; ++j)
    psi[j] = oriented_angle(d.nu[j - 1], d.nu[j], d.S[j - 1]);
}

}  // namespace

double deprit_cos_iota0(std::span<const double> Psi) {
  return checked_cos(Psi[0] / Psi[1], "deprit chain");
}

double deprit_cos_iota(int i, int n, std::span<const double> Psi,
                       std::span<const double> Phi) {
  const double a = s_len(i, n, Psi, Phi);
  const double b = i <= n - 1 ? s_len(i + 1, n, Psi, Phi) : 0.0;
  const double c = Phi[i - 1];
  return checked_cos((a * a + c * c - b * b) / (2.0 * a * c), "deprit chain");
}

double deprit_cos_iota_star(int j, int n, std::span<const double> Psi,
                            std::span<const double> Phi) {
  const double a = s_len(j, n, Psi, Phi);
  const double b = s_len(j + 1, n, Psi, Phi);
  const double c = Phi[j - 1];
  return checked_cos((a * a + b * b - c * c) / (2.0 * a * b), "deprit chain");
}

Mat3 deprit_chain_matrix(int i, int n, std::span<const double> Psi,
                         std::span<const double> psi, std::span<const double> Phi) {
  const double iota0 = std::acos(deprit_cos_iota0(Psi));
  Mat3 M = frame_rotation(psi[0], iota0);
  if (i == 1) {
    M = M * frame_rotation(psi[1], std::acos(deprit_cos_iota(1, n, Psi, Phi)));
    return M;
  }
  M = M * frame_rotation(psi[1] + M_PI, std::acos(deprit_cos_iota_star(1, n, Psi, Phi)));
  for (int j = 2; j <= i - 1; ++j)
    M = M * frame_rotation(psi[j], std::acos(deprit_cos_iota_star(j, n, Psi, Phi)));
  if (i <= n - 1)
    M = M * frame_rotation(psi[i] + M_PI, std::acos(deprit_cos_iota(i, n, Psi, Phi)));
  return M;
}

DepritCoords deprit_forward(const HelioState& hs) {
  const int n = hs.n();
  require_many(n, "deprit_forward");
  const ChainData d = chain_data(hs, "deprit_forward");
  DepritCoords c;
  c.R.resize(n);
  c.Phi.resize(n);
  c.r.resize(n);
  c.phi.resize(n);
  for (int i = 0; i < n; ++i) {
    c.r[i] = norm(hs.x[i]);
    if (c.r[i] < kEpsColl) throw Collision("deprit_forward: body at the center");
    c.R[i] = dot(hs.y[i], hs.x[i]) / c.r[i];
    c.Phi[i] = norm(d.C[i]);
    c.phi[i] = oriented_angle(d.nu[i + 1], hs.x[i], d.C[i]);
  }
  chain_angles(d, n, c.Psi, c.psi);
  return c;
}

HelioState deprit_inverse(const DepritCoords& c) {
  const int n = c.n();
  require_many(n, "deprit_inverse");
  HelioState hs;
  hs.y.resize(n);
  hs.x.resize(n);
  for (int i = 1; i <= n; ++i) {
    const Mat3 M = deprit_chain_matrix(i, n, c.Psi, c.psi, c.Phi);
    const double r = c.r[i - 1], R = c.R[i - 1], Phi = c.Phi[i - 1], phi = c.phi[i - 1];
    if (r < kEpsColl) throw Collision("deprit_inverse: vanishing radius");
    const double cp = std::cos(phi), sp = std::sin(phi);
    hs.x[i - 1] = M * Vec3{r * cp, r * sp, 0.0};
    hs.y[i - 1] = M * Vec3{R * cp - Phi / r * sp, R * sp + Phi / r * cp, 0.0};
  }
  return hs;
}

DepritPlanetaryCoords deprit_planetary_forward(const HelioState& hs, const MassParams& mp) {
  const int n = hs.n();
  require_many(n, "deprit_planetary_forward");
  const ChainData d = chain_data(hs, "deprit_planetary_forward");
  DepritPlanetaryCoords c;
  c.Lambda.resize(n);
  c.Gamma.resize(n);
  c.ell.resize(n);
  c.gamma.resize(n);
  for (int i = 0; i < n; ++i) {
    const OrbitalElements el = elements_from_state(hs.y[i], hs.x[i], mp.mred(i), mp.mgrav(i));
    if (el.e < kEpsEcc)
      throw ChartSingular("deprit_planetary_forward: zero eccentricity of body " +
                          std::to_string(i + 1));
    c.Lambda[i] = mp.mred(i) * std::sqrt(mp.mgrav(i) * el.a);
    c.Gamma[i] = norm(el.C_vec);
    c.ell[i] = el.ell;
    c.gamma[i] = oriented_angle(d.nu[i + 1], el.P_dir, el.C_vec);
  }
  chain_angles(d, n, c.Psi, c.psi);
  return c;
}

HelioState deprit_planetary_inverse(const DepritPlanetaryCoords& c, const MassParams& mp) {
  const int n = c.n();
  require_many(n, "deprit_planetary_inverse");
  HelioState hs;
  hs.y.resize(n);
  hs.x.resize(n);
  for (int i = 1; i <= n; ++i) {
    const Mat3 M = deprit_chain_matrix(i, n, c.Psi, c.psi, c.Gamma);
    std::array<double, 2> xbar, ybar;
    planar_delaunay(c.Lambda[i - 1], c.Gamma[i - 1], c.ell[i - 1], c.gamma[i - 1],
                    mp.mred(i - 1), mp.mgrav(i - 1), xbar, ybar);
    hs.x[i - 1] = M * Vec3{xbar[0], xbar[1], 0.0};
    hs.y[i - 1] = M * Vec3{ybar[0], ybar[1], 0.0};
  }
  return hs;
}

}  // namespace plred
