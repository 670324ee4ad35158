#include "plred/rps.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace plred {

namespace {

void require_many(int n, const char* who) {
  if (n < 2)
    throw Error(ErrorCode::unsupported_body_count, std::string(who) + " requires n >= 2");
}

// Node radicands rho_j = Gamma_j + Psi_j - Psi_{j-1} of the chain, with
// Gamma_0 = 0, Psi_{-1} = C3 and Psi_{n-1} = Gamma_n.
std::vector<double> node_radicands(const std::vector<double>& Gamma,
                                   const std::vector<double>& Psi, int n) {
  std::vector<double> rho(n);
  rho[0] = Psi[1] - Psi[0];
  for (int j = 1; j <= n - 1; ++j) {
    const double psi_j = j <= n - 2 ? Psi[j + 1] : Gamma[n - 1];
    rho[j] = Gamma[j - 1] + psi_j - Psi[j];
  }
  return rho;
}

}  // namespace

RpsCoords rps_from_deprit(const DepritPlanetaryCoords& c, RpsIndexConvention conv) {
  const int n = c.n();
  require_many(n, "rps_from_deprit");
  RpsCoords out;
  out.Lambda = c.Lambda;
  out.lambda.resize(n);
  out.eta.resize(n);
  out.xi.resize(n);
  out.p.resize(n);
  out.q.resize(n);

  std::vector<double> delta(n);  // accumulated node angles zeta + psi_0 + ...
  delta[0] = c.psi[0];
  for (int j = 1; j <= n - 1; ++j) delta[j] = delta[j - 1] + c.psi[j];

  for (int i = 0; i < n; ++i) {
    // The last body's reference node is opposite to the last chain node.
    const double theta = i < n - 1 ? delta[i + 1] : delta[n - 1] + M_PI;
    const double sigma = c.gamma[i] + theta;
    const double re = std::sqrt(std::max(0.0, 2.0 * (c.Lambda[i] - c.Gamma[i])));
    out.lambda[i] = wrap_2pi(c.ell[i] + sigma);
    out.eta[i] = re * std::cos(sigma);
    out.xi[i] = -re * std::sin(sigma);
  }

  std::vector<double> rho = node_radicands(c.Gamma, c.Psi, n);
  if (conv == RpsIndexConvention::QLine)
    std::rotate(rho.begin(), rho.begin() + 1, rho.end());
  for (int j = 0; j <= n - 1; ++j) {
    const double rn = std::sqrt(std::max(0.0, 2.0 * rho[j]));
    out.p[j] = rn * std::cos(delta[j]);
    out.q[j] = -rn * std::sin(delta[j]);
  }
  return out;
}

DepritPlanetaryCoords rps_to_deprit(const RpsCoords& c, RpsIndexConvention conv) {
  const int n = c.n();
  require_many(n, "rps_to_deprit");
  DepritPlanetaryCoords out;
  out.Lambda = c.Lambda;
  out.Gamma.resize(n);
  out.ell.resize(n);
  out.gamma.resize(n);
  out.Psi.resize(n);
  out.psi.resize(n);

  std::vector<double> rho(n), delta(n);
  for (int j = 0; j < n; ++j) {
    rho[j] = 0.5 * (c.p[j] * c.p[j] + c.q[j] * c.q[j]);
    delta[j] = rho[j] > 0 ? std::atan2(-c.q[j], c.p[j]) : 0.0;
  }
  for (int i = 0; i < n; ++i) {
    const double re2 = 0.5 * (c.eta[i] * c.eta[i] + c.xi[i] * c.xi[i]);
    if (re2 >= c.Lambda[i]) throw ActionOverflow("rps_to_deprit: eta^2 + xi^2 exceeds 2 Lambda");
    out.Gamma[i] = c.Lambda[i] - re2;
  }
  if (conv == RpsIndexConvention::QLine)
    std::rotate(rho.rbegin(), rho.rbegin() + 1, rho.rend());

  // Chain actions by downward recursion from |S(n)| = Gamma_n.
  double s_next = out.Gamma[n - 1];
  for (int j = n - 1; j >= 1; --j) {
    const double s_j = out.Gamma[j - 1] + s_next - rho[j];
    if (s_j <= 0.0)
      throw ActionOverflow("rps_to_deprit: chain action |S(" + std::to_string(j) +
                           ")| not positive");
    out.Psi[j] = s_j;
    s_next = s_j;
  }
  out.Psi[0] = out.Psi[1] - rho[0];  // C3

  out.psi[0] = delta[0];
  for (int j = 1; j <= n - 1; ++j) out.psi[j] = wrap_2pi(delta[j] - delta[j - 1]);
  for (int i = 0; i < n; ++i) {
    const double theta = i < n - 1 ? delta[i + 1] : delta[n - 1] + M_PI;
    const double re2 = c.eta[i] * c.eta[i] + c.xi[i] * c.xi[i];
    if (re2 <= kEpsEcc * kEpsEcc)
      throw ChartSingular("rps_to_deprit: zero eccentricity of body " + std::to_string(i + 1));
    const double sigma = std::atan2(-c.xi[i], c.eta[i]);
    out.gamma[i] = wrap_2pi(sigma - theta);
    out.ell[i] = wrap_2pi(c.lambda[i] - sigma);
  }
  return out;
}

HelioState rps_to_cartesian(const RpsCoords& c, const MassParams& mp) {
  const int n = c.n();
  require_many(n, "rps_to_cartesian");
  if (mp.n() != n)
    throw Error(ErrorCode::domain_violation, "rps_to_cartesian: mass/body count mismatch");

  std::vector<double> Gamma(n), rho(n), delta(n);
  for (int i = 0; i < n; ++i) {
    const double re2 = 0.5 * (c.eta[i] * c.eta[i] + c.xi[i] * c.xi[i]);
    if (re2 >= c.Lambda[i])
      throw ActionOverflow("rps_to_cartesian: eta^2 + xi^2 exceeds 2 Lambda");
    Gamma[i] = c.Lambda[i] - re2;
  }
  for (int j = 0; j < n; ++j) {
    rho[j] = 0.5 * (c.p[j] * c.p[j] + c.q[j] * c.q[j]);
    delta[j] = rho[j] > 0 ? std::atan2(-c.q[j], c.p[j]) : 0.0;
  }
  std::vector<double> S(n + 1);  // S[j] = |S(j)|, with S[n] = Gamma_n
  S[n] = Gamma[n - 1];
  for (int j = n - 1; j >= 1; --j) {
    S[j] = Gamma[j - 1] + S[j + 1] - rho[j];
    if (S[j] <= 0.0) throw ActionOverflow("rps_to_cartesian: chain action not positive");
    if (rho[j] > 2.0 * std::min(Gamma[j - 1], S[j + 1]) + 1e-12)
      throw ActionOverflow("rps_to_cartesian: node pair outside the action triangle");
  }
  if (rho[0] > 2.0 * S[1] + 1e-12)
    throw ActionOverflow("rps_to_cartesian: p0^2 + q0^2 exceeds 4G");

  // Factor rotations; every factor tends to the identity with its node pair.
  // The sines come from cancellation-free products of the triangle data, so
  // the factors stay exact where the radicands vanish.
  const Mat3 Q0 = [&] {
    const double ci = (S[1] - rho[0]) / S[1];
    const double si = std::sqrt(std::max(0.0, rho[0] * (2.0 * S[1] - rho[0]))) / S[1];
    return axis_tilt(delta[0], ci, si);
  }();
  std::vector<Mat3> F(n), L(n);
  for (int j = 1; j <= n - 1; ++j) {
    const double u = Gamma[j - 1], v = S[j + 1], r = rho[j], s = S[j];
    const double K =
        std::sqrt(std::max(0.0, r * (2.0 * u - r) * (2.0 * v - r) * (2.0 * (u + v) - r)));
    F[j] = axis_tilt(delta[j] + M_PI, 1.0 - r * (2.0 * u - r) / (2.0 * s * v), K / (2.0 * s * v));
    L[j] = axis_tilt(delta[j], 1.0 - r * (2.0 * v - r) / (2.0 * s * u), K / (2.0 * s * u));
  }

  HelioState hs;
  hs.y.resize(n);
  hs.x.resize(n);
  Mat3 prefix = Q0;
  for (int i = 1; i <= n; ++i) {
    Mat3 M;
    if (i == 1) {
      M = prefix * L[1];
    } else {
      prefix = prefix * F[i - 1];
      M = i <= n - 1 ? prefix * L[i] : prefix;
    }
    std::array<double, 2> xbar, ybar;
    planar_poincare(c.Lambda[i - 1], c.lambda[i - 1], c.eta[i - 1], c.xi[i - 1],
                    mp.mred(i - 1), mp.mgrav(i - 1), xbar, ybar);
    hs.x[i - 1] = M * Vec3{xbar[0], xbar[1], 0.0};
    hs.y[i - 1] = M * Vec3{ybar[0], ybar[1], 0.0};
  }
  return hs;
}

RpsCoords rps_forward(const HelioState& hs, const MassParams& mp) {
  const int n = hs.n();
  require_many(n, "rps_forward");
  if (mp.n() != n)
    throw Error(ErrorCode::domain_violation, "rps_forward: mass/body count mismatch");

  std::vector<Vec3> C(n), S(n + 1);
  for (int i = 0; i < n; ++i) C[i] = cross(hs.x[i], hs.y[i]);
  S[n] = C[n - 1];
  for (int j = n - 1; j >= 1; --j) S[j] = C[j - 1] + S[j + 1];

  std::vector<double> Gamma(n);
  for (int i = 0; i < n; ++i) {
    Gamma[i] = norm(C[i]);
    if (Gamma[i] < kEpsNode) throw ChartSingular("rps_forward: rectilinear orbit");
  }
  const double scale = norm(S[1]);

  // Walk the auxiliary frames F(j) with third axes along S(j), carrying the
  // frame over when two consecutive chain momenta align (vanishing node).
  std::vector<Mat3> frames(n + 1);
  std::vector<double> angles(n + 1, 0.0);
  Mat3 M = Mat3::identity();
  double A = 0.0;
  {
    const Vec3 nu0 = cross(k3(), S[1]);
    if (norm(nu0) > kEpsNode * scale) {
      const double zeta = oriented_angle(k1(), nu0, k3());
      const double ci = std::min(1.0, std::max(-1.0, S[1].x3 / norm(S[1])));
      M = frame_rotation(zeta, std::acos(ci));
      A = zeta;
    } else if (S[1].x3 < 0) {
      throw ChartSingular("rps_forward: total angular momentum antiparallel to k3");
    }
    frames[1] = M;
    angles[1] = A;
  }
  for (int j = 2; j <= n; ++j) {
    const Vec3 node = cross(S[j - 1], S[j]);
    const double a = norm(S[j - 1]), b = norm(S[j]);
    if (norm(node) > kEpsNode * a * b / scale) {
      const Vec3 e1{M(0, 0), M(1, 0), M(2, 0)};
      const double alpha = oriented_angle(e1, node, S[j - 1]);
      const double ci = std::min(1.0, std::max(-1.0, dot(S[j - 1], S[j]) / (a * b)));
      M = M * frame_rotation(alpha, std::acos(ci));
      A += alpha;
    } else if (dot(S[j - 1], S[j]) < 0) {
      throw ChartSingular("rps_forward: antiparallel chain momenta");
    }
    frames[j] = M;
    angles[j] = A;
  }

  RpsCoords out;
  out.Lambda.assign(n, 0.0);
  out.lambda.assign(n, 0.0);
  out.eta.assign(n, 0.0);
  out.xi.assign(n, 0.0);
  out.p.assign(n, 0.0);
  out.q.assign(n, 0.0);

  // Node pairs: radicands from the chain actions, angles from the walk.
  {
    const double rho0 = norm(S[1]) - S[1].x3;
    const double rn0 = std::sqrt(std::max(0.0, 2.0 * rho0));
    out.p[0] = rn0 * std::cos(angles[1]);
    out.q[0] = -rn0 * std::sin(angles[1]);
    for (int j = 1; j <= n - 1; ++j) {
      const double rho = Gamma[j - 1] + norm(S[j + 1]) - norm(S[j]);
      const double rn = std::sqrt(std::max(0.0, 2.0 * rho));
      const double dj = angles[j + 1] - M_PI;
      out.p[j] = rn * std::cos(dj);
      out.q[j] = -rn * std::sin(dj);
    }
  }

  // Per-body data: descend from F(i) onto the orbital plane of body i.
  for (int i = 1; i <= n; ++i) {
    Mat3 Mbody = frames[i];
    double theta = angles[i];
    if (i <= n - 1) {
      const Vec3 node = cross(S[i], C[i - 1]);
      if (norm(node) > kEpsNode * norm(S[i]) * Gamma[i - 1] / scale) {
        const Vec3 e1{Mbody(0, 0), Mbody(1, 0), Mbody(2, 0)};
        const double alpha = oriented_angle(e1, node, S[i]);
        const double ci =
            std::min(1.0, std::max(-1.0, dot(S[i], C[i - 1]) / (norm(S[i]) * Gamma[i - 1])));
        Mbody = Mbody * frame_rotation(alpha, std::acos(ci));
        theta += alpha;
      } else if (dot(S[i], C[i - 1]) < 0) {
        throw ChartSingular("rps_forward: orbit plane antiparallel to chain momentum");
      }
    }
    const OrbitalElements el =
        elements_from_state(hs.y[i - 1], hs.x[i - 1], mp.mred(i - 1), mp.mgrav(i - 1));
    out.Lambda[i - 1] = mp.mred(i - 1) * std::sqrt(mp.mgrav(i - 1) * el.a);
    const double re = std::sqrt(std::max(0.0, 2.0 * (out.Lambda[i - 1] - Gamma[i - 1])));
    const Vec3 e1{Mbody(0, 0), Mbody(1, 0), Mbody(2, 0)};
    if (el.e > kEpsEcc) {
      const double sigma = theta + oriented_angle(e1, el.P_dir, C[i - 1]);
      out.lambda[i - 1] = wrap_2pi(el.ell + sigma);
      out.eta[i - 1] = re * std::cos(sigma);
      out.xi[i - 1] = -re * std::sin(sigma);
    } else {
      out.lambda[i - 1] = wrap_2pi(theta + oriented_angle(e1, hs.x[i - 1], C[i - 1]));
      out.eta[i - 1] = re;  // vanishes with the eccentricity; phase immaterial
      out.xi[i - 1] = 0.0;
    }
  }
  return out;
}

}  // namespace plred
