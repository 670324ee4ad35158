#include "plred/perihelia.hpp"

#include <cmath>
#include <string>

namespace plred {

namespace {

void require_many(int n, const char* who) {
  if (n < 2)
    throw Error(ErrorCode::unsupported_body_count, std::string(who) + " requires n >= 2");
}

double checked_cos(double c, const char* what) {
  if (c < -1.0 - 1e-9 || c > 1.0 + 1e-9)
    throw Error(ErrorCode::invalid_actions,
                std::string("perihelia: |") + what + "| exceeds its action bound");
  return std::min(1.0, std::max(-1.0, c));
}

Vec3 col(const Mat3& M, int c) { return {M(0, c), M(1, c), M(2, c)}; }

}  // namespace

PeriheliaCoords perihelia_forward(const HelioState& hs, const MassParams& mp) {
  const int n = hs.n();
  require_many(n, "perihelia_forward");
  if (mp.n() != n)
    throw Error(ErrorCode::domain_violation, "perihelia_forward: mass/body count mismatch");

  std::vector<Vec3> C(n), S(n + 1), P(n);
  std::vector<double> a(n), ecc(n), ell(n);
  for (int i = 0; i < n; ++i) {
    const OrbitalElements el = elements_from_state(hs.y[i], hs.x[i], mp.mred(i), mp.mgrav(i));
    if (el.e < kEpsEcc)
      throw ChartSingular("perihelia_forward: zero eccentricity of body " +
                          std::to_string(i + 1));
    C[i] = el.C_vec;
    P[i] = el.P_dir;
    a[i] = el.a;
    ecc[i] = el.e;
    ell[i] = el.ell;
  }
  S[n] = C[n - 1];
  for (int j = n - 1; j >= 1; --j) S[j] = C[j - 1] + S[j + 1];

  // The two families of nodes threading the chain.
  std::vector<Vec3> nu(n + 1), nn(n + 1);  // nu[j] (1..n), nn[j] (1..n-1)
  nu[1] = cross(k3(), S[1]);
  for (int j = 1; j <= n - 1; ++j) {
    nn[j] = cross(S[j], P[j - 1]);
    nu[j + 1] = cross(P[j - 1], S[j + 1]);
  }
  const double scale = norm(S[1]);
  if (norm(nu[1]) < kEpsNode * scale)
    throw ChartSingular("perihelia_forward: total angular momentum parallel to k3");
  for (int j = 1; j <= n - 1; ++j) {
    if (norm(nn[j]) < kEpsNode * norm(S[j]))
      throw ChartSingular("perihelia_forward: node S(" + std::to_string(j) +
                          ") x P(" + std::to_string(j) + ") vanishes");
    if (norm(nu[j + 1]) < kEpsNode * norm(S[j + 1]))
      throw ChartSingular("perihelia_forward: node P(" + std::to_string(j) + ") x S(" +
                          std::to_string(j + 1) + ") vanishes");
  }

  PeriheliaCoords c;
  c.Lambda.resize(n);
  c.chi.resize(n);
  c.Theta.resize(n);
  c.ell = ell;
  c.kappa.resize(n);
  c.vartheta.resize(n);
  for (int i = 0; i < n; ++i) c.Lambda[i] = mp.mred(i) * std::sqrt(mp.mgrav(i) * a[i]);

  c.Theta[0] = S[1].x3;
  c.vartheta[0] = oriented_angle(k1(), nu[1], k3());
  c.chi[0] = norm(S[1]);
  c.kappa[0] = oriented_angle(nu[1], nn[1], S[1]);
  for (int j = 2; j <= n; ++j) {
    c.chi[j - 1] = norm(S[j]);
    c.Theta[j - 1] = dot(S[j], P[j - 2]);
    c.vartheta[j - 1] = oriented_angle(nn[j - 1], nu[j], P[j - 2]);
    if (j <= n - 1)
      c.kappa[j - 1] = oriented_angle(nu[j], nn[j], S[j]);
    else
      c.kappa[n - 1] = oriented_angle(nu[n], P[n - 1], S[n]);
  }
  return c;
}

HelioState perihelia_inverse(const PeriheliaCoords& c, const MassParams& mp) {
  const int n = c.n();
  require_many(n, "perihelia_inverse");
  if (mp.n() != n)
    throw Error(ErrorCode::domain_violation, "perihelia_inverse: mass/body count mismatch");
  for (int j = 0; j < n; ++j)
    if (c.chi[j] <= 0)
      throw Error(ErrorCode::invalid_actions, "perihelia_inverse: chain actions must be positive");

  // Walk the frame chain.  SF[j] has its third axis along S(j), PF[j] along
  // P(j); each step rotates about the current third axis onto the next node,
  // then tilts by the enclosed angle.
  std::vector<Mat3> SF(n + 1), PF(n + 1);
  Mat3 M = frame_rotation(c.vartheta[0], std::acos(checked_cos(c.Theta[0] / c.chi[0], "C3/G")));
  SF[1] = M;
  for (int j = 1; j <= n; ++j) {
    if (j <= n - 1) {
      const double cb = checked_cos(c.Theta[j] / c.chi[j - 1], "Theta/chi");
      M = M * frame_rotation(c.kappa[j - 1], std::acos(cb));
    } else {
      M = M * frame_rotation(c.kappa[n - 1] + M_PI / 2.0, M_PI / 2.0);
    }
    PF[j] = M;
    if (j <= n - 1) {
      const double cb = checked_cos(c.Theta[j] / c.chi[j], "Theta/chi");
      M = M * frame_rotation(c.vartheta[j], std::acos(cb));
      SF[j + 1] = M;
    }
  }

  HelioState hs;
  hs.y.resize(n);
  hs.x.resize(n);
  for (int i = 1; i <= n; ++i) {
    const Vec3 P = col(PF[i], 2);
    Vec3 Cv = c.chi[i - 1] * col(SF[i], 2);
    if (i <= n - 1) Cv -= c.chi[i] * col(SF[i + 1], 2);
    const double Gamma = norm(Cv);
    const double Lambda = c.Lambda[i - 1];
    if (Gamma < kEpsNode)
      throw Error(ErrorCode::rectilinear, "perihelia_inverse: reconstructed orbit rectilinear");
    if (Gamma > Lambda * (1.0 + 1e-9))
      throw ActionOverflow("perihelia_inverse: reconstructed |C(" + std::to_string(i) +
                           ")| exceeds Lambda");
    const double mred = mp.mred(i - 1), mgrav = mp.mgrav(i - 1);
    const double a = (Lambda / mred) * (Lambda / mred) / mgrav;
    const double ratio = std::min(1.0, Gamma / Lambda);
    const double e = std::sqrt(std::max(0.0, (1.0 - ratio) * (1.0 + ratio)));
    const Vec3 Q = normalized(cross(Cv, P));
    const double E = solve_kepler(c.ell[i - 1], e);
    const double cE = std::cos(E), sE = std::sin(E);
    const double se = std::sqrt(std::max(0.0, 1.0 - e * e));
    hs.x[i - 1] = a * (cE - e) * P + a * se * sE * Q;
    const double nmot = std::sqrt(mgrav / (a * a * a));
    const double fac = mred * nmot * a / (1.0 - e * cE);
    hs.y[i - 1] = -fac * sE * P + fac * se * cE * Q;
  }
  return hs;
}

PeriheliaCoords reflect_perihelia(const PeriheliaCoords& c) {
  PeriheliaCoords out = c;
  for (int j = 0; j < c.n(); ++j) {
    out.Theta[j] = -c.Theta[j];
    out.vartheta[j] = wrap_2pi(kTwoPi - c.vartheta[j]);
  }
  return out;
}

}  // namespace plred
