#include "plred/fullred.hpp"

#include <cmath>
#include <string>

namespace plred {

namespace {

void require_many(int n, const char* who) {
  if (n < 2)
    throw Error(ErrorCode::unsupported_body_count, std::string(who) + " requires n >= 2");
}

}  // namespace

RpsCoords fullred_to_rps(const FullRedCoords& c) {
  const int n = c.n();
  require_many(n, "fullred_to_rps");
  RpsCoords r;
  r.Lambda = c.Lambda;
  r.lambda = c.lamhat;
  r.eta = c.etahat;
  r.xi = c.xihat;
  r.p.assign(n, 0.0);
  r.q.assign(n, 0.0);
  for (int j = 2; j <= n - 1; ++j) {
    r.p[j] = c.phat[j - 2];
    r.q[j] = c.qhat[j - 2];
  }

  // Reconstruct the first node radicand from the chain actions and G.
  std::vector<double> Gamma(n);
  for (int i = 0; i < n; ++i) {
    const double re2 = 0.5 * (c.etahat[i] * c.etahat[i] + c.xihat[i] * c.xihat[i]);
    if (re2 >= c.Lambda[i]) throw ActionOverflow("fullred: eta^2 + xi^2 exceeds 2 Lambda");
    Gamma[i] = c.Lambda[i] - re2;
  }
  double s_next = Gamma[n - 1];  // |S(j+1)| walking down to j = 1
  for (int j = n - 1; j >= 2; --j) {
    const double rho = 0.5 * (r.p[j] * r.p[j] + r.q[j] * r.q[j]);
    s_next = Gamma[j - 1] + s_next - rho;
    if (s_next <= 0.0) throw ActionOverflow("fullred: chain action not positive");
  }
  const double rho1 = Gamma[0] + s_next - c.G;
  if (rho1 < -1e-12)
    throw TriangleViolation("fullred: G exceeds Gamma_1 + |S(2)|");
  if (rho1 < kEpsNode)
    throw NodeSingular(1, "fullred: first node vanishes (planar-type configuration)");
  r.p[1] = std::sqrt(std::max(0.0, 2.0 * rho1));
  r.q[1] = 0.0;
  // p0 = q0 = 0: the rotating frame has C3 = G.
  return r;
}

HelioState fullred_inverse(const FullRedCoords& c, const MassParams& mp) {
  return rps_to_cartesian(fullred_to_rps(c), mp);
}

FullRedCoords fullred_forward(const HelioState& hs, const MassParams& mp) {
  const int n = hs.n();
  require_many(n, "fullred_forward");

  Vec3 C{0, 0, 0};
  for (int i = 0; i < n; ++i) C += cross(hs.x[i], hs.y[i]);
  const double G = norm(C);
  if (G < kEpsNode) throw ChartSingular("fullred_forward: vanishing total angular momentum");
  const Vec3 C1 = cross(hs.x[0], hs.y[0]);
  const Vec3 nu1 = cross(C, C1);
  if (norm(nu1) < kEpsNode * G * norm(C1))
    throw NodeSingular(1, "fullred_forward: first node vanishes");
  const Vec3 u3 = C / G;
  const Vec3 u1 = normalized(nu1);
  const Vec3 u2 = cross(u3, u1);
  Mat3 R;
  for (int col = 0; col < 3; ++col) {
    R(0, col) = u1[col];
    R(1, col) = u2[col];
    R(2, col) = u3[col];
  }
  const RpsCoords r = rps_forward(rotate_state(hs, R), mp);

  FullRedCoords out;
  out.G = G;
  out.Lambda = r.Lambda;
  out.lamhat = r.lambda;
  out.etahat = r.eta;
  out.xihat = r.xi;
  out.phat.assign(std::max(0, n - 2), 0.0);
  out.qhat.assign(std::max(0, n - 2), 0.0);
  for (int j = 2; j <= n - 1; ++j) {
    out.phat[j - 2] = r.p[j];
    out.qhat[j - 2] = r.q[j];
  }
  if (std::hypot(r.p[0], r.q[0]) > 1e-8 * std::sqrt(G) ||
      std::abs(r.q[1]) > 1e-8 * (1.0 + std::abs(r.p[1])))
    throw Error(ErrorCode::domain_violation,
                "fullred_forward: state failed to land on the rotating manifold");
  return out;
}

FullRedCoords reflect_fullred(const FullRedCoords& c, int kind) {
  FullRedCoords out = c;
  for (int i = 0; i < c.n(); ++i) {
    if (kind == 1) {
      out.lamhat[i] = wrap_2pi(-c.lamhat[i]);
      out.etahat[i] = c.etahat[i];
      out.xihat[i] = -c.xihat[i];
    } else if (kind == 2) {
      out.lamhat[i] = wrap_2pi(M_PI - c.lamhat[i]);
      out.etahat[i] = -c.etahat[i];
      out.xihat[i] = c.xihat[i];
    } else {
      throw Error(ErrorCode::domain_violation, "reflect_fullred: kind must be 1 or 2");
    }
  }
  return out;
}

}  // namespace plred
