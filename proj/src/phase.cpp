#include "plred/phase.hpp"

#include <string>

namespace plred {

namespace {

void require_three_body(const MassParams& mp, const char* who) {
  if (mp.n() != 2)
    throw Error(ErrorCode::unsupported_body_count,
                std::string(who) + " requires exactly two planets");
}

double mutual_distance(const Vec3& a, const Vec3& b, const char* who) {
  const double d = norm(a - b);
  if (d < kEpsColl) throw Collision(std::string(who) + ": bodies closer than the collision threshold");
  return d;
}

double body_radius(const Vec3& x, const char* who) {
  const double r = norm(x);
  if (r < kEpsColl) throw Collision(std::string(who) + ": body at the attracting center");
  return r;
}

}  // namespace

double MassParams::jac_mred(int i) const {
  if (n() != 2) throw Error(ErrorCode::unsupported_body_count, "Jacobi masses need n = 2");
  if (i == 0) return mred(0);
  return m[1] * (m0 + mu * m[0]) / (m0 + mu * m[0] + mu * m[1]);
}

double MassParams::jac_mgrav(int i) const {
  if (n() != 2) throw Error(ErrorCode::unsupported_body_count, "Jacobi masses need n = 2");
  if (i == 0) return mgrav(0);
  return m0 * (m0 + mu * m[0] + mu * m[1]) / (m0 + mu * m[0]);
}

double hamiltonian_full(const FullState& s, const MassParams& mp) {
  const int n = s.n();
  double h = 0.0;
  for (int i = 1; i <= n; ++i) h += dot(s.p[i], s.p[i]) / (2.0 * mp.m[i - 1]);
  for (int i = 1; i <= n; ++i)
    h -= mp.m0 * mp.m[i - 1] / mutual_distance(s.q[0], s.q[i], "hamiltonian_full");
  h += mp.mu * dot(s.p[0], s.p[0]) / (2.0 * mp.m0);
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j)
      h -= mp.mu * mp.m[i - 1] * mp.m[j - 1] /
           mutual_distance(s.q[i], s.q[j], "hamiltonian_full");
  return h;
}

HelioState to_heliocentric(const FullState& s, const MassParams& mp) {
  const int n = s.n();
  (void)mp;
  HelioState hs;
  hs.y.resize(n);
  hs.x.resize(n);
  for (int i = 1; i <= n; ++i) {
    hs.x[i - 1] = s.q[i] - s.q[0];
    hs.y[i - 1] = s.p[i];
  }
  return hs;
}

FullState from_heliocentric(const HelioState& hs, const MassParams& mp) {
  const int n = hs.n();
  (void)mp;
  FullState s;
  s.p.resize(n + 1);
  s.q.resize(n + 1);
  s.q[0] = {0, 0, 0};
  Vec3 psum{0, 0, 0};
  for (int i = 1; i <= n; ++i) {
    s.q[i] = hs.x[i - 1];
    s.p[i] = hs.y[i - 1];
    psum += hs.y[i - 1];
  }
  s.p[0] = -psum;
  return s;
}

double hel_kepler_part(const HelioState& hs, const MassParams& mp) {
  double h = 0.0;
  for (int i = 0; i < hs.n(); ++i) {
    const double r = body_radius(hs.x[i], "hamiltonian_hel");
    h += dot(hs.y[i], hs.y[i]) / (2.0 * mp.mred(i)) - mp.mred(i) * mp.mgrav(i) / r;
  }
  return h;
}

double hel_perturbation(const HelioState& hs, const MassParams& mp) {
  double f = 0.0;
  for (int i = 0; i < hs.n(); ++i)
    for (int j = i + 1; j < hs.n(); ++j)
      f += dot(hs.y[i], hs.y[j]) / mp.m0 -
           mp.m[i] * mp.m[j] / mutual_distance(hs.x[i], hs.x[j], "hamiltonian_hel");
  return f;
}

double hamiltonian_hel(const HelioState& hs, const MassParams& mp) {
  return hel_kepler_part(hs, mp) + mp.mu * hel_perturbation(hs, mp);
}

HelioState to_jacobi(const FullState& s, const MassParams& mp) {
  require_three_body(mp, "to_jacobi");
  const double sigma1 = mp.m0 + mp.mu * mp.m[0];
  const Vec3 Qp = (mp.m0 * s.q[0] + mp.mu * mp.m[0] * s.q[1]) / sigma1;
  HelioState js;
  js.x = {s.q[1] - s.q[0], s.q[2] - Qp};
  js.y = {s.p[1] + (mp.mu * mp.m[0] / sigma1) * s.p[2], s.p[2]};
  return js;
}

FullState from_jacobi(const HelioState& js, const MassParams& mp) {
  require_three_body(mp, "from_jacobi");
  const double sigma1 = mp.m0 + mp.mu * mp.m[0];
  const double c = mp.mu * mp.m[0] / sigma1;
  FullState s;
  s.q = {{0, 0, 0}, js.x[0], c * js.x[0] + js.x[1]};
  s.p = {-js.y[0] - (mp.m0 / sigma1) * js.y[1], js.y[0] - c * js.y[1], js.y[1]};
  return s;
}

double jac_kepler_part(const HelioState& js, const MassParams& mp) {
  require_three_body(mp, "hamiltonian_jac");
  double h = 0.0;
  for (int i = 0; i < 2; ++i) {
    const double r = body_radius(js.x[i], "hamiltonian_jac");
    h += dot(js.y[i], js.y[i]) / (2.0 * mp.jac_mred(i)) -
         mp.jac_mred(i) * mp.jac_mgrav(i) / r;
  }
  return h;
}

double hamiltonian_jac(const HelioState& js, const MassParams& mp) {
  require_three_body(mp, "hamiltonian_jac");
  const double sigma1 = mp.m0 + mp.mu * mp.m[0];
  const double c = mp.mu * mp.m[0] / sigma1;
  double h = dot(js.y[0], js.y[0]) / (2.0 * mp.jac_mred(0)) +
             dot(js.y[1], js.y[1]) / (2.0 * mp.jac_mred(1));
  h -= mp.m0 * mp.m[0] / body_radius(js.x[0], "hamiltonian_jac");
  h -= mp.m0 * mp.m[1] /
       mutual_distance(js.x[1] + c * js.x[0], {0, 0, 0}, "hamiltonian_jac");
  h -= mp.mu * mp.m[0] * mp.m[1] /
       mutual_distance((mp.m0 / sigma1) * js.x[0], js.x[1], "hamiltonian_jac");
  return h;
}

double jac_perturbation(const HelioState& js, const MassParams& mp) {
  require_three_body(mp, "jac_perturbation");
  const double sigma1 = mp.m0 + mp.mu * mp.m[0];
  const double eps_over_mu = mp.m[0] / sigma1;  // (mu m1/sigma1)/mu
  const double eps = mp.mu * eps_over_mu;
  const Vec3& x1 = js.x[0];
  const Vec3& x2 = js.x[1];
  const double r2 = body_radius(x2, "jac_perturbation");
  const double r2s = mutual_distance(x2 + eps * x1, {0, 0, 0}, "jac_perturbation");
  // (m0 m2 / mu) * (1/|x2| - 1/|x2 + eps x1|), written so the 1/mu cancels.
  const double num = eps_over_mu * (2.0 * dot(x2, x1) + eps * dot(x1, x1));
  const double indirect = mp.m0 * mp.m[1] * num / (r2 * r2s * (r2 + r2s));
  const double direct =
      -mp.m[0] * mp.m[1] /
      mutual_distance((mp.m0 / sigma1) * x1, x2, "jac_perturbation");
  return indirect + direct;
}

double hamiltonian_jac_trunc(const HelioState& js, const MassParams& mp) {
  require_three_body(mp, "hamiltonian_jac_trunc");
  const Vec3& x1 = js.x[0];
  const Vec3& x2 = js.x[1];
  const double r2 = body_radius(x2, "hamiltonian_jac_trunc");
  const double dip = dot(x1, x2) / (r2 * r2 * r2);
  const double dir = 1.0 / mutual_distance(x1, x2, "hamiltonian_jac_trunc");
  return jac_kepler_part(js, mp) + mp.mu * mp.m[0] * mp.m[1] * (dip - dir);
}

HelioState phi_hel_jac(const HelioState& js, const MassParams& mp) {
  require_three_body(mp, "phi_hel_jac");
  const double c = mp.mu * mp.m[0] / (mp.m0 + mp.mu * mp.m[0]);
  HelioState hs;
  hs.x = {js.x[0], c * js.x[0] + js.x[1]};
  hs.y = {js.y[0] - c * js.y[1], js.y[1]};
  return hs;
}

Integrals integrals(const FullState& s, const MassParams& mp) {
  Integrals out;
  out.P = {0, 0, 0};
  out.C = {0, 0, 0};
  for (size_t i = 0; i < s.p.size(); ++i) {
    out.P += s.p[i];
    out.C += cross(s.q[i], s.p[i]);
  }
  out.G = norm(out.C);
  out.C3 = out.C.x3;
  out.E = hamiltonian_full(s, mp);
  return out;
}

Integrals integrals(const HelioState& hs, const MassParams& mp) {
  Integrals out;
  out.P = {0, 0, 0};  // vanishing by the reduction
  out.C = {0, 0, 0};
  for (int i = 0; i < hs.n(); ++i) out.C += cross(hs.x[i], hs.y[i]);
  out.G = norm(out.C);
  out.C3 = out.C.x3;
  out.E = hamiltonian_hel(hs, mp);
  return out;
}

HelioState rotate_state(const HelioState& hs, const Mat3& R) {
  HelioState out = hs;
  for (int i = 0; i < hs.n(); ++i) {
    out.y[i] = R * hs.y[i];
    out.x[i] = R * hs.x[i];
  }
  return out;
}

HelioState reflect_state(const HelioState& hs, const Vec3& r, const Vec3& s) {
  HelioState out = hs;
  for (int i = 0; i < hs.n(); ++i) {
    out.y[i] = {r.x1 * hs.y[i].x1, r.x2 * hs.y[i].x2, r.x3 * hs.y[i].x3};
    out.x[i] = {s.x1 * hs.x[i].x1, s.x2 * hs.x[i].x2, s.x3 * hs.x[i].x3};
  }
  return out;
}

}  // namespace plred
