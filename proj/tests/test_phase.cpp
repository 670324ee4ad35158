#include <doctest.h>

#include <functional>

#include "plred/charts.hpp"
#include "plred/phase.hpp"

using namespace plred;

namespace {

MassParams two_planets(double mu) { return {1.0, mu, {1.0, 0.8}}; }

HelioState random_helio(const MassParams& mp, Rng& rng) {
  return sample_regular_state(mp, rng);
}

FullState random_full(const MassParams& mp, Rng& rng) {
  FullState s;
  const int n = mp.n();
  s.p.resize(n + 1);
  s.q.resize(n + 1);
  for (int i = 0; i <= n; ++i) {
    s.p[i] = {rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)};
    s.q[i] = {3.0 * i + rng.uniform(1, 2), rng.uniform(-1, 1), rng.uniform(-1, 1)};
  }
  return s;
}

// Numerical Poisson bracket on the reduced phase space via central
// differences: {f, g} = sum_i df/dy . dg/dx - df/dx . dg/dy.
using Observable = std::function<double(const HelioState&)>;
double poisson_bracket(const Observable& f, const Observable& g, const HelioState& s) {
  const int n = s.n();
  const auto grad = [&](const Observable& fn) {
    std::vector<double> out(6 * n);
    HelioState sp = s;
    auto bump = [&](Vec3& slot, int k, double h, double sign) { slot[k] += sign * h; };
    int idx = 0;
    for (int part = 0; part < 2; ++part)
      for (int i = 0; i < n; ++i)
        for (int k = 0; k < 3; ++k) {
          Vec3& slot = part == 0 ? sp.y[i] : sp.x[i];
          const double v0 = slot[k];
          const double h = 1e-5 * std::max(1.0, std::abs(v0));
          bump(slot, k, h, +1);
          const double fp = fn(sp);
          slot[k] = v0;
          bump(slot, k, h, -1);
          const double fm = fn(sp);
          slot[k] = v0;
          out[idx++] = (fp - fm) / (2 * h);
        }
    return out;
  };
  const auto gf = grad(f), gg = grad(g);
  double acc = 0.0;
  for (int i = 0; i < 3 * n; ++i) acc += gf[3 * n + i] * gg[i] - gf[i] * gg[3 * n + i];
  return acc;
}

}  // namespace

TEST_CASE("reduced masses satisfy their exact identities") {
  const MassParams mp = two_planets(1e-3);
  for (int i = 0; i < 2; ++i)
    CHECK(mp.mred(i) * mp.mgrav(i) == doctest::Approx(mp.m0 * mp.m[i]).epsilon(1e-15));
  CHECK(mp.jac_mred(0) == mp.mred(0));
  CHECK(mp.jac_mgrav(0) == mp.mgrav(0));
  for (int i = 0; i < 2; ++i)
    CHECK(mp.jac_mred(i) * mp.jac_mgrav(i) == doctest::Approx(mp.m0 * mp.m[i]).epsilon(1e-15));
}

TEST_CASE("heliocentric and Jacobi Keplerian mass combinations differ at second order") {
  // (m^3 M^2 - mtilde^3 Mtilde^2)/mu^2 stays bounded as mu -> 0.
  double prev_ratio = 0.0;
  for (const double mu : {1e-2, 5e-3, 2.5e-3}) {
    const MassParams mp = two_planets(mu);
    const double i = 1;  // the second planet carries the correction
    const double h = std::pow(mp.mred(i), 3) * std::pow(mp.mgrav(i), 2);
    const double j = std::pow(mp.jac_mred(i), 3) * std::pow(mp.jac_mgrav(i), 2);
    const double ratio = std::abs(h - j) / (mu * mu);
    if (prev_ratio != 0.0) CHECK(ratio == doctest::Approx(prev_ratio).epsilon(0.05));
    prev_ratio = ratio;
  }
}

TEST_CASE("full Hamiltonian on the uncoupled one-planet case") {
  MassParams mp{1.0, 0.0, {1.0}};
  FullState s;
  s.p = {{0, 0, 0}, {0, 1, 0}};
  s.q = {{0, 0, 0}, {1, 0, 0}};
  CHECK(hamiltonian_full(s, mp) == doctest::Approx(-0.5).epsilon(1e-15));
}

TEST_CASE("full Hamiltonian matches a term-by-term oracle") {
  const MassParams mp = two_planets(1e-3);
  Rng rng(21);
  const FullState s = random_full(mp, rng);
  double oracle = 0.0;
  for (int i = 1; i <= 2; ++i) oracle += dot(s.p[i], s.p[i]) / (2 * mp.m[i - 1]);
  for (int i = 1; i <= 2; ++i) oracle -= mp.m0 * mp.m[i - 1] / norm(s.q[0] - s.q[i]);
  oracle += mp.mu * dot(s.p[0], s.p[0]) / (2 * mp.m0);
  oracle -= mp.mu * mp.m[0] * mp.m[1] / norm(s.q[1] - s.q[2]);
  CHECK(hamiltonian_full(s, mp) == doctest::Approx(oracle).epsilon(1e-14));
}

TEST_CASE("doubling all distances halves every potential term") {
  const MassParams mp = two_planets(1e-3);
  Rng rng(22);
  FullState s = random_full(mp, rng);
  for (auto& p : s.p) p = {0, 0, 0};
  const double v1 = hamiltonian_full(s, mp);
  for (auto& q : s.q) q = 2.0 * q;
  CHECK(hamiltonian_full(s, mp) == doctest::Approx(0.5 * v1).epsilon(1e-14));
}

TEST_CASE("heliocentric reduction fixes the sun at the origin") {
  const MassParams mp = two_planets(1e-3);
  Rng rng(23);
  FullState s = random_full(mp, rng);
  s.q[0] = {0, 0, 0};
  const HelioState hs = to_heliocentric(s, mp);
  for (int i = 0; i < 2; ++i) {
    CHECK(norm(hs.x[i] - s.q[i + 1]) == 0.0);
    CHECK(norm(hs.y[i] - s.p[i + 1]) == 0.0);
  }
}

TEST_CASE("heliocentric round trip and energy consistency on the reduced slice") {
  const MassParams mp = two_planets(1e-3);
  Rng rng(24);
  const HelioState hs = random_helio(mp, rng);
  const FullState s = from_heliocentric(hs, mp);
  const HelioState hs2 = to_heliocentric(s, mp);
  for (int i = 0; i < 2; ++i) {
    CHECK(norm(hs2.x[i] - hs.x[i]) == 0.0);
    CHECK(norm(hs2.y[i] - hs.y[i]) == 0.0);
  }
  const double hf = hamiltonian_full(s, mp);
  const double hh = hamiltonian_hel(hs, mp);
  CHECK(hh == doctest::Approx(hf).epsilon(1e-12));
  const Integrals I = integrals(s, mp);
  CHECK(norm(I.P) <= 1e-15);
}

TEST_CASE("heliocentric Hamiltonian special values") {
  MassParams mp{1.0, 0.0, {1.0}};
  HelioState hs;
  hs.x = {{1, 0, 0}};
  hs.y = {{0, 1, 0}};
  CHECK(hamiltonian_hel(hs, mp) == doctest::Approx(-0.5).epsilon(1e-15));

  // Perpendicular momenta kill the kinetic coupling.
  MassParams mp2 = two_planets(1e-3);
  HelioState h2;
  h2.x = {{1, 0, 0}, {0, 3, 0}};
  h2.y = {{0, 1, 0}, {1, 0, 0}};
  const double f = hel_perturbation(h2, mp2);
  CHECK(f == doctest::Approx(-mp2.m[0] * mp2.m[1] / norm(h2.x[0] - h2.x[1])).epsilon(1e-14));
}

TEST_CASE("heliocentric perturbing function matches a summation oracle") {
  const MassParams mp = two_planets(1e-3);
  Rng rng(25);
  const HelioState hs = random_helio(mp, rng);
  const double oracle = dot(hs.y[0], hs.y[1]) / mp.m0 -
                        mp.m[0] * mp.m[1] / norm(hs.x[0] - hs.x[1]);
  CHECK(hel_perturbation(hs, mp) == doctest::Approx(oracle).epsilon(1e-14));
  CHECK(hamiltonian_hel(hs, mp) ==
        doctest::Approx(hel_kepler_part(hs, mp) + mp.mu * oracle).epsilon(1e-14));
}

TEST_CASE("Jacobi variables coincide with heliocentric ones at mu = 0") {
  const MassParams mp = two_planets(0.0);
  Rng rng(26);
  FullState s = random_full(mp, rng);
  s.q[0] = {0, 0, 0};
  const HelioState hel = to_heliocentric(s, mp);
  const HelioState jac = to_jacobi(s, mp);
  for (int i = 0; i < 2; ++i) {
    CHECK(norm(jac.x[i] - hel.x[i]) <= 1e-15);
    CHECK(norm(jac.y[i] - hel.y[i]) <= 1e-15);
  }
}

TEST_CASE("Jacobi round trip and Hamiltonian consistency") {
  const MassParams mp = two_planets(1e-3);
  Rng rng(27);
  const HelioState js = random_helio(mp, rng);
  const FullState s = from_jacobi(js, mp);
  const HelioState js2 = to_jacobi(s, mp);
  for (int i = 0; i < 2; ++i) {
    CHECK(norm(js2.x[i] - js.x[i]) <= 1e-14);
    CHECK(norm(js2.y[i] - js.y[i]) <= 1e-14);
  }
  CHECK(hamiltonian_jac(js, mp) == doctest::Approx(hamiltonian_full(s, mp)).epsilon(1e-12));
  // The linear change ties the two reduced Hamiltonians together.
  CHECK(hamiltonian_jac(js, mp) ==
        doctest::Approx(hamiltonian_hel(phi_hel_jac(js, mp), mp)).epsilon(1e-12));
}

TEST_CASE("truncated Jacobi Hamiltonian differs at second order in mu") {
  Rng rng(28);
  const HelioState js = random_helio(two_planets(1e-3), rng);
  double prev = 0.0;
  for (const double mu : {1e-3, 5e-4, 2.5e-4}) {
    const MassParams mp = two_planets(mu);
    const double d = std::abs(hamiltonian_jac(js, mp) - hamiltonian_jac_trunc(js, mp));
    const double ratio = d / (mu * mu);
    if (prev != 0.0) CHECK(ratio == doctest::Approx(prev).epsilon(0.1));
    prev = ratio;
  }
  // mu = 0: truncation exact.
  const MassParams mp0 = two_planets(0.0);
  CHECK(hamiltonian_jac(js, mp0) ==
        doctest::Approx(hamiltonian_jac_trunc(js, mp0)).epsilon(1e-14));
}

TEST_CASE("dipole term vanishes for perpendicular Jacobi positions") {
  const MassParams mp = two_planets(1e-2);
  HelioState js;
  js.x = {{1, 0, 0}, {0, 3, 0}};
  js.y = {{0, 0.9, 0}, {0.1, 0, 0.5}};
  const double trunc = hamiltonian_jac_trunc(js, mp);
  const double kepler = jac_kepler_part(js, mp);
  const double direct = -mp.mu * mp.m[0] * mp.m[1] / norm(js.x[0] - js.x[1]);
  CHECK(trunc == doctest::Approx(kepler + direct).epsilon(1e-13));
}

TEST_CASE("jac_perturbation recovers (H_jac - Kepler)/mu and is finite at mu = 0") {
  Rng rng(29);
  const HelioState js = random_helio(two_planets(1e-3), rng);
  const MassParams mp = two_planets(1e-3);
  const double f = jac_perturbation(js, mp);
  CHECK(jac_kepler_part(js, mp) + mp.mu * f ==
        doctest::Approx(hamiltonian_jac(js, mp)).epsilon(1e-13));
  const MassParams mp0 = two_planets(0.0);
  const double f0 = jac_perturbation(js, mp0);
  const double dip = mp0.m[0] * mp0.m[1] *
                     (dot(js.x[0], js.x[1]) / std::pow(norm(js.x[1]), 3) -
                      1.0 / norm(js.x[0] - js.x[1]));
  CHECK(f0 == doctest::Approx(dip).epsilon(1e-12));
}

TEST_CASE("phi_hel_jac is the identity at mu = 0") {
  const MassParams mp = two_planets(0.0);
  Rng rng(30);
  const HelioState js = random_helio(mp, rng);
  const HelioState hs = phi_hel_jac(js, mp);
  for (int i = 0; i < 2; ++i) {
    CHECK(norm(hs.x[i] - js.x[i]) == 0.0);
    CHECK(norm(hs.y[i] - js.y[i]) == 0.0);
  }
}

TEST_CASE("integrals of a single equatorial circular orbit") {
  MassParams mp{1.0, 0.0, {1.0}};
  HelioState hs;
  hs.x = {{1, 0, 0}};
  hs.y = {{0, 1, 0}};
  const Integrals I = integrals(hs, mp);
  CHECK(norm(I.C - Vec3{0, 0, 1}) <= 1e-15);
  CHECK(I.G == doctest::Approx(1.0));
  CHECK(I.C3 == doctest::Approx(1.0));
}

TEST_CASE("G^2 equals the sum of squared components") {
  const MassParams mp = two_planets(1e-3);
  Rng rng(31);
  const HelioState hs = random_helio(mp, rng);
  const Integrals I = integrals(hs, mp);
  CHECK(I.G * I.G ==
        doctest::Approx(I.C.x1 * I.C.x1 + I.C.x2 * I.C.x2 + I.C.x3 * I.C.x3).epsilon(1e-15));
}

TEST_CASE("angular momentum components close under the Poisson bracket") {
  const MassParams mp = two_planets(1e-3);
  Rng rng(32);
  const HelioState hs = random_helio(mp, rng);
  const auto comp = [&](int k) {
    return Observable([k, &mp](const HelioState& s) { return integrals(s, mp).C[k]; });
  };
  const auto Cx = comp(0), Cy = comp(1), Cz = comp(2);
  CHECK(poisson_bracket(Cx, Cy, hs) ==
        doctest::Approx(integrals(hs, mp).C.x3).epsilon(1e-6).scale(1.0));
  CHECK(poisson_bracket(Cy, Cz, hs) ==
        doctest::Approx(integrals(hs, mp).C.x1).epsilon(1e-6).scale(1.0));
  CHECK(poisson_bracket(Cz, Cx, hs) ==
        doctest::Approx(integrals(hs, mp).C.x2).epsilon(1e-6).scale(1.0));
}

TEST_CASE("the classical integrals commute where they should") {
  const MassParams mp = two_planets(1e-3);
  Rng rng(33);
  const HelioState hs = random_helio(mp, rng);
  const Observable H = [&](const HelioState& s) { return hamiltonian_hel(s, mp); };
  const Observable G = [&](const HelioState& s) { return integrals(s, mp).G; };
  const Observable C3 = [&](const HelioState& s) { return integrals(s, mp).C3; };
  CHECK(std::abs(poisson_bracket(G, C3, hs)) <= 1e-6);
  CHECK(std::abs(poisson_bracket(H, G, hs)) <= 1e-6);
  for (int k = 0; k < 3; ++k) {
    const Observable Ck = [&, k](const HelioState& s) { return integrals(s, mp).C[k]; };
    CHECK(std::abs(poisson_bracket(H, Ck, hs)) <= 1e-6);
  }
}

TEST_CASE("Hamiltonian invariance under synchronous rotations and reflections") {
  const MassParams mp = two_planets(1e-3);
  Rng rng(34);
  const HelioState hs = random_helio(mp, rng);
  const double h0 = hamiltonian_hel(hs, mp);
  for (int k = 0; k < 10; ++k) {
    const Mat3 R = rot3(rng.uniform(0.0, kTwoPi));
    CHECK(hamiltonian_hel(rotate_state(hs, R), mp) == doctest::Approx(h0).epsilon(1e-12));
  }
  CHECK(hamiltonian_hel(reflect_state(hs, {-1, 1, 1}, {1, -1, -1}), mp) ==
        doctest::Approx(h0).epsilon(1e-12));
  CHECK(hamiltonian_hel(reflect_state(hs, {1, -1, -1}, {-1, 1, 1}), mp) ==
        doctest::Approx(h0).epsilon(1e-12));
}

TEST_CASE("linear reduction charts agree with the state reductions on the slice") {
  const MassParams mp = two_planets(1e-3);
  Rng rng(35);
  const HelioState hs = random_helio(mp, rng);

  // Heliocentric chart: coordinates [y0 y1 y2 | x0 x1 x2]; on the reduced
  // slice y0 (total momentum) and x0 (the sun) vanish.
  const ChartSpec hel = get_chart("heliocentric", mp);
  std::vector<double> coords(18, 0.0);
  for (int i = 0; i < 2; ++i)
    for (int k = 0; k < 3; ++k) {
      coords[3 * (i + 1) + k] = hs.y[i][k];
      coords[9 + 3 * (i + 1) + k] = hs.x[i][k];
    }
  const auto full_flat = hel.inverse_flat(coords);
  const FullState s = from_heliocentric(hs, mp);
  for (int i = 0; i <= 2; ++i)
    for (int k = 0; k < 3; ++k) {
      CHECK(full_flat[3 * i + k] == doctest::Approx(s.p[i][k]).epsilon(1e-14).scale(1.0));
      CHECK(full_flat[9 + 3 * i + k] == doctest::Approx(s.q[i][k]).epsilon(1e-14).scale(1.0));
    }
  const auto back = hel.forward_flat(full_flat);
  for (int k = 0; k < 18; ++k)
    CHECK(back[k] == doctest::Approx(coords[k]).epsilon(1e-13).scale(1.0));

  // Jacobi chart against the three-body reduction.
  const ChartSpec jac = get_chart("jacobi_linear", mp);
  const auto jac_full = jac.inverse_flat(coords);
  const FullState sj = from_jacobi(hs, mp);
  for (int i = 0; i <= 2; ++i)
    for (int k = 0; k < 3; ++k) {
      CHECK(jac_full[3 * i + k] == doctest::Approx(sj.p[i][k]).epsilon(1e-13).scale(1.0));
      CHECK(jac_full[9 + 3 * i + k] == doctest::Approx(sj.q[i][k]).epsilon(1e-13).scale(1.0));
    }
  const auto jback = jac.forward_flat(jac_full);
  for (int k = 0; k < 18; ++k)
    CHECK(jback[k] == doctest::Approx(coords[k]).epsilon(1e-13).scale(1.0));

  // The connecting chart realizes the same linear change as phi_hel_jac.
  const ChartSpec conn = get_chart("phi_hel_jac", mp);
  const auto hel_flat = conn.inverse_flat(flatten(hs));
  const HelioState via = phi_hel_jac(hs, mp);
  const auto via_flat = flatten(via);
  for (int k = 0; k < 12; ++k) CHECK(hel_flat[k] == via_flat[k]);
}
