#include <doctest.h>

#include "plred/charts.hpp"
#include "plred/deprit.hpp"
#include "plred/radau.hpp"
#include "plred/verify.hpp"

using namespace plred;

namespace {

const MassParams kMp2{1.0, 1e-3, {1.0, 0.8}};
const MassParams kMp3{1.0, 1e-3, {1.0, 0.8, 1.2}};

}  // namespace

TEST_CASE("Deprit forward recovers the chain integrals") {
  Rng rng(61);
  for (const MassParams& mp : {kMp2, kMp3}) {
    const HelioState hs = sample_regular_state(mp, rng);
    const DepritCoords c = deprit_forward(hs);
    const Integrals I = integrals(hs, mp);
    CHECK(c.Psi[0] == doctest::Approx(I.C3).epsilon(1e-12));
    CHECK(c.Psi[1] == doctest::Approx(I.G).epsilon(1e-12));
  }
}

TEST_CASE("Deprit round trip, two and three planets") {
  Rng rng(62);
  for (const MassParams& mp : {kMp2, kMp3}) {
    for (int k = 0; k < 30; ++k) {
      const HelioState hs = sample_regular_state(mp, rng);
      const DepritCoords c = deprit_forward(hs);
      const HelioState back = deprit_inverse(c);
      for (int i = 0; i < mp.n(); ++i) {
        CHECK(norm(back.y[i] - hs.y[i]) <= 1e-10 * std::max(1.0, norm(hs.y[i])));
        CHECK(norm(back.x[i] - hs.x[i]) <= 1e-10 * std::max(1.0, norm(hs.x[i])));
      }
    }
  }
}

TEST_CASE("Deprit planetary round trip") {
  Rng rng(63);
  for (const MassParams& mp : {kMp2, kMp3}) {
    for (int k = 0; k < 30; ++k) {
      const HelioState hs = sample_regular_state(mp, rng);
      const DepritPlanetaryCoords c = deprit_planetary_forward(hs, mp);
      const HelioState back = deprit_planetary_inverse(c, mp);
      for (int i = 0; i < mp.n(); ++i) {
        CHECK(norm(back.y[i] - hs.y[i]) <= 1e-10 * std::max(1.0, norm(hs.y[i])));
        CHECK(norm(back.x[i] - hs.x[i]) <= 1e-10 * std::max(1.0, norm(hs.x[i])));
      }
    }
  }
}

TEST_CASE("planar states trip the node singularity") {
  Rng rng(64);
  const HelioState hs = sample_planar_state(kMp2, rng, 0.35);
  CHECK_THROWS_AS(deprit_forward(hs), NodeSingular);
  CHECK_THROWS_AS(deprit_planetary_forward(hs, kMp2), NodeSingular);
}

TEST_CASE("with the frame angles zeroed the map reduces to the node reduction") {
  Rng rng(65);
  for (int k = 0; k < 20; ++k) {
    // Jacobi-Radau data: two planets, common G, opposite nodes.
    RadauCoords rc;
    for (int i = 0; i < 2; ++i) {
      const double a = i == 0 ? rng.uniform(1.0, 1.3) : rng.uniform(2.0, 2.6);
      const double e = rng.uniform(0.1, 0.5);
      rc.Lambda[i] = kMp2.mred(i) * std::sqrt(kMp2.mgrav(i) * a);
      rc.Gamma[i] = rc.Lambda[i] * std::sqrt(1 - e * e);
      rc.ell[i] = rng.uniform(0.0, kTwoPi);
      rc.g[i] = rng.uniform(0.0, kTwoPi);
    }
    rc.G = rng.uniform(0.85, 0.95) * (rc.Gamma[0] + rc.Gamma[1]);

    DepritPlanetaryCoords dc;
    dc.Lambda = {rc.Lambda[0], rc.Lambda[1]};
    dc.Gamma = {rc.Gamma[0], rc.Gamma[1]};
    dc.ell = {rc.ell[0], rc.ell[1]};
    // The second body's perihelion argument refers to the opposite node.
    dc.gamma = {rc.g[0], wrap_2pi(rc.g[1] - M_PI)};
    dc.Psi = {rc.G, rc.G};  // C3 = G: the rotating frame is vertical
    dc.psi = {0.0, 0.0};    // zeta = 0, g = 0

    const HelioState a = deprit_planetary_inverse(dc, kMp2);
    const HelioState b = radau_inverse(rc, kMp2);
    for (int i = 0; i < 2; ++i) {
      CHECK(norm(a.y[i] - b.y[i]) <= 1e-12 * std::max(1.0, norm(b.y[i])));
      CHECK(norm(a.x[i] - b.x[i]) <= 1e-12 * std::max(1.0, norm(b.x[i])));
    }
  }
}

TEST_CASE("pulled-back Hamiltonian equals the Cartesian one") {
  Rng rng(66);
  const HelioState hs = sample_regular_state(kMp3, rng);
  const DepritPlanetaryCoords c = deprit_planetary_forward(hs, kMp3);
  const HelioState back = deprit_planetary_inverse(c, kMp3);
  CHECK(hamiltonian_hel(back, kMp3) == doctest::Approx(hamiltonian_hel(hs, kMp3)).epsilon(1e-12));
}

TEST_CASE("at mu = 0 the planetary Hamiltonian is the Keplerian sum") {
  MassParams mp0 = kMp3;
  mp0.mu = 0.0;
  Rng rng(67);
  const HelioState hs = sample_regular_state(mp0, rng);
  const DepritPlanetaryCoords c = deprit_planetary_forward(hs, mp0);
  double hk = 0.0;
  for (int i = 0; i < 3; ++i) hk += kepler_energy(c.Lambda[i], mp0.mred(i), mp0.mgrav(i));
  CHECK(hamiltonian_hel(hs, mp0) == doctest::Approx(hk).epsilon(1e-12));
}

TEST_CASE("C3, zeta and g are cyclic for the planetary Hamiltonian") {
  Rng rng(68);
  const ChartSpec chart = get_chart("deprit_planetary", kMp3);
  const auto point = chart.sample(rng);
  // Psi1 = C3, psi1 = zeta, psi2 = g in the flat labeling.
  const CheckReport rep = check_cyclic(chart, point, {"Psi1", "psi1", "psi2"});
  CHECK(rep.passed);
  CHECK(rep.max_deviation <= 1e-6);
}

TEST_CASE("fast angles are not cyclic (negative control)") {
  Rng rng(69);
  const ChartSpec chart = get_chart("deprit_planetary", kMp3);
  const auto point = chart.sample(rng);
  const CheckReport rep = check_cyclic(chart, point, {"ell1"});
  CHECK(!rep.passed);
}

TEST_CASE("triangle violations in the chain are rejected") {
  DepritPlanetaryCoords c;
  c.Lambda = {1.0, 1.0};
  c.Gamma = {0.9, 0.2};
  c.Psi = {0.5, 2.0};  // G too large for the two orbital momenta
  c.ell = {0, 0};
  c.gamma = {0, 0};
  c.psi = {0, 0};
  CHECK_THROWS_AS(deprit_planetary_inverse(c, kMp2), TriangleViolation);
}

TEST_CASE("the polar and planetary forms describe the same point") {
  Rng rng(70);
  const HelioState hs = sample_regular_state(kMp3, rng);
  const DepritCoords polar = deprit_forward(hs);
  const DepritPlanetaryCoords plan = deprit_planetary_forward(hs, kMp3);
  for (int i = 0; i < 3; ++i) {
    CHECK(polar.Phi[i] == doctest::Approx(plan.Gamma[i]).epsilon(1e-12));
    CHECK(polar.r[i] == doctest::Approx(norm(hs.x[i])).epsilon(1e-12));
    CHECK(polar.R[i] ==
          doctest::Approx(dot(hs.y[i], hs.x[i]) / norm(hs.x[i])).epsilon(1e-12).scale(1.0));
    // phi - gamma is the true anomaly of the mean anomaly ell.
    const OrbitalElements el =
        elements_from_state(hs.y[i], hs.x[i], kMp3.mred(i), kMp3.mgrav(i));
    const double E = solve_kepler(plan.ell[i], el.e);
    const double f = 2.0 * std::atan2(std::sqrt(1 + el.e) * std::sin(E / 2),
                                      std::sqrt(1 - el.e) * std::cos(E / 2));
    CHECK(std::abs(angle_diff(polar.phi[i] - plan.gamma[i], f)) <= 1e-10);
  }
  for (int k = 0; k < 3; ++k) {
    CHECK(polar.Psi[k] == doctest::Approx(plan.Psi[k]).epsilon(1e-12));
    CHECK(std::abs(angle_diff(polar.psi[k], plan.psi[k])) <= 1e-12);
  }
}

TEST_CASE("four planets: the middle of the chain round-trips and stays canonical") {
  const MassParams mp4{1.0, 1e-3, {1.0, 0.8, 1.2, 0.9}};
  Rng rng(71);
  for (int k = 0; k < 10; ++k) {
    const HelioState hs = sample_regular_state(mp4, rng);
    const DepritPlanetaryCoords c = deprit_planetary_forward(hs, mp4);
    const HelioState back = deprit_planetary_inverse(c, mp4);
    for (int i = 0; i < 4; ++i) {
      CHECK(norm(back.y[i] - hs.y[i]) <= 1e-10 * std::max(1.0, norm(hs.y[i])));
      CHECK(norm(back.x[i] - hs.x[i]) <= 1e-10 * std::max(1.0, norm(hs.x[i])));
    }
    const DepritCoords p = deprit_forward(hs);
    const HelioState back2 = deprit_inverse(p);
    for (int i = 0; i < 4; ++i)
      CHECK(norm(back2.x[i] - hs.x[i]) <= 1e-10 * std::max(1.0, norm(hs.x[i])));
  }
  const ChartSpec chart = get_chart("deprit_planetary", mp4);
  const auto point = chart.sample(rng);
  CHECK(check_symplectic(chart, point).passed);
  const ChartSpec polar = get_chart("deprit", mp4);
  const auto ppoint = polar.sample(rng);
  CHECK(check_symplectic(polar, ppoint).passed);
}
