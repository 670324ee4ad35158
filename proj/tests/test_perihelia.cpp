#include <doctest.h>

#include "plred/charts.hpp"
#include "plred/perihelia.hpp"
#include "plred/verify.hpp"

using namespace plred;

namespace {

const MassParams kMp2{1.0, 1e-3, {1.0, 0.8}};
const MassParams kMp3{1.0, 1e-3, {1.0, 0.8, 1.2}};

}  // namespace

TEST_CASE("perihelia forward recovers the rotation integrals") {
  Rng rng(91);
  const HelioState hs = sample_regular_state(kMp3, rng);
  const PeriheliaCoords c = perihelia_forward(hs, kMp3);
  const Integrals I = integrals(hs, kMp3);
  CHECK(c.chi[0] == doctest::Approx(I.G).epsilon(1e-12));
  CHECK(c.Theta[0] == doctest::Approx(I.C3).epsilon(1e-12));
}

TEST_CASE("perihelia round trip, two and three planets") {
  Rng rng(92);
  for (const MassParams& mp : {kMp2, kMp3}) {
    for (int k = 0; k < 30; ++k) {
      const HelioState hs = sample_regular_state(mp, rng);
      const PeriheliaCoords c = perihelia_forward(hs, mp);
      const HelioState back = perihelia_inverse(c, mp);
      for (int i = 0; i < mp.n(); ++i) {
        CHECK(norm(back.y[i] - hs.y[i]) <= 1e-10 * std::max(1.0, norm(hs.y[i])));
        CHECK(norm(back.x[i] - hs.x[i]) <= 1e-10 * std::max(1.0, norm(hs.x[i])));
      }
    }
  }
}

TEST_CASE("the chart is defined in the planar limit") {
  Rng rng(93);
  for (const MassParams& mp : {kMp2, kMp3}) {
    const HelioState hs = sample_planar_state(mp, rng, 0.4);
    const PeriheliaCoords c = perihelia_forward(hs, mp);
    const HelioState back = perihelia_inverse(c, mp);
    for (int i = 0; i < mp.n(); ++i) {
      CHECK(norm(back.y[i] - hs.y[i]) <= 1e-9 * std::max(1.0, norm(hs.y[i])));
      CHECK(norm(back.x[i] - hs.x[i]) <= 1e-9 * std::max(1.0, norm(hs.x[i])));
    }
  }
}

TEST_CASE("zero eccentricity is singular for the perihelia chart") {
  Rng rng(94);
  const HelioState hs = sample_circular_state(kMp2, rng);
  CHECK_THROWS_AS(perihelia_forward(hs, kMp2), ChartSingular);
}

TEST_CASE("reconstructed elements match the coordinates") {
  Rng rng(95);
  const HelioState hs = sample_regular_state(kMp3, rng);
  const PeriheliaCoords c = perihelia_forward(hs, kMp3);
  const HelioState back = perihelia_inverse(c, kMp3);
  for (int i = 0; i < 3; ++i) {
    const OrbitalElements e0 = elements_from_state(hs.y[i], hs.x[i], kMp3.mred(i), kMp3.mgrav(i));
    const OrbitalElements e1 =
        elements_from_state(back.y[i], back.x[i], kMp3.mred(i), kMp3.mgrav(i));
    CHECK(e1.a == doctest::Approx(e0.a).epsilon(1e-10));
    CHECK(e1.e == doctest::Approx(e0.e).epsilon(1e-9));
  }
}

TEST_CASE("chain actions bound the perihelion projections") {
  Rng rng(96);
  const HelioState hs = sample_regular_state(kMp3, rng);
  const PeriheliaCoords c = perihelia_forward(hs, kMp3);
  for (int j = 1; j < 3; ++j) CHECK(std::abs(c.Theta[j]) <= c.chi[j - 1]);
  CHECK(c.chi[0] >= std::abs(c.Theta[0]));
}

TEST_CASE("local injectivity: the chart Jacobian has full rank") {
  Rng rng(97);
  const ChartSpec chart = get_chart("perihelia", kMp3);
  const auto point = chart.sample(rng);
  CHECK(static_cast<int>(point.size()) == 6 * 3);
  // The symplecticity identity J^T W J = W_chart forces rank 6n; checking it
  // doubles as the injectivity certificate.
  const CheckReport rep = check_symplectic(chart, point);
  CHECK(rep.passed);
}

TEST_CASE("reflection is an involution and conjugates to the second-component flip") {
  Rng rng(98);
  for (const MassParams& mp : {kMp2, kMp3}) {
    const HelioState hs = sample_regular_state(mp, rng);
    const PeriheliaCoords c = perihelia_forward(hs, mp);
    const PeriheliaCoords twice = reflect_perihelia(reflect_perihelia(c));
    for (int j = 0; j < mp.n(); ++j) {
      CHECK(twice.Theta[j] == doctest::Approx(c.Theta[j]).epsilon(1e-14));
      CHECK(std::abs(angle_diff(twice.vartheta[j], c.vartheta[j])) <= 1e-14);
    }
    const HelioState direct = perihelia_inverse(reflect_perihelia(c), mp);
    const HelioState expected = reflect_state(hs, {1, -1, 1}, {1, -1, 1});
    for (int i = 0; i < mp.n(); ++i) {
      CHECK(norm(direct.y[i] - expected.y[i]) <= 1e-10 * std::max(1.0, norm(expected.y[i])));
      CHECK(norm(direct.x[i] - expected.x[i]) <= 1e-10 * std::max(1.0, norm(expected.x[i])));
    }
    CHECK(hamiltonian_hel(direct, mp) == doctest::Approx(hamiltonian_hel(hs, mp)).epsilon(1e-12));
  }
}

TEST_CASE("perihelia coordinates are numerically canonical") {
  Rng rng(99);
  for (const MassParams& mp : {kMp2, kMp3}) {
    const ChartSpec chart = get_chart("perihelia", mp);
    for (int k = 0; k < 5; ++k) {
      const auto point = chart.sample(rng);
      const CheckReport rep = check_symplectic(chart, point);
      CHECK(rep.passed);
      CHECK(rep.max_deviation <= 1e-7);
    }
  }
}

TEST_CASE("four planets: perihelia chain") {
  const MassParams mp4{1.0, 1e-3, {1.0, 0.8, 1.2, 0.9}};
  Rng rng(100);
  for (int k = 0; k < 10; ++k) {
    const HelioState hs = sample_regular_state(mp4, rng);
    const PeriheliaCoords c = perihelia_forward(hs, mp4);
    const HelioState back = perihelia_inverse(c, mp4);
    for (int i = 0; i < 4; ++i)
      CHECK(norm(back.x[i] - hs.x[i]) <= 1e-10 * std::max(1.0, norm(hs.x[i])));
  }
  const ChartSpec chart = get_chart("perihelia", mp4);
  const auto point = chart.sample(rng);
  CHECK(check_symplectic(chart, point).passed);
}

TEST_CASE("perihelia coordinates obey Hamilton's equations of the pulled-back Hamiltonian") {
  // Independent dynamical evidence of canonicity: along a true trajectory,
  // the time derivative of each chart coordinate must match the symplectic
  // gradient of the Hamiltonian expressed in the chart.
  const MassParams mp = kMp2;
  Rng rng(110);
  const HelioState hs0 = sample_regular_state(mp, rng);
  const ChartSpec chart = get_chart("perihelia", mp);

  const double dt = 1e-3;
  const IntegrationResult res = integrate(hs0, mp, 20 * dt, dt, 1, 1.0);
  const auto coords_at = [&](int k) { return chart.forward_flat(flatten(res.traj.states[k])); };

  const int d = chart.dim;
  const int hd = d / 2;
  for (int k : {5, 10, 15}) {
    const auto cm = coords_at(k - 1);
    const auto c0 = coords_at(k);
    const auto cp = coords_at(k + 1);
    // Numerical dH in the chart at c0.
    std::vector<double> grad(d);
    std::vector<double> pt(c0.begin(), c0.end());
    for (int a = 0; a < d; ++a) {
      const double h = 1e-6 * std::max(1.0, std::abs(pt[a]));
      const double saved = pt[a];
      pt[a] = saved + h;
      const double fp = hamiltonian_hel(unflatten(chart.inverse_flat(pt)), mp);
      pt[a] = saved - h;
      const double fm = hamiltonian_hel(unflatten(chart.inverse_flat(pt)), mp);
      pt[a] = saved;
      grad[a] = (fp - fm) / (2 * h);
    }
    for (int a = 0; a < d; ++a) {
      const double cdot = chart.angle_mask[a] ? angle_diff(cp[a], cm[a]) / (2 * dt)
                                              : (cp[a] - cm[a]) / (2 * dt);
      // Action rates are -dH/d(angle); angle rates are +dH/d(action).
      const double expected = a < hd ? -grad[a + hd] : grad[a - hd];
      CHECK(cdot == doctest::Approx(expected).epsilon(1e-5).scale(1.0));
    }
  }
}
