#include "doctest.h"

#include <cmath>
#include <numbers>

#include "cavity/errors.hpp"
#include "cavity/oracle.hpp"
#include "cavity/spectra.hpp"

using namespace cavity;
constexpr double pi = std::numbers::pi;

namespace {

CavityModel coupled(double V0, double V1, double W0, double W1) {
  CavityModel m;
  m.V0 = V0;
  m.V1 = V1;
  m.W0 = W0;
  m.W1 = W1;
  return m;
}

} // namespace

TEST_CASE("grid conventions") {
  const Grid1D g = make_grid(pi, 101);
  CHECK(g.spacing() * (g.n_points - 1) == doctest::Approx(pi).epsilon(1e-12));
  CHECK(g.x(0) == -pi / 2);
  CHECK(g.x(100) == pi / 2);
  CHECK(g.refined().n_points == 201);
  CHECK_THROWS_AS(make_grid(pi, 2), DomainError);
  CHECK_THROWS_AS(make_grid(-1.0, 10), DomainError);
}

TEST_CASE("dirichlet eigenvalues") {
  CavityModel m;
  CHECK(dirichlet_eigs(m, 1, 2000)[0] == doctest::Approx(0.5).epsilon(1e-6));
  const auto ext = dirichlet_eigs_extrapolated(m, 5, 1000);
  for (int n = 1; n <= 5; ++n) CHECK(std::abs(ext[n - 1] - complex_level(m, n)) < 1e-8);

  CavityModel shifted = m;
  shifted.V0 = 3.0;
  const auto a = dirichlet_eigs(m, 5, 400), b = dirichlet_eigs(shifted, 5, 400);
  for (int i = 0; i < 5; ++i) CHECK(b[i] - a[i] == doctest::Approx(3.0).epsilon(1e-8));

  CavityModel longer = m;
  longer.ell = 2 * pi;
  const auto c = dirichlet_eigs_extrapolated(longer, 3, 1000);
  for (int i = 0; i < 3; ++i) CHECK(c[i] == doctest::Approx(ext[i] / 4).epsilon(1e-6));

  // second order: error ratio 4 on halving
  const double e1 = dirichlet_eigs(m, 1, 201)[0] - 0.5, e2 = dirichlet_eigs(m, 1, 401)[0] - 0.5;
  CHECK(e1 / e2 == doctest::Approx(4.0).epsilon(0.01));

  CavityModel lossy = m;
  lossy.V1 = 0.1;
  CHECK_THROWS_AS(dirichlet_eigs(lossy, 1, 100), DomainError);
  CHECK_THROWS_AS(dirichlet_eigs(coupled(0, 0, 1, 0), 1, 100), DomainError);
  CHECK_THROWS_AS(dirichlet_eigs(m, 99, 100), DomainError);
}

TEST_CASE("pde residuals converge at second order") {
  const CavityModel c = coupled(0.3, -0.1, 0, 0);
  const CavityModel q = coupled(0.3, -0.1, 0.7, -0.4);
  std::vector<State> states = {State::complex(make_solution_I(c, 2)),
                               State::complex(make_solution_III(c, {0.5, 1.2}, Parity::Even))};
  for (WaveEquation w : {WaveEquation::QuatLeft, WaveEquation::QuatRight})
    states.push_back(State::lift(lift_family(make_solution_II(c, 3, 0.4, 1.1), q, w)));
  for (const State& s : states) {
    const auto study = refinement_study(s, s.equation(), 41, 3, 0.7);
    CHECK(study.monotone());
    CHECK(study.orders_within(1.8, 2.2));
    const auto single = pde_residual(s, s.equation(), make_grid(pi, 81), 0.7);
    CHECK(single.convergence_order == doctest::Approx(2.0).epsilon(0.1));
    CHECK(single.linf >= single.l2 / std::sqrt(pi));
  }
}

TEST_CASE("pde residual negative controls") {
  const CavityModel c = coupled(0.0, 0.0, 0, 0);
  const CavityModel q = coupled(0.0, 0.0, 1.0, 0.0);
  QuatLift lift = lift_family(make_solution_I(c, 1), q, WaveEquation::QuatLeft);
  lift.Y0 *= 1.1;
  const auto study = refinement_study(State::lift(lift), WaveEquation::QuatLeft, 41, 3, 0.0);
  CHECK(study.orders.back() < 0.2);
  CHECK(study.levels.back().l2 > 1e-2);

  // a complex state with the wrong equation also plateaus
  const State plain = State::complex(make_solution_I(q, 1));
  CHECK(refinement_study(plain, WaveEquation::QuatLeft, 41, 3, 0.0).orders.back() < 0.2);
}

TEST_CASE("crank-nicolson against closed forms") {
  CavityModel m;
  const State s = State::complex(make_solution_I(m, 1));
  const auto fine = evolve_and_compare(s, 801, 800, 1.0);
  const auto coarse = evolve_and_compare(s, 401, 400, 1.0);
  CHECK(fine.max_deviation < 1e-5);
  CHECK(coarse.max_deviation / fine.max_deviation == doctest::Approx(4.0).epsilon(0.05));
  CHECK(std::abs(fine.norm_ratio - 1.0) < 1e-10);

  m.V1 = -0.1;
  const auto lossy = evolve_and_compare(State::complex(make_solution_I(m, 1)), 801, 800, 1.0);
  CHECK(lossy.norm_ratio == doctest::Approx(std::exp(-0.2)).epsilon(1e-4));

  const CavityModel q = coupled(0.2, -0.1, 0.7, -0.4);
  for (WaveEquation w : {WaveEquation::QuatLeft, WaveEquation::QuatRight}) {
    const State l = State::lift(lift_family(make_solution_I(m, 2), q, w));
    const auto r = evolve_and_compare(l, 801, 800, 0.5);
    CHECK(r.max_deviation < 1e-4);
    CHECK(r.norm_ratio == doctest::Approx(r.expected_norm_ratio).epsilon(1e-4));
  }

  // phase-twisted family with analytic wall values
  const State pg = State::complex(phase_generalized(m, {0.1, 1.3}, 0.6));
  CHECK(evolve_and_compare(pg, 801, 800, 0.5, true).max_deviation < 1e-4);
}

TEST_CASE("unitary regime conserves the discrete norm") {
  const CavityModel q = coupled(0.5, 0.0, 0.0, 0.0);
  const State s = State::complex(make_solution_II(q, 2, 0.4, 0.3));
  // kind II does not vanish at the walls; start from a wall-free superposition
  const State mix = State::combination(
      {{0.6, State::complex(make_solution_I(q, 1))}, {0.8, State::complex(make_solution_I(q, 2))}});
  const auto r = evolve_and_compare(mix, 401, 200, 1.0);
  CHECK(std::abs(r.norm_ratio - 1.0) < 1e-10);
  CHECK(r.max_deviation < 1e-3);
  (void)s;
}

TEST_CASE("evolve preconditions") {
  CavityModel m;
  const GridState g = sample(State::complex(make_solution_I(m, 1)), make_grid(m.ell, 11), 0.0);
  CHECK_THROWS_AS(evolve(g, WaveEquation::Complex, m, 1.0, 0.0), DomainError);
  GridState bad = g;
  bad.values[3] = Quaternion::j();
  CHECK_THROWS_AS(evolve(bad, WaveEquation::Complex, m, 1.0, 0.1), DomainError);
  CHECK(evolve(g, WaveEquation::Complex, m, 0.0, 0.1).values == g.values);
}
