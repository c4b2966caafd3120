#include "doctest.h"

#include <cmath>
#include <numbers>

#include "cavity/errors.hpp"
#include "cavity/observables.hpp"
#include "cavity/oracle.hpp"
#include "support.hpp"

using namespace cavity;
constexpr double pi = std::numbers::pi;

namespace {

CavityModel box(double ell = pi, double V0 = 0, double V1 = 0) {
  CavityModel m;
  m.ell = ell;
  m.V0 = V0;
  m.V1 = V1;
  return m;
}

CavityModel coupled(double V0, double V1, double W0, double W1, double ell = pi) {
  CavityModel m = box(ell, V0, V1);
  m.W0 = W0;
  m.W1 = W1;
  return m;
}

} // namespace

TEST_CASE("kind I ground state") {
  const State s = State::complex(make_solution_I(box(), 1));
  CHECK(expectation(s, Operator::Identity, 0.0) == doctest::Approx(1.0).epsilon(1e-12));
  // grid eigenvalue of the Dirichlet Laplacian as the energy oracle
  const double e_grid = dirichlet_eigs_extrapolated(box(), 1, 801)[0];
  CHECK(expectation(s, Operator::Energy, 0.0) == doctest::Approx(e_grid).epsilon(1e-8));
  CHECK(e_grid == doctest::Approx(0.5).epsilon(1e-8));
  for (int N = 1; N <= 5; ++N) {
    const State sn = State::complex(make_solution_I(box(2.0, 0.3, -0.2), N));
    for (double t : {0.0, 1.3}) {
      CHECK(std::abs(expectation(sn, Operator::Position, t)) < 1e-12);
      CHECK(std::abs(expectation(sn, Operator::Momentum, t)) < 1e-12);
    }
  }
}

TEST_CASE("energy trajectory") {
  const auto sol = make_solution_I(box(pi, 0.0, -0.1), 2);
  const State s = State::complex(sol);
  CHECK(expect_energy_trajectory(sol, 0.0) == doctest::Approx(sol.E.E1));
  CHECK(expect_energy_trajectory(sol, 1.0) == doctest::Approx(sol.E.E1 * std::exp(-0.2)));
  for (double t : {0.0, 0.5, 1.0, 3.0})
    CHECK(testing::rel(expectation(s, Operator::Energy, t), expect_energy_trajectory(sol, t)) < 1e-9);

  const auto flat = make_solution_I(box(), 3);
  CHECK(expect_energy_trajectory(flat, 7.0) == doctest::Approx(flat.E.E1));

  auto off = sol;
  off.E.E0 += 0.5;
  CHECK_THROWS_AS(expect_energy_trajectory(off, 1.0), DomainError);
}

TEST_CASE("solution II position") {
  const CavityModel one = box(1.0);
  CHECK(solutionII_position(1, pi / 4, pi / 2, 0.0, 0.0, one) == doctest::Approx(-1 / (2 * pi)));
  CHECK(solutionII_position(3, 0.3, 0.0, 0.0, 0.0, one) == 0.0);

  const State s = State::complex(make_solution_II(one, 1, pi / 4, pi / 2));
  CHECK(expectation(s, Operator::Position, 0.0) == doctest::Approx(-1 / (2 * pi)).epsilon(1e-10));

  const CavityModel m = box(2.0, 0.2, -0.15);
  for (int N : {1, 2, 5})
    for (double th : {0.3, 0.9, 1.4})
      for (double om : {-1.0, 0.4, 2.5})
        for (double t : {0.0, 0.8}) {
          const State k2 = State::complex(make_solution_II(m, N, th, om));
          const double closed = solutionII_position(N, th, om, m.V1, t, m);
          CHECK(std::abs(expectation(k2, Operator::Position, t) - closed) <= 1e-9 * std::abs(closed) + 1e-14);
          if (t == 0.0) CHECK(std::abs(closed) < m.ell / (2 * N * pi));
        }
  // the bound shrinks with N
  CHECK(std::abs(solutionII_position(40, 0.7, 1.2, 0, 0, m)) < m.ell / (2 * 40 * pi));
}

TEST_CASE("densities") {
  const auto base = make_solution_I(box(1.0), 1);
  const QuatLift zero{base, Complex{}, WaveEquation::QuatLeft};
  const QuatLift balanced{base, std::polar(1.0, 0.7), WaveEquation::QuatLeft};
  const QuatLift far{base, Complex(-(std::sqrt(3.0) + 2), 0), WaveEquation::QuatLeft};
  for (double x : {-0.4, 0.0, 0.33}) {
    const double psi2 = std::norm(eval_psi(base, x, 0.3));
    const auto d0 = densities(zero, x, 0.3);
    CHECK(d0.rho == doctest::Approx(psi2));
    CHECK(d0.varrho == doctest::Approx(psi2));
    const auto d1 = densities(balanced, x, 0.3);
    CHECK(std::abs(d1.rho) < 1e-14);
    CHECK(d1.varrho == doctest::Approx(psi2));
    // component expansion: |c psi|^2 - |c Y0 conj psi|^2
    const double y2 = std::norm(far.Y0), c2 = 1 / (1 + y2);
    const auto d2 = densities(far, x, 0.3);
    CHECK(d2.rho == doctest::Approx(c2 * psi2 - c2 * y2 * psi2));
    CHECK(d2.rho / d2.varrho == doctest::Approx(density_ratio(far.Y0)));
    CHECK(d2.varrho >= std::abs(d2.rho));
  }
}

TEST_CASE("energy conservation from the definitions") {
  std::vector<State> states;
  const CavityModel c = box(pi, 0.4, -0.1);
  for (int N = 1; N <= 4; ++N) states.push_back(State::complex(make_solution_I(c, N)));
  states.push_back(State::complex(make_solution_II(c, 2, 0.5, 1.2)));
  states.push_back(State::complex(make_solution_III(box(pi, 3), {0, 4.2}, Parity::Odd)));
  states.push_back(State::complex(make_solution_III(box(pi, 3), {0, 1.0}, Parity::Even)));
  states.push_back(State::complex(make_solution_III(c, {0.7, 1.5}, Parity::Even)));
  states.push_back(State::complex(phase_generalized(c, {0.7, 1.5}, 0.9)));
  for (const State& s : states)
    for (int k = 0; k < 10; ++k) CHECK(energy_conservation_residual(s, 0.3 * k) < 1e-10);

  // evanescent: negative kinetic term, still balanced
  const State evan = State::complex(make_solution_III(box(pi, 3), {0, 1.0}, Parity::Even));
  CHECK(expectation(evan, Operator::MomentumSquared, 0.0) < 0.0);
}

TEST_CASE("quaternionic lifts: definitions against the density table") {
  const CavityModel c = box(pi, 0.3, 0.0);
  const CavityModel q = coupled(0.3, 0.0, 0.8, -0.5);
  for (WaveEquation w : {WaveEquation::QuatLeft, WaveEquation::QuatRight}) {
    for (const auto& base : {make_solution_I(c, 1), make_solution_II(c, 2, 0.4, 0.9),
                             make_solution_III(c, {0.4, 1.1}, Parity::Even)}) {
      const State s = State::lift(lift_family(base, q, w));
      const TablePrediction tab = expectation_table(s, 0.5);
      const ExpectationSet e = expectations(s, 0.5);
      CHECK(e.identity == doctest::Approx(tab.int_varrho).epsilon(1e-11));
      CHECK(e.energy == doctest::Approx(tab.energy).epsilon(1e-9));
      CHECK(e.momentum_sq == doctest::Approx(tab.momentum_sq).epsilon(1e-9));
      CHECK(e.potential == doctest::Approx(tab.potential).epsilon(1e-9));
      CHECK(energy_conservation_residual(s, 0.5) < 1e-10);
    }
  }
}

TEST_CASE("real_inner is bilinear and symmetric") {
  const CavityModel c = box(1.5, 0.2, 0.0);
  const State a = State::complex(make_solution_I(c, 1));
  const State b = State::complex(make_solution_II(c, 3, 0.3, 0.8));
  const State d = State::complex(make_solution_III(c, {0.2, 2.0}, Parity::Odd));
  const double al = 0.7, be = -1.9;
  const State mix = State::combination({{al, a}, {be, b}});
  for (Operator op : {Operator::Identity, Operator::Position, Operator::Momentum}) {
    const double lhs = real_inner(mix, d, op, 0.4);
    const double rhs = al * real_inner(a, d, op, 0.4) + be * real_inner(b, d, op, 0.4);
    CHECK(std::abs(lhs - rhs) < 1e-12);
    CHECK(std::abs(real_inner(a, d, op, 0.4) - real_inner(d, a, op, 0.4)) < 1e-13);
  }
  CHECK(real_inner(b, b, Operator::Identity, 0.0) >= 0.0);
  CHECK_THROWS_AS(real_inner(a, State::complex(make_solution_I(box(2.0), 1)), Operator::Identity, 0.0),
                  DomainError);
}

TEST_CASE("momentum vanishes for standing waves of kinds I and III") {
  const CavityModel c = box(1.2, 0.5, -0.1);
  const CavityModel z = box(1.2, 0.5, 0.0);
  std::vector<State> states = {State::complex(make_solution_I(c, 2)),
                               State::complex(make_solution_III(z, {0, 3.0}, Parity::Even)),
                               State::complex(make_solution_III(z, {0, 0.1}, Parity::Odd)),
                               State::complex(make_solution_III(c, {0.4, 2.0}, Parity::Even))};
  for (const State& s : states) CHECK(std::abs(expectation(s, Operator::Momentum, 0.6)) < 1e-10);
}

TEST_CASE("analytic derivatives agree with central differences at second order") {
  const CavityModel c = box(1.0, 0.2, 0.1);
  const CavityModel q = coupled(0.2, 0.1, 0.6, 0.3, 1.0);
  std::vector<State> states = {State::complex(make_solution_II(c, 2, 0.4, 0.3)),
                               State::complex(make_solution_III(c, {0.5, 2.0}, Parity::Odd)),
                               State::lift(lift_family(make_solution_I(c, 3), q, WaveEquation::QuatRight))};
  for (const State& s : states) {
    const double x = 0.17, t = 0.4;
    double prev_x = 0, prev_t = 0, prev_xx = 0;
    for (double h : {1e-2, 5e-3}) {
      const double ex = (s.d_dx(x, t) - (1 / (2 * h)) * (s.value(x + h, t) - s.value(x - h, t))).norm();
      const double et = (s.d_dt(x, t) - (1 / (2 * h)) * (s.value(x, t + h) - s.value(x, t - h))).norm();
      const double exx =
          (s.d2_dx2(x, t) - (1 / (h * h)) * (s.value(x + h, t) - 2.0 * s.value(x, t) + s.value(x - h, t))).norm();
      if (prev_x > 0) {
        CHECK(std::log2(prev_x / ex) == doctest::Approx(2.0).epsilon(0.05));
        CHECK(std::log2(prev_t / et) == doctest::Approx(2.0).epsilon(0.05));
        CHECK(std::log2(prev_xx / exx) == doctest::Approx(2.0).epsilon(0.05));
      }
      prev_x = ex, prev_t = et, prev_xx = exx;
    }
  }
}
