#include "cavity/observables.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "cavity/errors.hpp"
#include "cavity/quadrature.hpp"

namespace cavity {

const char* to_string(Operator op) {
  switch (op) {
  case Operator::Identity: return "identity";
  case Operator::Energy: return "energy";
  case Operator::Momentum: return "momentum";
  case Operator::MomentumSquared: return "momentum_sq";
  case Operator::Potential: return "potential";
  case Operator::Position: return "position";
  }
  return "?";
}

Quaternion apply_operator(const State& s, Operator op, double x, double t) {
  const double hbar = s.model().hbar;
  switch (op) {
  case Operator::Identity: return s.value(x, t);
  case Operator::Position: return x * s.value(x, t);
  case Operator::Momentum: return -hbar * left_i(s.d_dx(x, t));
  case Operator::MomentumSquared: return -hbar * hbar * s.d2_dx2(x, t);
  case Operator::Potential: return s.apply_potential(s.value(x, t));
  case Operator::Energy: {
    const Quaternion dt = hbar * s.d_dt(x, t);
    return s.equation() == WaveEquation::QuatRight ? right_i(dt) : left_i(dt);
  }
  }
  return {};
}

double real_inner(const State& a, const State& b, Operator op, double t, double tol) {
  if (!(a.model() == b.model())) throw DomainError("real_inner: states live on different models");
  const auto integrand = [&](double x) {
    const Quaternion ob = apply_operator(b, op, x, t);
    if (&a == &b) return (a.value(x, t).conj() * ob).scalar();
    const Quaternion oa = apply_operator(a, op, x, t);
    return 0.5 * ((a.value(x, t).conj() * ob).scalar() + (b.value(x, t).conj() * oa).scalar());
  };
  const double half = 0.5 * a.model().ell;
  // Absolute floor from the size of the factors, for integrands that cancel pointwise.
  double peak = 0.0;
  for (int i = 0; i <= 32; ++i) {
    const double x = -half + i * (a.model().ell / 32);
    peak = std::max({peak, a.value(x, t).norm() * apply_operator(b, op, x, t).norm(),
                     b.value(x, t).norm() * apply_operator(a, op, x, t).norm()});
  }
  return quadrature(integrand, -half, half, tol, 20, tol * peak * a.model().ell).value;
}

double expectation(const State& s, Operator op, double t, double tol) { return real_inner(s, s, op, t, tol); }

double expect_energy_trajectory(const SolutionFamily& sol, double t) {
  const double scale = std::max(1.0, std::abs(sol.model.V1));
  if (std::abs(sol.E.E0 + sol.model.V1) > 1e-12 * scale)
    throw DomainError("energy trajectory requires E0 = -V1");
  return sol.E.E1 * std::exp(2.0 * sol.model.V1 * t / sol.model.hbar);
}

double solutionII_position(int N, double theta, double omega, double V1, double t, const CavityModel& model) {
  if (N < 1) throw DomainError("solutionII_position: N must be >= 1");
  const double npi = N * std::numbers::pi;
  return std::cos(npi) * model.ell * std::sin(2.0 * theta) * std::sin(omega) / (2.0 * npi) *
         std::exp(2.0 * V1 * t / model.hbar);
}

DensityPair densities(const QuatLift& lift, double x, double t) {
  const Quaternion q = eval_quat_psi(lift, x, t);
  const double n0 = std::norm(q.a0());
  const double n1 = std::norm(q.a1());
  return {n0 - n1, n0 + n1};
}

DensityPair densities(const State& s, double x, double t) {
  const Quaternion q = s.value(x, t);
  const double n0 = std::norm(q.a0());
  const double n1 = std::norm(q.a1());
  return {n0 - n1, n0 + n1};
}

double density_ratio(Complex Y0) {
  const double y = std::norm(Y0);
  return (1.0 - y) / (1.0 + y);
}

ExpectationSet expectations(const State& s, double t, double tol) {
  ExpectationSet e;
  e.identity = expectation(s, Operator::Identity, t, tol);
  e.energy = expectation(s, Operator::Energy, t, tol);
  e.momentum = expectation(s, Operator::Momentum, t, tol);
  e.momentum_sq = expectation(s, Operator::MomentumSquared, t, tol);
  e.potential = expectation(s, Operator::Potential, t, tol);
  e.position = expectation(s, Operator::Position, t, tol);
  return e;
}

double energy_conservation_residual(const State& s, double t, double tol) {
  const double E = expectation(s, Operator::Energy, t, tol);
  const double p2 = expectation(s, Operator::MomentumSquared, t, tol);
  const double V = expectation(s, Operator::Potential, t, tol);
  return std::abs(E - p2 / (2.0 * s.model().mass) - V);
}

TablePrediction expectation_table(const State& s, double t, double tol) {
  const SolutionFamily* fam = s.family();
  const QuatLift* lift = s.as_lift();
  if (!fam && !lift) throw DomainError("expectation table applies to a single family or lift");
  const SolutionFamily& base = fam ? *fam : lift->base;
  const CavityModel& model = s.model();
  const double half = 0.5 * model.ell;

  TablePrediction p;
  p.int_varrho = quadrature([&](double x) { return densities(s, x, t).varrho; }, -half, half, tol).value;
  // rho vanishes identically when |Y0| = 1
  p.int_rho =
      quadrature([&](double x) { return densities(s, x, t).rho; }, -half, half, tol, 20, tol * p.int_varrho).value;

  const double weight = s.equation() == WaveEquation::QuatRight ? p.int_varrho : p.int_rho;
  p.energy = base.E.E1 * weight;
  const double hbar = model.hbar;
  p.momentum_sq = hbar * hbar * (base.K.K1 * base.K.K1 - base.K.K0 * base.K.K0) * p.int_varrho;
  p.potential = model.V0 * p.int_varrho;
  p.residual = std::abs(p.energy - p.momentum_sq / (2.0 * model.mass) - p.potential);
  return p;
}

} // namespace cavity
