#pragma once

// Real-Hilbert-space expectation values
//
//   <O> = 1/2 int [ Psi^dagger (O Psi) + (O Psi)^dagger Psi ] dx,
//
// evaluated by Romberg quadrature on closed-form states with analytic
// derivatives. For quaternion-valued integrands q + conj(q) = 2 Re q, so the
// functional is the scalar part of conj(Psi) (O Psi).

#include "cavity/state.hpp"

namespace cavity {

enum class Operator { Identity, Energy, Momentum, MomentumSquared, Potential, Position };

const char* to_string(Operator op);

inline constexpr double kExpectationTol = 1e-11;

/// O applied to the state at (x, t). Momentum is -hbar i d/dx with i on the
/// left. Energy is hbar i d/dt with i on the left for complex states and
/// left lifts, and hbar (d/dt Psi) i for right lifts.
Quaternion apply_operator(const State& s, Operator op, double x, double t);

/// Symmetrized real inner product 1/2 int [Re(conj(a) O b) + Re(conj(b) O a)].
/// Throws DomainError for states on different models and NonConvergence when
/// the quadrature misses `tol`.
double real_inner(const State& a, const State& b, Operator op, double t, double tol = kExpectationTol);

double expectation(const State& s, Operator op, double t, double tol = kExpectationTol);

/// E1 exp(2 V1 t / hbar). Requires E0 = -V1 (DomainError otherwise).
double expect_energy_trajectory(const SolutionFamily& sol, double t);

/// cos(N pi) ell sin(2 theta) sin(omega) / (2 N pi) exp(2 V1 t / hbar).
double solutionII_position(int N, double theta, double omega, double V1, double t, const CavityModel& model);

struct DensityPair {
  double rho = 0.0;    // |psi0|^2 - |psi1|^2
  double varrho = 0.0; // |psi0|^2 + |psi1|^2
};

/// Densities by component expansion of the lift.
DensityPair densities(const QuatLift& lift, double x, double t);
DensityPair densities(const State& s, double x, double t);

/// rho / varrho for a normalized lift, (1 - |Y0|^2) / (1 + |Y0|^2).
double density_ratio(Complex Y0);

struct ExpectationSet {
  double identity = 0.0;
  double energy = 0.0;
  double momentum = 0.0;
  double momentum_sq = 0.0;
  double potential = 0.0;
  double position = 0.0;
};

ExpectationSet expectations(const State& s, double t, double tol = kExpectationTol);

/// |<E> - <p^2>/2m - <V>| from the definitions.
double energy_conservation_residual(const State& s, double t, double tol = kExpectationTol);

/// Predictions of the density-weighted expectation table for a single
/// family or lift: <E> = E1 int rho (left i) or E1 int varrho (right i),
/// <p^2> = hbar^2 (K1^2 - K0^2) int varrho, <V> = V0 int varrho.
struct TablePrediction {
  double int_rho = 0.0;
  double int_varrho = 0.0;
  double energy = 0.0;
  double momentum_sq = 0.0;
  double potential = 0.0;
  double residual = 0.0; // |energy - momentum_sq/2m - potential|
};

/// Throws DomainError for combinations.
TablePrediction expectation_table(const State& s, double t, double tol = kExpectationTol);

} // namespace cavity
