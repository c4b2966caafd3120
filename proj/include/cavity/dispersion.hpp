#pragma once

// Dispersion relations of the infinitely deep cavity.
//
// Every wave in the well is built from autonomous modes exp[K x - (E/hbar) t].
// Inserting one into a wave equation turns it into an algebraic relation
// between the complex energy E = E0 + E1 i, the potential and the complex
// momentum K = K0 + K1 i. For the quaternionic equations the relation is a
// 2x2 complex eigenproblem
//
//   M(E, U) (A0, conj(A1))^T = (hbar^2 K^2 / 2m) (A0, conj(A1))^T
//
// whose eigenvector fixes the coupling ratio Y0 through A1 = Y0 conj(A0).

#include <array>
#include <numbers>
#include <vector>

#include "cavity/algebra.hpp"

namespace cavity {

struct CavityModel {
  double ell = std::numbers::pi;
  double mass = 1.0;
  double hbar = 1.0;
  double V0 = 0.0;
  double V1 = 0.0;
  double W0 = 0.0;
  double W1 = 0.0;

  Complex U0() const { return {V0, V1}; }
  Complex U1() const { return {W0, W1}; }
  double coupling_sq() const { return W0 * W0 + W1 * W1; }
  bool is_complex() const { return W0 == 0.0 && W1 == 0.0; }
  /// 2m / hbar^2.
  double k_scale() const { return 2.0 * mass / (hbar * hbar); }

  /// Throws DomainError unless ell, mass and hbar are finite and positive.
  void validate() const;

  bool operator==(const CavityModel&) const = default;
};

struct EnergyParam {
  double E0 = 0.0;
  double E1 = 0.0;
  Complex value() const { return {E0, E1}; }
  bool operator==(const EnergyParam&) const = default;
};

struct MomentumParam {
  double K0 = 0.0;
  double K1 = 0.0;
  Complex value() const { return {K0, K1}; }
  bool operator==(const MomentumParam&) const = default;
};

enum class Sign : int { Plus = 1, Minus = -1 };

inline double to_double(Sign s) { return static_cast<double>(static_cast<int>(s)); }
inline Sign flip(Sign s) { return s == Sign::Plus ? Sign::Minus : Sign::Plus; }

/// Branch selectors. `inner` picks the eigenvalue of the quaternionic 2x2
/// problem; `k0`/`k1` pick square-root signs. When 2 K0 K1 != 0 only `k1` is
/// free, the product constraint then fixes the sign of K0.
struct BranchChoice {
  Sign inner = Sign::Plus;
  Sign k0 = Sign::Plus;
  Sign k1 = Sign::Plus;
  bool operator==(const BranchChoice&) const = default;
};

enum class Regime { Propagating, NonPropagating, Combined };

enum class WaveEquation { Complex, QuatLeft, QuatRight };

const char* to_string(Regime r);
const char* to_string(WaveEquation w);

/// Absolute tolerance on V1 + E0 used to decide stationarity.
inline constexpr double kStationaryTol = 1e-12;

struct Matrix2 {
  std::array<std::array<Complex, 2>, 2> m{};
  const Complex& operator()(int r, int c) const { return m[r][c]; }
  Complex& operator()(int r, int c) { return m[r][c]; }
};

/// The 2x2 matrix acting on (A0, conj(A1)). For WaveEquation::Complex this is
/// the decoupled diag(U0 + iE, conj(U0) - iE), i.e. the left matrix at U1 = 0.
Matrix2 wave_matrix(const EnergyParam& E, const CavityModel& model, WaveEquation which);

/// hbar^2 K^2 / 2m.
Complex momentum_eigenvalue(const MomentumParam& K, const CavityModel& model);

/// Inverts hbar^2 K^2 / 2m = lambda for (K0, K1). K0^2 and K1^2 follow the
/// closed radicals (m/hbar^2)(+-Re + sqrt(Re^2 + Im^2)); the smaller one is
/// taken from the product constraint to avoid cancellation.
MomentumParam momentum_from_eigenvalue(Complex lambda, const CavityModel& model, BranchChoice signs = {});

// ---------------------------------------------------------------------------
// Complex cavity

MomentumParam complex_dispersion(const EnergyParam& E, const CavityModel& model, BranchChoice signs = {});

Regime classify_regime(const EnergyParam& E, const CavityModel& model);

/// Residuals of K0^2 - K1^2 = (2m/hbar^2)(V0 - E1) and 2 K0 K1 = (2m/hbar^2)(V1 + E0),
/// each divided by (2m/hbar^2)(|V0 - E1| + |V1 + E0|) + K0^2 + K1^2.
struct ConstraintResidual {
  double energy = 0.0;
  double continuity = 0.0;
};
ConstraintResidual complex_constraint_residual(const MomentumParam& K, const EnergyParam& E,
                                               const CavityModel& model);

// ---------------------------------------------------------------------------
// Quaternionic cavity

struct QuatMode {
  MomentumParam K;
  Complex Y0;
  Complex eigenvalue; // hbar^2 K^2 / 2m
  double residual = 0.0;
};

/// alpha = (E0 + V1)^2 - E1^2 + |U1|^2 and beta = 2 E1 (E0 + V1).
struct AlphaBeta {
  double alpha = 0.0;
  double beta = 0.0;
};
AlphaBeta left_alpha_beta(const EnergyParam& E, const CavityModel& model);

/// Left-acting i: i hbar dPsi/dt = H Psi. Throws ZeroCouplingError when U1 = 0.
QuatMode quat_dispersion_left(const EnergyParam& E, const CavityModel& model, BranchChoice signs = {});

/// Right-acting i: hbar (dPsi/dt) i = H Psi. Throws ZeroCouplingError when U1 = 0.
QuatMode quat_dispersion_right(const EnergyParam& E, const CavityModel& model, BranchChoice signs = {});

QuatMode quat_dispersion(WaveEquation which, const EnergyParam& E, const CavityModel& model,
                         BranchChoice signs = {});

/// The closed-form coupling ratio for the left equation,
///   Y0 = [-E1 + sx X - i (E0 + V1 + sr R)] / conj(U1),
/// X = sqrt((sqrt(a^2+b^2) - a)/2), R = sqrt((sqrt(a^2+b^2) + a)/2).
Complex y0_left_closed_form(const EnergyParam& E, const CavityModel& model, Sign sx, Sign sr);

/// The closed-form coupling ratio for the right equation,
///   Y0 = -(i / conj(U1)) [V1 + E0 + outer (E0 + inner sqrt(V1^2 + |U1|^2))].
Complex y0_right_closed_form(const EnergyParam& E, const CavityModel& model, Sign outer, Sign inner);

/// Pairing of the closed-form Y0 signs with the eigenvalue branch `inner`.
struct Y0Candidate {
  Sign first = Sign::Plus;
  Sign second = Sign::Plus;
  Complex Y0;
  double residual = 0.0;
};
/// All four sign pairings of the closed-form Y0 for the eigenvalue selected by
/// signs.inner, each scored by eigen_residual.
std::vector<Y0Candidate> y0_candidates(WaveEquation which, const EnergyParam& E, const CavityModel& model,
                                       BranchChoice signs = {});

/// ||M v - (hbar^2 K^2/2m) v|| / ||v|| with v = (1, conj(Y0)).
double eigen_residual(const MomentumParam& K, Complex Y0, const EnergyParam& E, const CavityModel& model,
                      WaveEquation which);

/// Eigenvector ratio Y0 of wave_matrix(E) for a known eigenvalue lambda,
/// computed from whichever matrix row is better conditioned.
Complex coupling_ratio_for(Complex lambda, const EnergyParam& E, const CavityModel& model, WaveEquation which);

/// Inverse problem: the energy E for which hbar^2 K^2/2m is an eigenvalue of
/// wave_matrix(E). The quaternionic equations have two roots, ordered by
/// (E1, E0) descending; `branch` Plus picks the first. With U1 = 0 the
/// complex energy is returned.
EnergyParam energy_for_momentum(const MomentumParam& K, const CavityModel& model, WaveEquation which,
                                Sign branch = Sign::Plus);

} // namespace cavity
