#pragma once

// Analytic wave-function families of the cavity and their quaternionic lifts.
//
// Every family has the two-exponential form
//
//   psi(x, t) = (A e^{Kx} + B e^{-Kx}) exp[-(E/hbar) t],   |x| <= ell/2,
//
// and is stored as that closed form (never as samples), so evaluation and
// derivatives are exact to rounding at any (x, t).

#include <optional>
#include <string>

#include "cavity/algebra.hpp"
#include "cavity/dispersion.hpp"

namespace cavity {

enum class FamilyKind { I, II, IIIProp, IIIEvan, IIICombined, PhaseGeneralized };
enum class Parity { Even, Odd };

const char* to_string(FamilyKind k);
const char* to_string(Parity p);
FamilyKind family_kind_from_string(const std::string& s);
Parity parity_from_string(const std::string& s);

struct SolutionFamily {
  FamilyKind kind = FamilyKind::I;
  int N = 1;                     // kinds I, II
  Parity parity = Parity::Even;  // kinds I, III
  double theta = 0.0;            // kind II distortion
  double omega = 0.0;            // kind II distortion
  double omega_phase = 0.0;      // phase-generalized boundary twist
  BranchChoice branch{};         // kinds III, phase-generalized
  EnergyParam E;
  MomentumParam K;
  Complex A;
  Complex B;
  CavityModel model;

  bool quantized() const { return kind == FamilyKind::I || kind == FamilyKind::II; }
};

/// psi_N = sqrt(2/ell) cos(N pi x/ell) for odd N, sqrt(2/ell) sin(N pi x/ell)
/// for even N. Energy from the complex dispersion: E1 = E_N, E0 = -V1.
SolutionFamily make_solution_I(const CavityModel& model, int N);

/// (1/sqrt(ell)) (cos T e^{i(N pi x/ell + W/2)} + sin T e^{-i(N pi x/ell + W/2)}).
/// Throws DomainError when sin T or cos T vanishes.
SolutionFamily make_solution_II(const CavityModel& model, int N, double theta, double omega);

/// Unquantized family with A = +-B. The regime (IIIProp, IIIEvan,
/// IIICombined) follows from classify_regime(E, model); K from
/// complex_dispersion. Amplitude normalized by quadrature.
SolutionFamily make_solution_III(const CavityModel& model, const EnergyParam& E, Parity parity,
                                 BranchChoice branch = {});

/// psi(-ell/2) = psi(ell/2) e^{i omega}; the exponent symbol of the two-term
/// form is taken to be the momentum K. Normalized by quadrature.
SolutionFamily phase_generalized(const CavityModel& model, const EnergyParam& E, double omega,
                                 BranchChoice branch = {});

struct NormalizationReport {
  SolutionFamily family;
  double quadrature_norm_sq = 0.0;      // int |psi|^2 before scaling
  double quadrature_prefactor = 0.0;    // prefactor implied by quadrature
  double closed_form_prefactor = 0.0;   // closed-form prefactor, NaN when not defined
  double closed_form_prefactor_k0 = 0.0; // closed-form hyperbolic forms with K0 in place of K1
  double ratio = 0.0;                   // quadrature / closed form
};

/// Rescales the amplitudes so that int |psi(x,0)|^2 dx = 1 and reports the
/// comparison with the closed-form normalization constant. Kinds I and II keep
/// their exact analytic prefactors. Throws DegenerateNormError if the
/// quadrature norm is below 1e-14.
NormalizationReport normalize(const SolutionFamily& sol);

/// Evaluates psi at (x, t). Throws DomainError when |x| > ell/2 in strict
/// mode; otherwise returns 0 outside the well.
Complex eval_psi(const SolutionFamily& sol, double x, double t, bool strict = true);
Complex eval_phi(const SolutionFamily& sol, double x);
Complex eval_dpsi_dx(const SolutionFamily& sol, double x, double t);
Complex eval_d2psi_dx2(const SolutionFamily& sol, double x, double t);
Complex eval_dpsi_dt(const SolutionFamily& sol, double x, double t);
/// exp[-(E/hbar) t]
Complex time_factor(const SolutionFamily& sol, double t);

struct BoundaryResidual {
  double symmetric = 0.0;     // |psi(-l/2) - psi(l/2)|
  double antisymmetric = 0.0; // |psi(-l/2) + psi(l/2)|
  double density = 0.0;       // ||psi(-l/2)|^2 - |psi(l/2)|^2|
};
BoundaryResidual boundary_residual(const SolutionFamily& sol);

/// Real inner product int Re(conj(phi_a) phi_b) dx of the spatial parts.
/// Requires both kind I, or both kind II with equal distortion parameters.
double orthogonality(const SolutionFamily& a, const SolutionFamily& b);

// ---------------------------------------------------------------------------
// Quaternionic lift Psi = (1 + Y0 j) psi / sqrt(1 + |Y0|^2)

struct QuatLift {
  SolutionFamily base;
  Complex Y0;
  WaveEquation equation = WaveEquation::QuatLeft;

  double normalizer() const { return 1.0 / std::sqrt(1.0 + std::norm(Y0)); }
};

/// Lifts `base` into the quaternionic cavity `model`, keeping its spatial
/// part. The energy is re-solved so that hbar^2 K^2/2m is an eigenvalue of
/// the selected 2x2 problem, and Y0 is the matching eigenvector ratio.
QuatLift lift_family(const SolutionFamily& base, const CavityModel& model, WaveEquation which,
                     Sign energy_branch = Sign::Plus);

Quaternion eval_quat_psi(const QuatLift& lift, double x, double t, bool strict = true);

BoundaryResidual boundary_residual(const QuatLift& lift);

} // namespace cavity
