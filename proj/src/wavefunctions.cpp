#include "cavity/wavefunctions.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "cavity/errors.hpp"
#include "cavity/quadrature.hpp"

namespace cavity {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kNormTol = 1e-13;

void require_inside(const SolutionFamily& sol, double x) {
  const double half = 0.5 * sol.model.ell;
  if (std::abs(x) > half * (1.0 + 1e-14)) {
    std::ostringstream msg;
    msg << "x = " << x << " lies outside the well [-" << half << ", " << half << "]";
    throw DomainError(msg.str());
  }
}

double integrate_sq(const std::function<Complex(double)>& f, double ell) {
  return quadrature([&](double x) { return std::norm(f(x)); }, -0.5 * ell, 0.5 * ell, kNormTol).value;
}

// Closed-form shape (without prefactor) and its prefactor.
struct ClosedForm {
  std::function<Complex(double)> shape;
  double prefactor = kNaN;
  double prefactor_k0 = kNaN;
};

ClosedForm closed_form(const SolutionFamily& sol) {
  const double ell = sol.model.ell;
  const Complex K = sol.K.value();
  const double k0 = std::abs(sol.K.K0);
  const double k1 = std::abs(sol.K.K1);
  const bool even = sol.parity == Parity::Even;
  ClosedForm p;
  switch (sol.kind) {
  case FamilyKind::I: {
    const double k = sol.N * kPi / ell;
    p.shape = even ? std::function<Complex(double)>([k](double x) { return Complex(std::cos(k * x)); })
                   : std::function<Complex(double)>([k](double x) { return Complex(std::sin(k * x)); });
    p.prefactor = std::sqrt(2.0 / ell);
    break;
  }
  case FamilyKind::II: {
    const double k = sol.N * kPi / ell;
    const double ct = std::cos(sol.theta), st = std::sin(sol.theta), half = 0.5 * sol.omega;
    p.shape = [=](double x) {
      return ct * std::exp(kI * (k * x + half)) + st * std::exp(-kI * (k * x + half));
    };
    p.prefactor = 1.0 / std::sqrt(ell);
    break;
  }
  case FamilyKind::IIIProp:
    if (even) {
      p.shape = [k1](double x) { return Complex(std::cos(k1 * x)); };
      p.prefactor = std::sqrt(2.0 * k1 / (k1 * ell + std::sin(k1 * ell)));
    } else {
      p.shape = [k1](double x) { return Complex(std::sin(k1 * x)); };
      p.prefactor = std::sqrt(2.0 * k1 / (k1 * ell + std::cos(k1 * ell)));
    }
    break;
  case FamilyKind::IIIEvan:
    if (even) {
      p.shape = [k0](double x) { return Complex(std::cosh(k0 * x)); };
      p.prefactor = std::sqrt(2.0 * k1 / (k1 * ell + std::sinh(k1 * ell)));
      p.prefactor_k0 = std::sqrt(2.0 * k0 / (k0 * ell + std::sinh(k0 * ell)));
    } else {
      p.shape = [k0](double x) { return Complex(std::sinh(k0 * x)); };
      p.prefactor = std::sqrt(2.0 * k1 / (k1 * ell + std::cosh(k1 * ell)));
      p.prefactor_k0 = std::sqrt(2.0 * k0 / (k0 * ell + std::cosh(k0 * ell)));
    }
    break;
  case FamilyKind::IIICombined: {
    const double s = even ? 1.0 : -1.0;
    p.shape = [K, s](double x) { return std::exp(K * x) + s * std::exp(-K * x); };
    const double c0 = sol.K.K0 * ell / 2.0, c1 = sol.K.K1 * ell / 2.0;
    p.prefactor = even ? 1.0 / (2.0 * std::sqrt(std::sin(c1) + std::sinh(c0)))
                       : 1.0 / (2.0 * std::sqrt(std::cos(c1) + std::cosh(c0)));
    break;
  }
  case FamilyKind::PhaseGeneralized: {
    const Complex A = sol.A, B = sol.B;
    p.shape = [K, A, B](double x) { return A * std::exp(K * x) + B * std::exp(-K * x); };
    break;
  }
  }
  return p;
}

SolutionFamily base_family(const CavityModel& model, FamilyKind kind) {
  model.validate();
  SolutionFamily sol;
  sol.kind = kind;
  sol.model = model;
  return sol;
}

void require_positive_n(int N) {
  if (N < 1) throw DomainError("quantum number N must be >= 1");
}

} // namespace

const char* to_string(FamilyKind k) {
  switch (k) {
  case FamilyKind::I: return "I";
  case FamilyKind::II: return "II";
  case FamilyKind::IIIProp: return "IIIProp";
  case FamilyKind::IIIEvan: return "IIIEvan";
  case FamilyKind::IIICombined: return "IIICombined";
  case FamilyKind::PhaseGeneralized: return "PhaseGeneralized";
  }
  return "?";
}

const char* to_string(Parity p) { return p == Parity::Even ? "even" : "odd"; }

FamilyKind family_kind_from_string(const std::string& s) {
  for (FamilyKind k : {FamilyKind::I, FamilyKind::II, FamilyKind::IIIProp, FamilyKind::IIIEvan,
                       FamilyKind::IIICombined, FamilyKind::PhaseGeneralized})
    if (s == to_string(k)) return k;
  throw ConfigError("unknown family kind '" + s + "'");
}

Parity parity_from_string(const std::string& s) {
  if (s == "even") return Parity::Even;
  if (s == "odd") return Parity::Odd;
  throw ConfigError("unknown parity '" + s + "' (expected even or odd)");
}

SolutionFamily make_solution_I(const CavityModel& model, int N) {
  require_positive_n(N);
  SolutionFamily sol = base_family(model, FamilyKind::I);
  sol.N = N;
  sol.parity = N % 2 == 1 ? Parity::Even : Parity::Odd;
  sol.K = {0.0, N * kPi / model.ell};
  const double amp = 0.5 * std::sqrt(2.0 / model.ell);
  if (sol.parity == Parity::Even) {
    sol.A = amp;
    sol.B = amp;
  } else {
    sol.A = -kI * amp;
    sol.B = kI * amp;
  }
  sol.E = energy_for_momentum(sol.K, model, WaveEquation::Complex);
  return sol;
}

SolutionFamily make_solution_II(const CavityModel& model, int N, double theta, double omega) {
  require_positive_n(N);
  if (std::abs(std::sin(theta)) < 1e-12 || std::abs(std::cos(theta)) < 1e-12)
    throw DomainError("distortion parameter theta must keep sin and cos nonzero");
  SolutionFamily sol = base_family(model, FamilyKind::II);
  sol.N = N;
  sol.parity = N % 2 == 1 ? Parity::Even : Parity::Odd;
  sol.theta = theta;
  sol.omega = omega;
  sol.K = {0.0, N * kPi / model.ell};
  const double inv = 1.0 / std::sqrt(model.ell);
  sol.A = inv * std::cos(theta) * std::exp(0.5 * kI * omega);
  sol.B = inv * std::sin(theta) * std::exp(-0.5 * kI * omega);
  sol.E = energy_for_momentum(sol.K, model, WaveEquation::Complex);
  return sol;
}

SolutionFamily make_solution_III(const CavityModel& model, const EnergyParam& E, Parity parity, BranchChoice branch) {
  FamilyKind kind = FamilyKind::IIICombined;
  switch (classify_regime(E, model)) {
  case Regime::Propagating: kind = FamilyKind::IIIProp; break;
  case Regime::NonPropagating: kind = FamilyKind::IIIEvan; break;
  case Regime::Combined: kind = FamilyKind::IIICombined; break;
  }
  SolutionFamily sol = base_family(model, kind);
  sol.parity = parity;
  sol.branch = branch;
  sol.E = E;
  sol.K = complex_dispersion(E, model, branch);
  sol.A = 1.0;
  sol.B = parity == Parity::Even ? 1.0 : -1.0;
  return normalize(sol).family;
}

SolutionFamily phase_generalized(const CavityModel& model, const EnergyParam& E, double omega, BranchChoice branch) {
  SolutionFamily sol = base_family(model, FamilyKind::PhaseGeneralized);
  sol.omega_phase = omega;
  sol.branch = branch;
  sol.E = E;
  sol.K = complex_dispersion(E, model, branch);
  const Complex half = 0.5 * sol.K.value() * model.ell;
  const Complex twist = std::exp(kI * omega);
  Complex A = twist * std::exp(-half) - std::exp(half);
  Complex B = std::exp(-half) - twist * std::exp(half);
  // Global phase: first nonzero coefficient real and positive.
  const Complex lead = std::abs(A) > 0.0 ? A : B;
  if (std::abs(lead) > 0.0) {
    const Complex rot = std::conj(lead) / std::abs(lead);
    A *= rot;
    B *= rot;
  }
  sol.A = A;
  sol.B = B;
  return normalize(sol).family;
}

NormalizationReport normalize(const SolutionFamily& sol) {
  NormalizationReport rep;
  rep.family = sol;
  rep.quadrature_norm_sq = integrate_sq([&](double x) { return eval_phi(sol, x); }, sol.model.ell);
  if (!(std::sqrt(rep.quadrature_norm_sq) >= 1e-14)) {
    std::ostringstream msg;
    msg << "family " << to_string(sol.kind) << " has vanishing norm";
    throw DegenerateNormError(msg.str());
  }

  const ClosedForm cf = closed_form(sol);
  rep.quadrature_prefactor = 1.0 / std::sqrt(integrate_sq(cf.shape, sol.model.ell));
  rep.closed_form_prefactor = cf.prefactor;
  rep.closed_form_prefactor_k0 = cf.prefactor_k0;
  rep.ratio = rep.quadrature_prefactor / cf.prefactor;

  // The quantized prefactors sqrt(2/ell) and 1/sqrt(ell) are exact.
  if (!sol.quantized()) {
    const double scale = 1.0 / std::sqrt(rep.quadrature_norm_sq);
    rep.family.A *= scale;
    rep.family.B *= scale;
  }
  return rep;
}

Complex eval_phi(const SolutionFamily& sol, double x) {
  const Complex K = sol.K.value();
  return sol.A * std::exp(K * x) + sol.B * std::exp(-K * x);
}

Complex time_factor(const SolutionFamily& sol, double t) {
  return std::exp(-sol.E.value() * (t / sol.model.hbar));
}

Complex eval_psi(const SolutionFamily& sol, double x, double t, bool strict) {
  if (strict)
    require_inside(sol, x);
  else if (std::abs(x) > 0.5 * sol.model.ell)
    return {};
  return eval_phi(sol, x) * time_factor(sol, t);
}

Complex eval_dpsi_dx(const SolutionFamily& sol, double x, double t) {
  require_inside(sol, x);
  const Complex K = sol.K.value();
  return K * (sol.A * std::exp(K * x) - sol.B * std::exp(-K * x)) * time_factor(sol, t);
}

Complex eval_d2psi_dx2(const SolutionFamily& sol, double x, double t) {
  const Complex K = sol.K.value();
  return K * K * eval_psi(sol, x, t);
}

Complex eval_dpsi_dt(const SolutionFamily& sol, double x, double t) {
  return -(sol.E.value() / sol.model.hbar) * eval_psi(sol, x, t);
}

BoundaryResidual boundary_residual(const SolutionFamily& sol) {
  const double half = 0.5 * sol.model.ell;
  const Complex left = eval_psi(sol, -half, 0.0);
  const Complex right = eval_psi(sol, half, 0.0);
  return {std::abs(left - right), std::abs(left + right), std::abs(std::norm(left) - std::norm(right))};
}

double orthogonality(const SolutionFamily& a, const SolutionFamily& b) {
  const bool both_I = a.kind == FamilyKind::I && b.kind == FamilyKind::I;
  const bool both_II = a.kind == FamilyKind::II && b.kind == FamilyKind::II && a.theta == b.theta &&
                       a.omega == b.omega;
  if (!both_I && !both_II)
    throw IncompatibleFamilies("orthogonality needs two kind I families or two kind II families with equal "
                               "distortion parameters");
  if (a.model.ell != b.model.ell) throw IncompatibleFamilies("families live in cavities of different length");
  const double half = 0.5 * a.model.ell;
  return quadrature([&](double x) { return (std::conj(eval_phi(a, x)) * eval_phi(b, x)).real(); }, -half, half,
                    kNormTol)
      .value;
}

QuatLift lift_family(const SolutionFamily& base, const CavityModel& model, WaveEquation which, Sign energy_branch) {
  model.validate();
  if (which == WaveEquation::Complex) throw DomainError("a quaternionic lift needs the left or right equation");
  if (model.ell != base.model.ell) throw DomainError("lift must keep the cavity length of the base family");
  QuatLift lift;
  lift.equation = which;
  lift.base = base;
  lift.base.model = model;
  lift.base.E = energy_for_momentum(base.K, model, which, energy_branch);
  const Complex lambda = momentum_eigenvalue(base.K, model);
  lift.Y0 = coupling_ratio_for(lambda, lift.base.E, model, which);
  const double res = eigen_residual(base.K, lift.Y0, lift.base.E, model, which);
  if (!(res <= 1e-10 * std::max(1.0, std::abs(lambda) + std::abs(lift.base.E.value()) + std::abs(model.U0()) +
                                          std::abs(model.U1())))) {
    std::ostringstream msg;
    msg << "lift eigenpair inconsistent (residual " << res << ")";
    throw EigenConsistencyError(msg.str());
  }
  return lift;
}

Quaternion eval_quat_psi(const QuatLift& lift, double x, double t, bool strict) {
  const Complex psi = eval_psi(lift.base, x, t, strict);
  const double c = lift.normalizer();
  return Quaternion::from_pair(c * psi, c * lift.Y0 * std::conj(psi));
}

BoundaryResidual boundary_residual(const QuatLift& lift) {
  const double half = 0.5 * lift.base.model.ell;
  const Quaternion left = eval_quat_psi(lift, -half, 0.0);
  const Quaternion right = eval_quat_psi(lift, half, 0.0);
  return {(left - right).norm(), (left + right).norm(), std::abs(left.norm_sq() - right.norm_sq())};
}

} // namespace cavity
