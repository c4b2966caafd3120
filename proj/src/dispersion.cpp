#include "cavity/dispersion.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cavity/errors.hpp"

namespace cavity {

namespace {

double sgn(double v) { return v < 0.0 ? -1.0 : 1.0; }

double norm_inf(const Matrix2& m) {
  double s = 0.0;
  for (const auto& row : m.m)
    for (const auto& v : row) s = std::max(s, std::abs(v));
  return s;
}

// Roots of w^2 + b w + c = 0 without cancellation.
std::array<Complex, 2> solve_quadratic(Complex b, Complex c) {
  Complex s = std::sqrt(b * b - 4.0 * c);
  if ((std::conj(b) * s).real() < 0.0) s = -s;
  const Complex q = -0.5 * (b + s);
  if (q == Complex{}) return {Complex{}, -b};
  return {q, c / q};
}

// sqrt(-alpha - i beta) = X + iY on the principal branch, with
// X = sqrt((h - alpha)/2), |Y| = R = sqrt((h + alpha)/2), h = hypot(alpha, beta).
struct LeftRadicals {
  double X = 0.0;
  double R = 0.0;
  double Y = 0.0;
};

LeftRadicals left_radicals(const AlphaBeta& ab) {
  const double h = std::hypot(ab.alpha, ab.beta);
  LeftRadicals r;
  if (ab.alpha > 0.0) {
    r.R = std::sqrt(0.5 * (h + ab.alpha));
    r.X = std::abs(ab.beta) / (2.0 * r.R);
  } else {
    r.X = std::sqrt(0.5 * (h - ab.alpha));
    r.R = r.X > 0.0 ? std::abs(ab.beta) / (2.0 * r.X) : 0.0;
  }
  // beta = 0 with alpha > 0 is a negative real radicand; take +i sqrt(alpha).
  r.Y = ab.beta > 0.0 ? -r.R : r.R;
  return r;
}

// Sign pairing of the closed-form left Y0 that reproduces the eigenvector of the
// eigenvalue V0 + s (X + iY): the X term carries -s, the R term carries
// s sgn(beta) (with beta = 0 treated as negative, matching Y = +R).
std::pair<Sign, Sign> left_pairing(Sign s, double beta) {
  const Sign sx = flip(s);
  const Sign sr = beta > 0.0 ? s : flip(s);
  return {sx, sr};
}

void require_coupling(const CavityModel& model, const char* what) {
  if (model.coupling_sq() == 0.0) {
    std::ostringstream msg;
    msg << what << ": U1 = 0 decouples the components; use complex_dispersion";
    throw ZeroCouplingError(msg.str());
  }
}

double residual_threshold(const Matrix2& m, Complex lambda) {
  return 1e-10 * std::max(1.0, norm_inf(m) + std::abs(lambda));
}

QuatMode finish_mode(WaveEquation which, Complex lambda, Complex y0_closed, const EnergyParam& E,
                     const CavityModel& model, BranchChoice signs) {
  QuatMode mode;
  mode.K = momentum_from_eigenvalue(lambda, model, signs);
  mode.eigenvalue = momentum_eigenvalue(mode.K, model);

  // The closed form is the first matrix row solved for conj(Y0); near the
  // decoupled limit the second row is the well-conditioned one.
  const Matrix2 m = wave_matrix(E, model, which);
  const double row1_den = std::abs(m(0, 1));
  const double row2_den = std::abs(lambda - m(1, 1));
  mode.Y0 = row1_den >= row2_den ? y0_closed : std::conj(m(1, 0) / (lambda - m(1, 1)));

  mode.residual = eigen_residual(mode.K, mode.Y0, E, model, which);
  if (!(mode.residual <= residual_threshold(m, lambda))) {
    std::ostringstream msg;
    msg.precision(17);
    msg << to_string(which) << " eigenpair inconsistent: residual " << mode.residual << " at E = (" << E.E0
        << ", " << E.E1 << ")";
    throw EigenConsistencyError(msg.str());
  }
  return mode;
}

} // namespace

void CavityModel::validate() const {
  auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
  if (!positive(ell)) throw DomainError("cavity length must be positive");
  if (!positive(mass)) throw DomainError("mass must be positive");
  if (!positive(hbar)) throw DomainError("hbar must be positive");
  for (double v : {V0, V1, W0, W1})
    if (!std::isfinite(v)) throw DomainError("potential components must be finite");
}

const char* to_string(Regime r) {
  switch (r) {
  case Regime::Propagating: return "propagating";
  case Regime::NonPropagating: return "non-propagating";
  case Regime::Combined: return "combined";
  }
  return "?";
}

const char* to_string(WaveEquation w) {
  switch (w) {
  case WaveEquation::Complex: return "complex";
  case WaveEquation::QuatLeft: return "left";
  case WaveEquation::QuatRight: return "right";
  }
  return "?";
}

Matrix2 wave_matrix(const EnergyParam& E, const CavityModel& model, WaveEquation which) {
  const Complex iE = kI * E.value();
  const Complex U0 = model.U0();
  const Complex U1 = which == WaveEquation::Complex ? Complex{} : model.U1();
  Matrix2 m;
  m(0, 0) = U0 + iE;
  m(0, 1) = -U1;
  m(1, 0) = std::conj(U1);
  m(1, 1) = which == WaveEquation::QuatRight ? std::conj(U0) + iE : std::conj(U0) - iE;
  return m;
}

Complex momentum_eigenvalue(const MomentumParam& K, const CavityModel& model) {
  const Complex k = K.value();
  return k * k / model.k_scale();
}

MomentumParam momentum_from_eigenvalue(Complex lambda, const CavityModel& model, BranchChoice signs) {
  const double re = model.k_scale() * lambda.real(); // K0^2 - K1^2
  const double im = model.k_scale() * lambda.imag(); // 2 K0 K1
  const double root = std::hypot(re, im);
  double k0sq = 0.0;
  double k1sq = 0.0;
  if (re >= 0.0) {
    k0sq = 0.5 * (root + re);
    k1sq = k0sq > 0.0 ? im * im / (4.0 * k0sq) : 0.0;
  } else {
    k1sq = 0.5 * (root - re);
    k0sq = k1sq > 0.0 ? im * im / (4.0 * k1sq) : 0.0;
  }
  MomentumParam K;
  K.K1 = to_double(signs.k1) * std::sqrt(k1sq);
  if (im != 0.0 && K.K1 != 0.0)
    K.K0 = sgn(im) * sgn(K.K1) * std::sqrt(k0sq);
  else
    K.K0 = to_double(signs.k0) * std::sqrt(k0sq);
  return K;
}

MomentumParam complex_dispersion(const EnergyParam& E, const CavityModel& model, BranchChoice signs) {
  // hbar^2 K^2 / 2m = (V0 - E1) + i (V1 + E0)
  const Complex lambda{model.V0 - E.E1, model.V1 + E.E0};
  return momentum_from_eigenvalue(lambda, model, signs);
}

Regime classify_regime(const EnergyParam& E, const CavityModel& model) {
  if (std::abs(model.V1 + E.E0) > kStationaryTol) return Regime::Combined;
  if (E.E1 < model.V0) return Regime::NonPropagating;
  return Regime::Propagating;
}

ConstraintResidual complex_constraint_residual(const MomentumParam& K, const EnergyParam& E,
                                               const CavityModel& model) {
  const double c = model.k_scale();
  const double lhs1 = K.K0 * K.K0 - K.K1 * K.K1;
  const double rhs1 = c * (model.V0 - E.E1);
  const double lhs2 = 2.0 * K.K0 * K.K1;
  const double rhs2 = c * (model.V1 + E.E0);
  double scale = std::abs(rhs1) + std::abs(rhs2) + K.K0 * K.K0 + K.K1 * K.K1;
  if (scale == 0.0) scale = 1.0;
  return {std::abs(lhs1 - rhs1) / scale, std::abs(lhs2 - rhs2) / scale};
}

AlphaBeta left_alpha_beta(const EnergyParam& E, const CavityModel& model) {
  const double p = E.E0 + model.V1;
  return {p * p - E.E1 * E.E1 + model.coupling_sq(), 2.0 * E.E1 * p};
}

Complex y0_left_closed_form(const EnergyParam& E, const CavityModel& model, Sign sx, Sign sr) {
  const LeftRadicals r = left_radicals(left_alpha_beta(E, model));
  const double p = E.E0 + model.V1;
  const Complex bracket{-E.E1 + to_double(sx) * r.X, -(p + to_double(sr) * r.R)};
  return bracket / std::conj(model.U1());
}

Complex y0_right_closed_form(const EnergyParam& E, const CavityModel& model, Sign outer, Sign inner) {
  const double r = std::sqrt(model.V1 * model.V1 + model.coupling_sq());
  const double bracket = model.V1 + E.E0 + to_double(outer) * (E.E0 + to_double(inner) * r);
  return -kI * bracket / std::conj(model.U1());
}

QuatMode quat_dispersion_left(const EnergyParam& E, const CavityModel& model, BranchChoice signs) {
  require_coupling(model, "quat_dispersion_left");
  const AlphaBeta ab = left_alpha_beta(E, model);
  const LeftRadicals r = left_radicals(ab);
  const double s = to_double(signs.inner);
  // K0^2 = (m/hbar^2)[V0 + sX + sqrt((V0 + sX)^2 + R^2)], K1^2 likewise.
  const Complex lambda{model.V0 + s * r.X, s * r.Y};
  const auto [sx, sr] = left_pairing(signs.inner, ab.beta);
  return finish_mode(WaveEquation::QuatLeft, lambda, y0_left_closed_form(E, model, sx, sr), E, model, signs);
}

QuatMode quat_dispersion_right(const EnergyParam& E, const CavityModel& model, BranchChoice signs) {
  require_coupling(model, "quat_dispersion_right");
  const double r = std::sqrt(model.V1 * model.V1 + model.coupling_sq());
  const double s = to_double(signs.inner);
  // K0^2 = (m/hbar^2)[V0 - E1 + sqrt((V0 - E1)^2 + (E0 + s r)^2)]
  const Complex lambda{model.V0 - E.E1, E.E0 + s * r};
  return finish_mode(WaveEquation::QuatRight, lambda, y0_right_closed_form(E, model, Sign::Minus, signs.inner), E,
                     model, signs);
}

QuatMode quat_dispersion(WaveEquation which, const EnergyParam& E, const CavityModel& model, BranchChoice signs) {
  switch (which) {
  case WaveEquation::QuatLeft: return quat_dispersion_left(E, model, signs);
  case WaveEquation::QuatRight: return quat_dispersion_right(E, model, signs);
  case WaveEquation::Complex: break;
  }
  QuatMode mode;
  mode.K = complex_dispersion(E, model, signs);
  mode.eigenvalue = momentum_eigenvalue(mode.K, model);
  mode.residual = eigen_residual(mode.K, {}, E, model, WaveEquation::Complex);
  return mode;
}

std::vector<Y0Candidate> y0_candidates(WaveEquation which, const EnergyParam& E, const CavityModel& model,
                                       BranchChoice signs) {
  require_coupling(model, "y0_candidates");
  MomentumParam K;
  if (which == WaveEquation::QuatLeft) {
    const LeftRadicals r = left_radicals(left_alpha_beta(E, model));
    const double s = to_double(signs.inner);
    K = momentum_from_eigenvalue({model.V0 + s * r.X, s * r.Y}, model, signs);
  } else {
    const double r = std::sqrt(model.V1 * model.V1 + model.coupling_sq());
    K = momentum_from_eigenvalue({model.V0 - E.E1, E.E0 + to_double(signs.inner) * r}, model, signs);
  }
  std::vector<Y0Candidate> out;
  for (Sign a : {Sign::Plus, Sign::Minus}) {
    for (Sign b : {Sign::Plus, Sign::Minus}) {
      Y0Candidate c{a, b, {}, 0.0};
      c.Y0 = which == WaveEquation::QuatLeft ? y0_left_closed_form(E, model, a, b)
                                             : y0_right_closed_form(E, model, a, b);
      c.residual = eigen_residual(K, c.Y0, E, model, which);
      out.push_back(c);
    }
  }
  return out;
}

double eigen_residual(const MomentumParam& K, Complex Y0, const EnergyParam& E, const CavityModel& model,
                      WaveEquation which) {
  const Matrix2 m = wave_matrix(E, model, which);
  const Complex lambda = momentum_eigenvalue(K, model);
  const Complex v0{1.0, 0.0};
  const Complex v1 = std::conj(Y0);
  const Complex r0 = m(0, 0) * v0 + m(0, 1) * v1 - lambda * v0;
  const Complex r1 = m(1, 0) * v0 + m(1, 1) * v1 - lambda * v1;
  return std::sqrt(std::norm(r0) + std::norm(r1)) / std::sqrt(1.0 + std::norm(v1));
}

Complex coupling_ratio_for(Complex lambda, const EnergyParam& E, const CavityModel& model, WaveEquation which) {
  const Matrix2 m = wave_matrix(E, model, which);
  const Complex row1_den = m(0, 1);
  const Complex row2_den = lambda - m(1, 1);
  if (row1_den == Complex{} && row2_den == Complex{}) return {};
  if (std::abs(row1_den) >= std::abs(row2_den)) return std::conj((lambda - m(0, 0)) / row1_den);
  return std::conj(m(1, 0) / row2_den);
}

EnergyParam energy_for_momentum(const MomentumParam& K, const CavityModel& model, WaveEquation which, Sign branch) {
  const Complex lambda = momentum_eigenvalue(K, model);
  auto to_energy = [](Complex w) { return EnergyParam{w.imag(), -w.real()}; }; // E = -i w
  if (which == WaveEquation::Complex || model.coupling_sq() == 0.0) {
    // lambda = U0 + iE
    return to_energy(lambda - model.U0());
  }
  const Complex P = model.U0() - lambda;
  const Complex Q = std::conj(model.U0()) - lambda;
  const double u2 = model.coupling_sq();
  std::array<Complex, 2> roots;
  if (which == WaveEquation::QuatLeft)
    roots = solve_quadratic(-(Q - P), -(P * Q + u2)); // (P + w)(Q - w) + |U1|^2 = 0
  else
    roots = solve_quadratic(P + Q, P * Q + u2); // (P + w)(Q + w) + |U1|^2 = 0
  EnergyParam a = to_energy(roots[0]);
  EnergyParam b = to_energy(roots[1]);
  const double scale = std::max({1.0, std::abs(a.E1), std::abs(b.E1)});
  const bool b_first = std::abs(a.E1 - b.E1) > 1e-12 * scale ? b.E1 > a.E1 : b.E0 > a.E0;
  if (b_first) std::swap(a, b);
  return branch == Sign::Plus ? a : b;
}

} // namespace cavity
