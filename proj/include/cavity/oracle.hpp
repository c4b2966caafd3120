#pragma once

// Independent numerical checks of the closed forms: finite-difference PDE
// residuals, a Dirichlet grid eigenvalue solver and a Crank-Nicolson stepper
// for the complex and the two coupled quaternionic systems.
//
// Grids are cell-vertex and include both walls: x_i = -ell/2 + i h,
// h = ell/(n-1).

#include <functional>
#include <vector>

#include "cavity/state.hpp"

namespace cavity {

struct Grid1D {
  int n_points = 3;
  double ell = 1.0;

  double spacing() const { return ell / (n_points - 1); }
  double x(int i) const;
  /// Same interval, spacing halved (2n - 1 points).
  Grid1D refined() const { return {2 * n_points - 1, ell}; }
};

/// Throws DomainError unless n_points >= 3 and ell > 0.
Grid1D make_grid(double ell, int n_points);

struct GridState {
  Grid1D grid;
  double t = 0.0;
  std::vector<Quaternion> values;
};

GridState sample(const State& s, const Grid1D& grid, double t);

/// Trapezoid rule for int varrho dx.
double discrete_norm_sq(const GridState& g);

/// max_i |a_i - b_i| (quaternion modulus). Grids must match.
double max_deviation(const GridState& a, const GridState& b);

struct ResidualReport {
  double l2 = 0.0;   // sqrt(h sum |R_i|^2) over interior nodes
  double linf = 0.0;
  double convergence_order = 0.0; // NaN when measured on a single grid
};

/// Time step used by the residual: proportional to the grid spacing so both
/// truncation errors shrink at second order together.
inline constexpr double kResidualDtRatio = 0.5;

/// Residual of `which` on one grid, central differences in x and t.
ResidualReport residual_on_grid(const State& s, WaveEquation which, const Grid1D& grid, double t);

/// Residual on `grid` with the order measured against grid.refined().
ResidualReport pde_residual(const State& s, WaveEquation which, const Grid1D& grid, double t);

struct RefinementStudy {
  std::vector<int> n_points;
  std::vector<ResidualReport> levels;
  std::vector<double> orders; // between consecutive levels

  bool monotone() const;
  bool orders_within(double lo, double hi) const;
};

/// `refinements` successive halvings starting from base_points.
RefinementStudy refinement_study(const State& s, WaveEquation which, int base_points, int refinements, double t);

/// Lowest n_levels eigenvalues of -(hbar^2/2m) d^2/dx^2 + V0 with zero
/// walls on an n_points grid, ascending. Requires a complex model with
/// V1 = 0 (DomainError otherwise).
std::vector<double> dirichlet_eigs(const CavityModel& model, int n_levels, int n_points);

/// (4 E(h/2) - E(h)) / 3 from grids of n_points and 2 n_points - 1.
std::vector<double> dirichlet_eigs_extrapolated(const CavityModel& model, int n_levels, int n_points);

using BoundaryFn = std::function<Quaternion(double x, double t)>;

/// Crank-Nicolson from initial.t to initial.t + t_final. The quaternionic
/// systems are stepped in the pair (psi0, conj psi1), in which the
/// conjugate coupling is linear. Wall values come from `boundary` (zero when
/// empty). dt is shrunk so that a whole number of steps fits. Throws
/// SingularStep if the implicit system cannot be factored.
GridState evolve(const GridState& initial, WaveEquation which, const CavityModel& model, double t_final,
                 double dt, const BoundaryFn& boundary = {});

struct EvolveComparison {
  GridState final_state;
  double max_deviation = 0.0; // against the closed form at the final time
  double norm_initial = 0.0;
  double norm_final = 0.0;
  double norm_ratio = 0.0;
  double expected_norm_ratio = 0.0; // exp(-2 E0 t / hbar), = exp(2 V1 t / hbar) when E0 = -V1
};

/// Samples `s` at t = 0, evolves with n_steps steps and compares.
EvolveComparison evolve_and_compare(const State& s, int n_points, int n_steps, double t_final,
                                    bool analytic_boundary = false);

} // namespace cavity
