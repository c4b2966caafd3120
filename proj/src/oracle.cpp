#include "cavity/oracle.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/Sparse>
#include <Eigen/SparseLU>
#include <cmath>
#include <limits>
#include <sstream>

#include "cavity/errors.hpp"

namespace cavity {

double Grid1D::x(int i) const {
  if (i == n_points - 1) return 0.5 * ell;
  return -0.5 * ell + i * spacing();
}

Grid1D make_grid(double ell, int n_points) {
  if (n_points < 3) throw DomainError("grid needs at least 3 points");
  if (!(ell > 0.0) || !std::isfinite(ell)) throw DomainError("grid length must be positive");
  return {n_points, ell};
}

GridState sample(const State& s, const Grid1D& grid, double t) {
  GridState g{grid, t, {}};
  g.values.reserve(static_cast<size_t>(grid.n_points));
  for (int i = 0; i < grid.n_points; ++i) g.values.push_back(s.value(grid.x(i), t));
  return g;
}

double discrete_norm_sq(const GridState& g) {
  const auto& v = g.values;
  double sum = 0.5 * (v.front().norm_sq() + v.back().norm_sq());
  for (size_t i = 1; i + 1 < v.size(); ++i) sum += v[i].norm_sq();
  return sum * g.grid.spacing();
}

double max_deviation(const GridState& a, const GridState& b) {
  if (a.values.size() != b.values.size()) throw DomainError("max_deviation: grids differ");
  double m = 0.0;
  for (size_t i = 0; i < a.values.size(); ++i) m = std::max(m, (a.values[i] - b.values[i]).norm());
  return m;
}

namespace {

Quaternion potential_action(WaveEquation which, const CavityModel& model, const Quaternion& psi) {
  if (which == WaveEquation::Complex) return left_mul(model.U0(), psi);
  return Quaternion::from_pair(model.U0(), model.U1()) * psi;
}

double order_between(const ResidualReport& coarse, const ResidualReport& fine) {
  if (!(fine.l2 > 0.0) || !(coarse.l2 > 0.0)) return std::numeric_limits<double>::quiet_NaN();
  return std::log2(coarse.l2 / fine.l2);
}

} // namespace

ResidualReport residual_on_grid(const State& s, WaveEquation which, const Grid1D& grid, double t) {
  const CavityModel& model = s.model();
  const double h = grid.spacing();
  const double dt = kResidualDtRatio * h;
  const double hbar = model.hbar;
  const double kin = hbar * hbar / (2.0 * model.mass);

  double sum_sq = 0.0;
  double linf = 0.0;
  for (int i = 1; i + 1 < grid.n_points; ++i) {
    const double x = grid.x(i);
    const Quaternion centre = s.value(x, t);
    const Quaternion d2 = (1.0 / (h * h)) * (s.value(x + h, t) - 2.0 * centre + s.value(x - h, t));
    const Quaternion dtq = (hbar / (2.0 * dt)) * (s.value(x, t + dt) - s.value(x, t - dt));
    const Quaternion lhs = which == WaveEquation::QuatRight ? right_i(dtq) : left_i(dtq);
    const Quaternion r = lhs - (-kin * d2 + potential_action(which, model, centre));
    const double n = r.norm();
    sum_sq += n * n;
    linf = std::max(linf, n);
  }
  return {std::sqrt(h * sum_sq), linf, std::numeric_limits<double>::quiet_NaN()};
}

ResidualReport pde_residual(const State& s, WaveEquation which, const Grid1D& grid, double t) {
  ResidualReport coarse = residual_on_grid(s, which, grid, t);
  const ResidualReport fine = residual_on_grid(s, which, grid.refined(), t);
  coarse.convergence_order = order_between(coarse, fine);
  return coarse;
}

bool RefinementStudy::monotone() const {
  for (size_t i = 1; i < levels.size(); ++i)
    if (!(levels[i].l2 < levels[i - 1].l2)) return false;
  return !levels.empty();
}

bool RefinementStudy::orders_within(double lo, double hi) const {
  if (orders.empty()) return false;
  for (double p : orders)
    if (!(p >= lo && p <= hi)) return false;
  return true;
}

RefinementStudy refinement_study(const State& s, WaveEquation which, int base_points, int refinements, double t) {
  if (refinements < 1) throw DomainError("refinement study needs at least one refinement");
  RefinementStudy study;
  Grid1D grid = make_grid(s.model().ell, base_points);
  for (int k = 0; k <= refinements; ++k) {
    study.n_points.push_back(grid.n_points);
    study.levels.push_back(residual_on_grid(s, which, grid, t));
    grid = grid.refined();
  }
  for (size_t k = 1; k < study.levels.size(); ++k) {
    const double p = order_between(study.levels[k - 1], study.levels[k]);
    study.orders.push_back(p);
    study.levels[k - 1].convergence_order = p;
  }
  return study;
}

std::vector<double> dirichlet_eigs(const CavityModel& model, int n_levels, int n_points) {
  model.validate();
  if (model.V1 != 0.0 || !model.is_complex())
    throw DomainError("dirichlet_eigs needs a complex model with V1 = 0");
  const Grid1D grid = make_grid(model.ell, n_points);
  const int m = n_points - 2;
  if (n_levels < 1 || n_levels > m) throw DomainError("dirichlet_eigs: n_levels out of range for the grid");

  const double h = grid.spacing();
  const double c = model.hbar * model.hbar / (2.0 * model.mass * h * h);
  Eigen::VectorXd diag = Eigen::VectorXd::Constant(m, 2.0 * c + model.V0);
  Eigen::VectorXd sub = Eigen::VectorXd::Constant(std::max(m - 1, 0), -c);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw NonConvergence("tridiagonal eigen solver failed");
  const Eigen::VectorXd& ev = solver.eigenvalues();
  return {ev.data(), ev.data() + n_levels};
}

std::vector<double> dirichlet_eigs_extrapolated(const CavityModel& model, int n_levels, int n_points) {
  const auto coarse = dirichlet_eigs(model, n_levels, n_points);
  const auto fine = dirichlet_eigs(model, n_levels, 2 * n_points - 1);
  std::vector<double> out(coarse.size());
  for (size_t i = 0; i < out.size(); ++i) out[i] = (4.0 * fine[i] - coarse[i]) / 3.0;
  return out;
}

namespace {

using SpMat = Eigen::SparseMatrix<Complex>;
using Vec = Eigen::VectorXcd;

// Discrete generator H of i hbar z_t = H z on the stacked unknowns. Wall rows
// are left empty; the caller pins them.
struct Generator {
  int n = 0;      // grid points
  int blocks = 1; // 1 for the complex equation, 2 for (psi0, conj psi1)
  std::vector<Eigen::Triplet<Complex>> entries;
};

Generator build_generator(WaveEquation which, const CavityModel& model, const Grid1D& grid) {
  Generator g;
  g.n = grid.n_points;
  g.blocks = which == WaveEquation::Complex ? 1 : 2;
  const double h = grid.spacing();
  const double c = model.hbar * model.hbar / (2.0 * model.mass * h * h);
  const Complex U0 = model.U0();
  const Complex U1 = model.U1();

  // Block (r, s) of H is a * L + b * I, with L the discrete -hbar^2/2m d^2.
  auto add_block = [&](int r, int s, double a, Complex b) {
    for (int i = 1; i + 1 < g.n; ++i) {
      const int row = r * g.n + i;
      const int col = s * g.n + i;
      if (a != 0.0) {
        g.entries.emplace_back(row, col - 1, -a * c);
        g.entries.emplace_back(row, col + 1, -a * c);
      }
      const Complex d = a * 2.0 * c + b;
      if (d != Complex{}) g.entries.emplace_back(row, col, d);
    }
  };

  switch (which) {
  case WaveEquation::Complex:
    add_block(0, 0, 1.0, U0);
    break;
  case WaveEquation::QuatLeft:
    add_block(0, 0, 1.0, U0);
    add_block(0, 1, 0.0, -U1);
    add_block(1, 0, 0.0, -std::conj(U1));
    add_block(1, 1, -1.0, -std::conj(U0));
    break;
  case WaveEquation::QuatRight:
    add_block(0, 0, 1.0, U0);
    add_block(0, 1, 0.0, -U1);
    add_block(1, 0, 0.0, std::conj(U1));
    add_block(1, 1, 1.0, std::conj(U0));
    break;
  }
  return g;
}

Vec pack(const GridState& s, int blocks) {
  const int n = s.grid.n_points;
  Vec z(blocks * n);
  for (int i = 0; i < n; ++i) {
    z[i] = s.values[static_cast<size_t>(i)].a0();
    if (blocks == 2) z[n + i] = std::conj(s.values[static_cast<size_t>(i)].a1());
  }
  return z;
}

void unpack(const Vec& z, int blocks, GridState& s) {
  const int n = s.grid.n_points;
  for (int i = 0; i < n; ++i) {
    const Complex a1 = blocks == 2 ? std::conj(z[n + i]) : Complex{};
    s.values[static_cast<size_t>(i)] = Quaternion::from_pair(z[i], a1);
  }
}

} // namespace

GridState evolve(const GridState& initial, WaveEquation which, const CavityModel& model, double t_final,
                 double dt, const BoundaryFn& boundary) {
  model.validate();
  if (!(dt > 0.0)) throw DomainError("evolve: dt must be positive");
  if (!(t_final >= 0.0)) throw DomainError("evolve: t_final must be non-negative");
  if (static_cast<int>(initial.values.size()) != initial.grid.n_points)
    throw DomainError("evolve: grid state size mismatch");
  if (which == WaveEquation::Complex) {
    for (const auto& q : initial.values)
      if (!q.is_complex()) throw DomainError("evolve: complex equation needs a complex initial state");
  }

  const long steps = std::max(1L, static_cast<long>(std::ceil(t_final / dt - 1e-9)));
  const double step = t_final / static_cast<double>(steps);
  GridState state = initial;
  if (t_final == 0.0) return state;

  const Generator gen = build_generator(which, model, initial.grid);
  const int n = gen.n;
  const int dim = gen.blocks * n;
  const Complex mu = kI * step / (2.0 * model.hbar);

  SpMat H(dim, dim);
  H.setFromTriplets(gen.entries.begin(), gen.entries.end());

  std::vector<Eigen::Triplet<Complex>> a_entries;
  a_entries.reserve(gen.entries.size() + static_cast<size_t>(dim));
  for (const auto& e : gen.entries) a_entries.emplace_back(e.row(), e.col(), mu * e.value());
  for (int k = 0; k < dim; ++k) a_entries.emplace_back(k, k, Complex(1.0));
  SpMat A(dim, dim);
  A.setFromTriplets(a_entries.begin(), a_entries.end());
  A.makeCompressed();

  Eigen::SparseLU<SpMat> lu;
  lu.analyzePattern(A);
  lu.factorize(A);
  if (lu.info() != Eigen::Success) {
    std::ostringstream msg;
    msg << "implicit step matrix could not be factored: " << lu.lastErrorMessage();
    throw SingularStep(msg.str());
  }

  const double x_left = initial.grid.x(0);
  const double x_right = initial.grid.x(n - 1);
  Vec z = pack(state, gen.blocks);
  for (long k = 0; k < steps; ++k) {
    const double t_next = initial.t + step * static_cast<double>(k + 1);
    Vec rhs = z - mu * (H * z);
    Quaternion bl, br;
    if (boundary) {
      bl = boundary(x_left, t_next);
      br = boundary(x_right, t_next);
    }
    rhs[0] = bl.a0();
    rhs[n - 1] = br.a0();
    if (gen.blocks == 2) {
      rhs[n] = std::conj(bl.a1());
      rhs[2 * n - 1] = std::conj(br.a1());
    }
    z = lu.solve(rhs);
    if (lu.info() != Eigen::Success) throw SingularStep("implicit solve failed");
  }
  unpack(z, gen.blocks, state);
  state.t = initial.t + t_final;
  return state;
}

EvolveComparison evolve_and_compare(const State& s, int n_points, int n_steps, double t_final,
                                    bool analytic_boundary) {
  if (n_steps < 1) throw DomainError("evolve_and_compare: n_steps must be >= 1");
  const Grid1D grid = make_grid(s.model().ell, n_points);
  const GridState start = sample(s, grid, 0.0);
  BoundaryFn bc;
  if (analytic_boundary) bc = [&s](double x, double t) { return s.value(x, t); };

  EvolveComparison out;
  out.final_state = evolve(start, s.equation(), s.model(), t_final, t_final / n_steps, bc);
  out.max_deviation = max_deviation(out.final_state, sample(s, grid, t_final));
  out.norm_initial = discrete_norm_sq(start);
  out.norm_final = discrete_norm_sq(out.final_state);
  out.norm_ratio = out.norm_final / out.norm_initial;
  // |exp(-E t/hbar)|^2; a combination falls back to the potential's rate
  double E0 = -s.model().V1;
  if (s.family()) E0 = s.family()->E.E0;
  if (s.as_lift()) E0 = s.as_lift()->base.E.E0;
  out.expected_norm_ratio = std::exp(-2.0 * E0 * t_final / s.model().hbar);
  return out;
}

} // namespace cavity
