// Exception-to-status translation layer over the C++ core.

#include "cavity/cavity.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include "cavity/errors.hpp"
#include "cavity/io.hpp"
#include "cavity/observables.hpp"
#include "cavity/oracle.hpp"
#include "cavity/spectra.hpp"
#include "cavity/verify.hpp"

using namespace cavity;

struct cavity_model {
  CavityModel model;
};

struct cavity_state {
  StateSpec spec;
  State state;
};

struct cavity_grid {
  GridState grid;
};

namespace {

thread_local std::string g_last_error;

cavity_status fail(cavity_status s, const char* what) {
  g_last_error = what;
  return s;
}

template <class F>
cavity_status guard(F&& body) {
  try {
    body();
    return CAVITY_OK;
  } catch (const DomainError& e) {
    return fail(CAVITY_ERR_DOMAIN, e.what());
  } catch (const ZeroCouplingError& e) {
    return fail(CAVITY_ERR_ZERO_COUPLING, e.what());
  } catch (const DegenerateNormError& e) {
    return fail(CAVITY_ERR_DEGENERATE_NORM, e.what());
  } catch (const IncompatibleFamilies& e) {
    return fail(CAVITY_ERR_INCOMPATIBLE, e.what());
  } catch (const EigenConsistencyError& e) {
    return fail(CAVITY_ERR_EIGEN_CONSISTENCY, e.what());
  } catch (const NonConvergence& e) {
    return fail(CAVITY_ERR_NONCONVERGENCE, e.what());
  } catch (const SingularStep& e) {
    return fail(CAVITY_ERR_SINGULAR_STEP, e.what());
  } catch (const ConfigError& e) {
    return fail(CAVITY_ERR_CONFIG, e.what());
  } catch (const nlohmann::json::exception& e) {
    return fail(CAVITY_ERR_CONFIG, e.what());
  } catch (const std::exception& e) {
    return fail(CAVITY_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(CAVITY_ERR_INTERNAL, "unknown exception");
  }
}

template <class... P>
bool any_null(P... p) {
  return ((p == nullptr) || ...);
}

#define CAVITY_REQUIRE(...)                                                                                        \
  do {                                                                                                             \
    if (any_null(__VA_ARGS__)) return fail(CAVITY_ERR_NULL, "null argument");                                      \
  } while (0)

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

Sign to_sign(int v) {
  if (v == 1) return Sign::Plus;
  if (v == -1) return Sign::Minus;
  throw DomainError("branch signs must be +1 or -1");
}

BranchChoice to_branch(cavity_branch b) { return {to_sign(b.inner), to_sign(b.k0), to_sign(b.k1)}; }

WaveEquation to_equation(cavity_equation e) {
  switch (e) {
  case CAVITY_EQ_COMPLEX: return WaveEquation::Complex;
  case CAVITY_EQ_LEFT: return WaveEquation::QuatLeft;
  case CAVITY_EQ_RIGHT: return WaveEquation::QuatRight;
  }
  throw DomainError("unknown equation selector");
}

Operator to_operator(cavity_operator op) {
  switch (op) {
  case CAVITY_OP_IDENTITY: return Operator::Identity;
  case CAVITY_OP_ENERGY: return Operator::Energy;
  case CAVITY_OP_MOMENTUM: return Operator::Momentum;
  case CAVITY_OP_MOMENTUM_SQ: return Operator::MomentumSquared;
  case CAVITY_OP_POTENTIAL: return Operator::Potential;
  case CAVITY_OP_POSITION: return Operator::Position;
  }
  throw DomainError("unknown operator selector");
}

cavity_quat to_c(const Quaternion& q) { return {q.w(), q.x(), q.y(), q.z()}; }

const SolutionFamily& base_of(const State& s) {
  if (s.family()) return *s.family();
  if (s.as_lift()) return s.as_lift()->base;
  throw DomainError("operation needs a single family or lift, not a combination");
}

} // namespace

extern "C" {

const char* cavity_last_error(void) { return g_last_error.c_str(); }

const char* cavity_status_string(cavity_status s) {
  switch (s) {
  case CAVITY_OK: return "ok";
  case CAVITY_ERR_DOMAIN: return "domain error";
  case CAVITY_ERR_ZERO_COUPLING: return "zero coupling";
  case CAVITY_ERR_DEGENERATE_NORM: return "degenerate norm";
  case CAVITY_ERR_INCOMPATIBLE: return "incompatible families";
  case CAVITY_ERR_EIGEN_CONSISTENCY: return "eigen consistency";
  case CAVITY_ERR_NONCONVERGENCE: return "non-convergence";
  case CAVITY_ERR_SINGULAR_STEP: return "singular step";
  case CAVITY_ERR_CONFIG: return "config error";
  case CAVITY_ERR_NULL: return "null argument";
  case CAVITY_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

void cavity_string_free(char* s) { std::free(s); }

cavity_status cavity_model_create(double ell, double mass, double hbar, double V0, double V1, double W0, double W1,
                                  cavity_model** out) {
  CAVITY_REQUIRE(out);
  return guard([&] {
    CavityModel m{ell, mass, hbar, V0, V1, W0, W1};
    m.validate();
    *out = new cavity_model{m};
  });
}

cavity_status cavity_model_from_json(const char* json, cavity_model** out) {
  CAVITY_REQUIRE(json, out);
  return guard([&] { *out = new cavity_model{model_from_json(nlohmann::json::parse(json))}; });
}

void cavity_model_destroy(cavity_model* m) { delete m; }

cavity_status cavity_complex_dispersion(const cavity_model* m, double E0, double E1, cavity_branch b, double* K0,
                                        double* K1) {
  CAVITY_REQUIRE(m, K0, K1);
  return guard([&] {
    const MomentumParam K = complex_dispersion({E0, E1}, m->model, to_branch(b));
    *K0 = K.K0;
    *K1 = K.K1;
  });
}

cavity_status cavity_classify_regime(const cavity_model* m, double E0, double E1, cavity_regime* out) {
  CAVITY_REQUIRE(m, out);
  return guard([&] {
    switch (classify_regime({E0, E1}, m->model)) {
    case Regime::Propagating: *out = CAVITY_REGIME_PROPAGATING; break;
    case Regime::NonPropagating: *out = CAVITY_REGIME_NON_PROPAGATING; break;
    case Regime::Combined: *out = CAVITY_REGIME_COMBINED; break;
    }
  });
}

cavity_status cavity_quat_dispersion(const cavity_model* m, cavity_equation eq, double E0, double E1,
                                     cavity_branch b, double* K0, double* K1, double* Y0_re, double* Y0_im,
                                     double* residual) {
  CAVITY_REQUIRE(m, K0, K1, Y0_re, Y0_im, residual);
  return guard([&] {
    const WaveEquation w = to_equation(eq);
    if (w == WaveEquation::Complex) throw DomainError("quat_dispersion needs the left or right equation");
    const QuatMode q = quat_dispersion(w, {E0, E1}, m->model, to_branch(b));
    *K0 = q.K.K0;
    *K1 = q.K.K1;
    *Y0_re = q.Y0.real();
    *Y0_im = q.Y0.imag();
    *residual = q.residual;
  });
}

cavity_status cavity_eigen_residual(const cavity_model* m, cavity_equation eq, double E0, double E1, double K0,
                                    double K1, double Y0_re, double Y0_im, double* out) {
  CAVITY_REQUIRE(m, out);
  return guard([&] { *out = eigen_residual({K0, K1}, {Y0_re, Y0_im}, {E0, E1}, m->model, to_equation(eq)); });
}

cavity_status cavity_energy_for_momentum(const cavity_model* m, cavity_equation eq, double K0, double K1, int branch,
                                         double* E0, double* E1) {
  CAVITY_REQUIRE(m, E0, E1);
  return guard([&] {
    const EnergyParam E = energy_for_momentum({K0, K1}, m->model, to_equation(eq), to_sign(branch));
    *E0 = E.E0;
    *E1 = E.E1;
  });
}

cavity_status cavity_levels(const cavity_model* m, int n_max, double* E_complex, double* E_quat) {
  CAVITY_REQUIRE(m, E_complex, E_quat);
  return guard([&] {
    const auto lv = levels(m->model, n_max);
    for (size_t i = 0; i < lv.size(); ++i) {
      E_complex[i] = lv[i].E_complex;
      E_quat[i] = lv[i].E_quat;
    }
  });
}

cavity_status cavity_level_gap(const cavity_model* m, int N, int M, double* gap_complex, double* gap_quat,
                               double* gap_sq_quat) {
  CAVITY_REQUIRE(m, gap_complex, gap_quat, gap_sq_quat);
  return guard([&] {
    if (M < 1 || N < M) throw DomainError("level_gap requires N >= M >= 1");
    const LevelGap g = level_gap(levels(m->model, N), N, M);
    *gap_complex = g.gap_complex;
    *gap_quat = g.gap_quat;
    *gap_sq_quat = g.gap_sq_quat;
  });
}

cavity_status cavity_squared_gap_prediction(const cavity_model* m, int N, int M, double* out) {
  CAVITY_REQUIRE(m, out);
  return guard([&] { *out = squared_gap_prediction(m->model, N, M); });
}

cavity_status cavity_state_from_json(const char* json, cavity_state** out) {
  CAVITY_REQUIRE(json, out);
  return guard([&] {
    StateSpec spec = state_spec_from_json(nlohmann::json::parse(json));
    State st = build_state(spec);
    *out = new cavity_state{std::move(spec), std::move(st)};
  });
}

cavity_status cavity_state_to_json(const cavity_state* s, char** out) {
  CAVITY_REQUIRE(s, out);
  return guard([&] { *out = dup_string(describe_state(s->spec, s->state).dump()); });
}

void cavity_state_destroy(cavity_state* s) { delete s; }

cavity_status cavity_state_equation(const cavity_state* s, cavity_equation* out) {
  CAVITY_REQUIRE(s, out);
  return guard([&] {
    switch (s->state.equation()) {
    case WaveEquation::Complex: *out = CAVITY_EQ_COMPLEX; break;
    case WaveEquation::QuatLeft: *out = CAVITY_EQ_LEFT; break;
    case WaveEquation::QuatRight: *out = CAVITY_EQ_RIGHT; break;
    }
  });
}

cavity_status cavity_state_eval(const cavity_state* s, double x, double t, int strict, cavity_quat* out) {
  CAVITY_REQUIRE(s, out);
  return guard([&] {
    const double half = 0.5 * s->state.model().ell;
    if (!strict && std::abs(x) > half) {
      *out = {0, 0, 0, 0};
      return;
    }
    *out = to_c(s->state.value(x, t));
  });
}

cavity_status cavity_state_densities(const cavity_state* s, double x, double t, double* rho, double* varrho) {
  CAVITY_REQUIRE(s, rho, varrho);
  return guard([&] {
    const DensityPair d = densities(s->state, x, t);
    *rho = d.rho;
    *varrho = d.varrho;
  });
}

cavity_status cavity_boundary_residual(const cavity_state* s, double* symmetric, double* antisymmetric,
                                       double* density) {
  CAVITY_REQUIRE(s, symmetric, antisymmetric, density);
  return guard([&] {
    const BoundaryResidual r =
        s->state.as_lift() ? boundary_residual(*s->state.as_lift()) : boundary_residual(base_of(s->state));
    *symmetric = r.symmetric;
    *antisymmetric = r.antisymmetric;
    *density = r.density;
  });
}

cavity_status cavity_normalization_report(const cavity_state* s, char** out) {
  CAVITY_REQUIRE(s, out);
  return guard([&] {
    const NormalizationReport r = normalize(base_of(s->state));
    const nlohmann::json j = {{"kind", to_string(r.family.kind)},
                              {"quadrature_norm_sq", r.quadrature_norm_sq},
                              {"quadrature_prefactor", r.quadrature_prefactor},
                              {"closed_form_prefactor", r.closed_form_prefactor},
                              {"closed_form_prefactor_k0", r.closed_form_prefactor_k0},
                              {"ratio", r.ratio}};
    *out = dup_string(j.dump());
  });
}

cavity_status cavity_orthogonality(const cavity_state* a, const cavity_state* b, double* out) {
  CAVITY_REQUIRE(a, b, out);
  return guard([&] { *out = orthogonality(base_of(a->state), base_of(b->state)); });
}

cavity_status cavity_expectation(const cavity_state* s, cavity_operator op, double t, double tol, double* out) {
  CAVITY_REQUIRE(s, out);
  return guard([&] { *out = expectation(s->state, to_operator(op), t, tol > 0 ? tol : kExpectationTol); });
}

cavity_status cavity_real_inner(const cavity_state* a, const cavity_state* b, cavity_operator op, double t,
                                double tol, double* out) {
  CAVITY_REQUIRE(a, b, out);
  return guard([&] { *out = real_inner(a->state, b->state, to_operator(op), t, tol > 0 ? tol : kExpectationTol); });
}

cavity_status cavity_energy_conservation_residual(const cavity_state* s, double t, double tol, double* out) {
  CAVITY_REQUIRE(s, out);
  return guard([&] { *out = energy_conservation_residual(s->state, t, tol > 0 ? tol : kExpectationTol); });
}

cavity_status cavity_energy_trajectory(const cavity_state* s, double t, double* out) {
  CAVITY_REQUIRE(s, out);
  return guard([&] {
    if (!s->state.family()) throw DomainError("energy trajectory applies to complex families");
    *out = expect_energy_trajectory(*s->state.family(), t);
  });
}

cavity_status cavity_solution2_position(const cavity_model* m, int N, double theta, double omega, double t,
                                        double* out) {
  CAVITY_REQUIRE(m, out);
  return guard([&] { *out = solutionII_position(N, theta, omega, m->model.V1, t, m->model); });
}

cavity_status cavity_dirichlet_eigs(const cavity_model* m, int n_levels, int n_points, int extrapolate,
                                    double* out) {
  CAVITY_REQUIRE(m, out);
  return guard([&] {
    const auto ev = extrapolate ? dirichlet_eigs_extrapolated(m->model, n_levels, n_points)
                                : dirichlet_eigs(m->model, n_levels, n_points);
    std::copy(ev.begin(), ev.end(), out);
  });
}

cavity_status cavity_pde_study(const cavity_state* s, cavity_equation eq, int base_points, int refinements,
                               double t, char** out) {
  CAVITY_REQUIRE(s, out);
  return guard([&] {
    const RefinementStudy st = refinement_study(s->state, to_equation(eq), base_points, refinements, t);
    nlohmann::json l2 = nlohmann::json::array(), linf = nlohmann::json::array();
    for (const auto& r : st.levels) {
      l2.push_back(r.l2);
      linf.push_back(r.linf);
    }
    const nlohmann::json j = {{"n_points", st.n_points}, {"l2", l2},
                              {"linf", linf},            {"orders", st.orders},
                              {"monotone", st.monotone()}};
    *out = dup_string(j.dump());
  });
}

cavity_status cavity_evolve(const cavity_state* s, int n_points, int n_steps, double t_final, int analytic_boundary,
                            cavity_grid** out, double* max_deviation, double* norm_ratio,
                            double* expected_norm_ratio) {
  CAVITY_REQUIRE(s, out, max_deviation, norm_ratio, expected_norm_ratio);
  return guard([&] {
    EvolveComparison r = evolve_and_compare(s->state, n_points, n_steps, t_final, analytic_boundary != 0);
    *max_deviation = r.max_deviation;
    *norm_ratio = r.norm_ratio;
    *expected_norm_ratio = r.expected_norm_ratio;
    *out = new cavity_grid{std::move(r.final_state)};
  });
}

int cavity_grid_size(const cavity_grid* g) { return g ? g->grid.grid.n_points : 0; }

cavity_status cavity_grid_point(const cavity_grid* g, int i, double* x, cavity_quat* value) {
  CAVITY_REQUIRE(g, x, value);
  return guard([&] {
    if (i < 0 || i >= g->grid.grid.n_points) throw DomainError("grid index out of range");
    *x = g->grid.grid.x(i);
    *value = to_c(g->grid.values[static_cast<size_t>(i)]);
  });
}

void cavity_grid_destroy(cavity_grid* g) { delete g; }

cavity_status cavity_run_verification(const char* options_json, char** report_json, int* all_passed) {
  CAVITY_REQUIRE(report_json, all_passed);
  return guard([&] {
    VerifyOptions opts;
    if (options_json && *options_json) opts = verify_options_from_json(nlohmann::json::parse(options_json));
    const VerifyReport r = run_verification(opts);
    *all_passed = r.all_passed() ? 1 : 0;
    *report_json = dup_string(r.to_json().dump(2));
  });
}

} // extern "C"
