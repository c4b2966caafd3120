/* C interface to the cavity library.
 *
 * Every call returns a cavity_status; on failure the message is available
 * from cavity_last_error() (per thread, valid until the next failing call).
 * Strings returned through char** are owned by the caller and released with
 * cavity_string_free(). Handles are opaque and released with their destroy
 * function; destroying NULL is a no-op.
 */
#ifndef CAVITY_H
#define CAVITY_H

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define CAVITY_API __declspec(dllexport)
#else
#define CAVITY_API __attribute__((visibility("default")))
#endif

typedef enum cavity_status {
  CAVITY_OK = 0,
  CAVITY_ERR_DOMAIN = 1,
  CAVITY_ERR_ZERO_COUPLING = 2,
  CAVITY_ERR_DEGENERATE_NORM = 3,
  CAVITY_ERR_INCOMPATIBLE = 4,
  CAVITY_ERR_EIGEN_CONSISTENCY = 5,
  CAVITY_ERR_NONCONVERGENCE = 6,
  CAVITY_ERR_SINGULAR_STEP = 7,
  CAVITY_ERR_CONFIG = 8,
  CAVITY_ERR_NULL = 9,
  CAVITY_ERR_INTERNAL = 10
} cavity_status;

typedef enum cavity_equation {
  CAVITY_EQ_COMPLEX = 0,
  CAVITY_EQ_LEFT = 1,
  CAVITY_EQ_RIGHT = 2
} cavity_equation;

typedef enum cavity_operator {
  CAVITY_OP_IDENTITY = 0,
  CAVITY_OP_ENERGY = 1,
  CAVITY_OP_MOMENTUM = 2,
  CAVITY_OP_MOMENTUM_SQ = 3,
  CAVITY_OP_POTENTIAL = 4,
  CAVITY_OP_POSITION = 5
} cavity_operator;

typedef enum cavity_regime {
  CAVITY_REGIME_PROPAGATING = 0,
  CAVITY_REGIME_NON_PROPAGATING = 1,
  CAVITY_REGIME_COMBINED = 2
} cavity_regime;

/* w + x i + y j + z k */
typedef struct cavity_quat {
  double w, x, y, z;
} cavity_quat;

/* +1 or -1 each */
typedef struct cavity_branch {
  int inner, k0, k1;
} cavity_branch;

typedef struct cavity_model cavity_model;
typedef struct cavity_state cavity_state;
typedef struct cavity_grid cavity_grid;

CAVITY_API const char* cavity_last_error(void);
CAVITY_API const char* cavity_status_string(cavity_status s);
CAVITY_API void cavity_string_free(char* s);

/* ---- models ---------------------------------------------------------- */

CAVITY_API cavity_status cavity_model_create(double ell, double mass, double hbar, double V0, double V1, double W0,
                                             double W1, cavity_model** out);
/* JSON object with keys ell, mass, hbar, V0, V1, W0, W1 (all optional). */
CAVITY_API cavity_status cavity_model_from_json(const char* json, cavity_model** out);
CAVITY_API void cavity_model_destroy(cavity_model* m);

/* ---- dispersion ------------------------------------------------------ */

CAVITY_API cavity_status cavity_complex_dispersion(const cavity_model* m, double E0, double E1, cavity_branch b,
                                                   double* K0, double* K1);
CAVITY_API cavity_status cavity_classify_regime(const cavity_model* m, double E0, double E1, cavity_regime* out);
/* eq must be CAVITY_EQ_LEFT or CAVITY_EQ_RIGHT. */
CAVITY_API cavity_status cavity_quat_dispersion(const cavity_model* m, cavity_equation eq, double E0, double E1,
                                                cavity_branch b, double* K0, double* K1, double* Y0_re,
                                                double* Y0_im, double* residual);
CAVITY_API cavity_status cavity_eigen_residual(const cavity_model* m, cavity_equation eq, double E0, double E1,
                                               double K0, double K1, double Y0_re, double Y0_im, double* out);
/* branch = +1 picks the root with the larger E1. */
CAVITY_API cavity_status cavity_energy_for_momentum(const cavity_model* m, cavity_equation eq, double K0,
                                                    double K1, int branch, double* E0, double* E1);

/* ---- spectra --------------------------------------------------------- */

/* Fills n_max entries of each array. */
CAVITY_API cavity_status cavity_levels(const cavity_model* m, int n_max, double* E_complex, double* E_quat);
CAVITY_API cavity_status cavity_level_gap(const cavity_model* m, int N, int M, double* gap_complex,
                                          double* gap_quat, double* gap_sq_quat);
CAVITY_API cavity_status cavity_squared_gap_prediction(const cavity_model* m, int N, int M, double* out);

/* ---- states ---------------------------------------------------------- */

/* {"model": {...}, "family": {"kind": "I", "N": 1, ...},
 *  "lift": {"equation": "left", "energy_branch": 1, "y0_perturbation": 0}} */
CAVITY_API cavity_status cavity_state_from_json(const char* json, cavity_state** out);
/* The state description plus derived E, K, amplitudes and Y0. */
CAVITY_API cavity_status cavity_state_to_json(const cavity_state* s, char** out);
CAVITY_API void cavity_state_destroy(cavity_state* s);
CAVITY_API cavity_status cavity_state_equation(const cavity_state* s, cavity_equation* out);

/* strict != 0 raises CAVITY_ERR_DOMAIN outside the well, else returns 0 there. */
CAVITY_API cavity_status cavity_state_eval(const cavity_state* s, double x, double t, int strict, cavity_quat* out);
CAVITY_API cavity_status cavity_state_densities(const cavity_state* s, double x, double t, double* rho,
                                                double* varrho);
CAVITY_API cavity_status cavity_boundary_residual(const cavity_state* s, double* symmetric, double* antisymmetric,
                                                  double* density);
/* JSON with quadrature and closed-form normalization prefactors (single families only). */
CAVITY_API cavity_status cavity_normalization_report(const cavity_state* s, char** out);
CAVITY_API cavity_status cavity_orthogonality(const cavity_state* a, const cavity_state* b, double* out);

/* ---- observables ----------------------------------------------------- */

/* tol <= 0 selects the default relative tolerance 1e-11. */
CAVITY_API cavity_status cavity_expectation(const cavity_state* s, cavity_operator op, double t, double tol,
                                            double* out);
CAVITY_API cavity_status cavity_real_inner(const cavity_state* a, const cavity_state* b, cavity_operator op,
                                           double t, double tol, double* out);
CAVITY_API cavity_status cavity_energy_conservation_residual(const cavity_state* s, double t, double tol,
                                                             double* out);
CAVITY_API cavity_status cavity_energy_trajectory(const cavity_state* s, double t, double* out);
CAVITY_API cavity_status cavity_solution2_position(const cavity_model* m, int N, double theta, double omega,
                                                   double t, double* out);

/* ---- verification oracle --------------------------------------------- */

CAVITY_API cavity_status cavity_dirichlet_eigs(const cavity_model* m, int n_levels, int n_points,
                                               int extrapolate, double* out);
/* Residual refinement study as JSON: n_points, l2, linf, orders, monotone. */
CAVITY_API cavity_status cavity_pde_study(const cavity_state* s, cavity_equation eq, int base_points,
                                          int refinements, double t, char** out);
/* Crank-Nicolson from t = 0 on n_points with n_steps steps. */
CAVITY_API cavity_status cavity_evolve(const cavity_state* s, int n_points, int n_steps, double t_final,
                                       int analytic_boundary, cavity_grid** out, double* max_deviation,
                                       double* norm_ratio, double* expected_norm_ratio);
CAVITY_API int cavity_grid_size(const cavity_grid* g);
CAVITY_API cavity_status cavity_grid_point(const cavity_grid* g, int i, double* x, cavity_quat* value);
CAVITY_API void cavity_grid_destroy(cavity_grid* g);

/* options_json may be NULL or "{}" for defaults. */
CAVITY_API cavity_status cavity_run_verification(const char* options_json, char** report_json, int* all_passed);

#ifdef __cplusplus
}
#endif

#endif
