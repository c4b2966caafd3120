#pragma once

// The aggregated residual suite behind `cavity-cli verify`: every closed
// form is checked against an independent numerical oracle and the outcome is
// collected as named checks.

#include <string>
#include <vector>

#include "json.hpp"

#include "cavity/dispersion.hpp"

namespace cavity {

struct VerifyOptions {
  CavityModel model;            // complex checks use V; quaternionic ones add W
  double default_coupling = 1.0; // W0 used when the model is uncoupled
  double y0_perturbation = 0.0;  // relative, applied to every Y0 under test
  double k_perturbation = 0.0;   // added to K0 and K1 in the eigen and lifted PDE checks
  int random_draws = 200;
  unsigned seed = 12345;
  int pde_base_points = 41;
  int pde_refinements = 3;
  int evolve_points = 801;
  int evolve_steps = 800;
  double quad_tol = 1e-11;
};

struct CheckResult {
  std::string name;
  bool passed = false;
  double value = 0.0;     // worst measured quantity
  double threshold = 0.0;
  std::string detail;
};

struct VerifyReport {
  std::vector<CheckResult> checks;
  CavityModel model;
  CavityModel coupled_model;

  bool all_passed() const;
  std::vector<std::string> failures() const;
  nlohmann::json to_json() const;
};

VerifyReport run_verification(const VerifyOptions& opts);

/// Reads options from JSON ({"model": {...}, "y0_perturbation": ...}).
/// Unknown keys throw ConfigError.
VerifyOptions verify_options_from_json(const nlohmann::json& j);

} // namespace cavity
