#pragma once

// JSON descriptions of models and states, and fixed-precision number
// formatting for CSV output.

#include <optional>
#include <string>

#include "json.hpp"

#include "cavity/state.hpp"

namespace cavity {

inline constexpr int kSchemaVersion = 1;

struct FamilySpec {
  FamilyKind kind = FamilyKind::I;
  int N = 1;
  Parity parity = Parity::Even;
  double theta = 0.0;
  double omega = 0.0;
  double omega_phase = 0.0;
  EnergyParam E;
  BranchChoice branch;
};

struct LiftSpec {
  WaveEquation equation = WaveEquation::QuatLeft;
  Sign energy_branch = Sign::Plus;
  double y0_perturbation = 0.0; // relative change applied to Y0 after the lift
};

/// Everything needed to rebuild a State.
struct StateSpec {
  CavityModel model;
  FamilySpec family;
  std::optional<LiftSpec> lift;
};

SolutionFamily build_family(const CavityModel& model, const FamilySpec& spec);
State build_state(const StateSpec& spec);

/// Y0 -> Y0 (1 + delta), or delta when Y0 = 0.
Complex perturb_y0(Complex Y0, double delta);

nlohmann::json to_json(const CavityModel& model);
nlohmann::json to_json(const StateSpec& spec);
/// Also lists the derived E, K, amplitudes and Y0 of the built state.
nlohmann::json describe_state(const StateSpec& spec, const State& state);

/// Missing model fields take their defaults. Unknown keys and wrongly typed
/// values throw ConfigError naming the key.
CavityModel model_from_json(const nlohmann::json& j);
StateSpec state_spec_from_json(const nlohmann::json& j);

const char* to_string(Sign s);
Sign sign_from_json(const nlohmann::json& j, const std::string& key);
WaveEquation equation_from_string(const std::string& s);

/// 17 significant digits, '.' decimal separator, locale independent.
std::string format_number(double v);

} // namespace cavity
