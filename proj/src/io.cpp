#include "cavity/io.hpp"

#include <charconv>
#include <cmath>
#include <set>

#include "cavity/errors.hpp"

namespace cavity {

using nlohmann::json;

namespace {

void reject_unknown(const json& j, const std::set<std::string>& allowed, const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + " must be an object");
  for (const auto& [key, value] : j.items())
    if (!allowed.count(key)) throw ConfigError("unknown key '" + where + "." + key + "'");
}

double number(const json& j, const std::string& key, const std::string& where, double fallback) {
  if (!j.contains(key)) return fallback;
  const json& v = j.at(key);
  if (!v.is_number()) throw ConfigError("key '" + where + "." + key + "' must be a number");
  return v.get<double>();
}

double required_number(const json& j, const std::string& key, const std::string& where) {
  if (!j.contains(key)) throw ConfigError("missing key '" + where + "." + key + "'");
  return number(j, key, where, 0.0);
}

json branch_json(const BranchChoice& b) {
  return {{"inner", static_cast<int>(b.inner)}, {"k0", static_cast<int>(b.k0)}, {"k1", static_cast<int>(b.k1)}};
}

json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

} // namespace

const char* to_string(Sign s) { return s == Sign::Plus ? "+" : "-"; }

Sign sign_from_json(const json& j, const std::string& key) {
  if (j.is_number_integer()) {
    const int v = j.get<int>();
    if (v == 1) return Sign::Plus;
    if (v == -1) return Sign::Minus;
  } else if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "+" || s == "plus") return Sign::Plus;
    if (s == "-" || s == "minus") return Sign::Minus;
  }
  throw ConfigError("key '" + key + "' must be +1/-1 or \"+\"/\"-\"");
}

WaveEquation equation_from_string(const std::string& s) {
  if (s == "complex") return WaveEquation::Complex;
  if (s == "left") return WaveEquation::QuatLeft;
  if (s == "right") return WaveEquation::QuatRight;
  throw ConfigError("unknown equation '" + s + "' (expected complex, left or right)");
}

SolutionFamily build_family(const CavityModel& model, const FamilySpec& f) {
  switch (f.kind) {
  case FamilyKind::I: return make_solution_I(model, f.N);
  case FamilyKind::II: return make_solution_II(model, f.N, f.theta, f.omega);
  case FamilyKind::IIIProp:
  case FamilyKind::IIIEvan:
  case FamilyKind::IIICombined: {
    SolutionFamily s = make_solution_III(model, f.E, f.parity, f.branch);
    if (s.kind != f.kind)
      throw DomainError(std::string("energy puts the family in regime ") + to_string(s.kind) + ", not " +
                        to_string(f.kind));
    return s;
  }
  case FamilyKind::PhaseGeneralized: return phase_generalized(model, f.E, f.omega_phase, f.branch);
  }
  throw DomainError("unknown family kind");
}

Complex perturb_y0(Complex Y0, double delta) {
  if (delta == 0.0) return Y0;
  return Y0 == Complex{} ? Complex(delta, 0.0) : Y0 * (1.0 + delta);
}

State build_state(const StateSpec& spec) {
  spec.model.validate();
  const SolutionFamily base = build_family(spec.model, spec.family);
  if (!spec.lift || spec.lift->equation == WaveEquation::Complex) return State::complex(base);
  QuatLift lift = lift_family(base, spec.model, spec.lift->equation, spec.lift->energy_branch);
  lift.Y0 = perturb_y0(lift.Y0, spec.lift->y0_perturbation);
  return State::lift(lift);
}

json to_json(const CavityModel& m) {
  return {{"ell", m.ell}, {"mass", m.mass}, {"hbar", m.hbar}, {"V0", m.V0},
          {"V1", m.V1},   {"W0", m.W0},     {"W1", m.W1}};
}

json to_json(const StateSpec& spec) {
  const FamilySpec& f = spec.family;
  json fam = {{"kind", to_string(f.kind)}};
  switch (f.kind) {
  case FamilyKind::I: fam["N"] = f.N; break;
  case FamilyKind::II:
    fam["N"] = f.N;
    fam["theta"] = f.theta;
    fam["omega"] = f.omega;
    break;
  case FamilyKind::IIIProp:
  case FamilyKind::IIIEvan:
  case FamilyKind::IIICombined:
    fam["parity"] = to_string(f.parity);
    fam["E0"] = f.E.E0;
    fam["E1"] = f.E.E1;
    fam["branch"] = branch_json(f.branch);
    break;
  case FamilyKind::PhaseGeneralized:
    fam["omega_phase"] = f.omega_phase;
    fam["E0"] = f.E.E0;
    fam["E1"] = f.E.E1;
    fam["branch"] = branch_json(f.branch);
    break;
  }
  json out = {{"schema_version", kSchemaVersion}, {"model", to_json(spec.model)}, {"family", fam}};
  if (spec.lift) {
    const char* eq = spec.lift->equation == WaveEquation::QuatLeft    ? "left"
                     : spec.lift->equation == WaveEquation::QuatRight ? "right"
                                                                      : "complex";
    out["lift"] = {{"equation", eq},
                   {"energy_branch", static_cast<int>(spec.lift->energy_branch)},
                   {"y0_perturbation", spec.lift->y0_perturbation}};
  }
  return out;
}

json describe_state(const StateSpec& spec, const State& state) {
  json out = to_json(spec);
  const SolutionFamily& f = state.family() ? *state.family() : state.as_lift()->base;
  json d = {{"equation", to_string(state.equation())},
            {"kind", to_string(f.kind)},
            {"E", complex_json(f.E.value())},
            {"K", complex_json(f.K.value())},
            {"A", complex_json(f.A)},
            {"B", complex_json(f.B)}};
  if (const QuatLift* l = state.as_lift()) d["Y0"] = complex_json(l->Y0);
  out["derived"] = d;
  return out;
}

CavityModel model_from_json(const json& j) {
  reject_unknown(j, {"ell", "mass", "hbar", "V0", "V1", "W0", "W1"}, "model");
  CavityModel m;
  m.ell = number(j, "ell", "model", m.ell);
  m.mass = number(j, "mass", "model", m.mass);
  m.hbar = number(j, "hbar", "model", m.hbar);
  m.V0 = number(j, "V0", "model", m.V0);
  m.V1 = number(j, "V1", "model", m.V1);
  m.W0 = number(j, "W0", "model", m.W0);
  m.W1 = number(j, "W1", "model", m.W1);
  try {
    m.validate();
  } catch (const DomainError& e) {
    throw ConfigError(std::string("model: ") + e.what());
  }
  return m;
}

StateSpec state_spec_from_json(const json& j) {
  reject_unknown(j, {"schema_version", "model", "family", "lift", "derived"}, "state");
  if (j.contains("schema_version") && j.at("schema_version") != kSchemaVersion)
    throw ConfigError("unsupported schema_version");
  StateSpec spec;
  if (j.contains("model")) spec.model = model_from_json(j.at("model"));
  if (!j.contains("family")) throw ConfigError("missing key 'family'");

  const json& fj = j.at("family");
  if (!fj.is_object()) throw ConfigError("family must be an object");
  if (!fj.contains("kind") || !fj.at("kind").is_string()) throw ConfigError("missing key 'family.kind'");
  FamilySpec& f = spec.family;
  f.kind = family_kind_from_string(fj.at("kind").get<std::string>());

  auto read_int = [&](const std::string& key) {
    if (!fj.contains(key)) throw ConfigError("missing key 'family." + key + "'");
    const json& v = fj.at(key);
    if (!v.is_number_integer()) throw ConfigError("key 'family." + key + "' must be an integer");
    return v.get<int>();
  };
  auto read_branch = [&] {
    if (!fj.contains("branch")) return;
    const json& b = fj.at("branch");
    reject_unknown(b, {"inner", "k0", "k1"}, "family.branch");
    if (b.contains("inner")) f.branch.inner = sign_from_json(b.at("inner"), "family.branch.inner");
    if (b.contains("k0")) f.branch.k0 = sign_from_json(b.at("k0"), "family.branch.k0");
    if (b.contains("k1")) f.branch.k1 = sign_from_json(b.at("k1"), "family.branch.k1");
  };

  switch (f.kind) {
  case FamilyKind::I:
    reject_unknown(fj, {"kind", "N"}, "family");
    f.N = read_int("N");
    break;
  case FamilyKind::II:
    reject_unknown(fj, {"kind", "N", "theta", "omega"}, "family");
    f.N = read_int("N");
    f.theta = required_number(fj, "theta", "family");
    f.omega = required_number(fj, "omega", "family");
    break;
  case FamilyKind::IIIProp:
  case FamilyKind::IIIEvan:
  case FamilyKind::IIICombined:
    reject_unknown(fj, {"kind", "parity", "E0", "E1", "branch"}, "family");
    if (fj.contains("parity")) {
      if (!fj.at("parity").is_string()) throw ConfigError("key 'family.parity' must be a string");
      f.parity = parity_from_string(fj.at("parity").get<std::string>());
    }
    f.E = {number(fj, "E0", "family", 0.0), required_number(fj, "E1", "family")};
    read_branch();
    break;
  case FamilyKind::PhaseGeneralized:
    reject_unknown(fj, {"kind", "omega_phase", "E0", "E1", "branch"}, "family");
    f.omega_phase = number(fj, "omega_phase", "family", 0.0);
    f.E = {number(fj, "E0", "family", 0.0), required_number(fj, "E1", "family")};
    read_branch();
    break;
  }

  if (j.contains("lift") && !j.at("lift").is_null()) {
    const json& lj = j.at("lift");
    reject_unknown(lj, {"equation", "energy_branch", "y0_perturbation"}, "lift");
    LiftSpec l;
    if (lj.contains("equation")) {
      if (!lj.at("equation").is_string()) throw ConfigError("key 'lift.equation' must be a string");
      l.equation = equation_from_string(lj.at("equation").get<std::string>());
    }
    if (lj.contains("energy_branch")) l.energy_branch = sign_from_json(lj.at("energy_branch"), "lift.energy_branch");
    l.y0_perturbation = number(lj, "y0_perturbation", "lift", 0.0);
    if (l.equation != WaveEquation::Complex) spec.lift = l;
  }
  return spec;
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

} // namespace cavity
