// cavity-cli: spectra, observables, pointwise dumps, verification and
// time stepping from a TOML config plus flag overrides.
//
// Exit codes: 0 success, 1 a check or bound failed, 2 bad configuration.
// Links only the C interface of libcavity.

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#define TOML_EXCEPTIONS 1
#include "toml.hpp"

#include "cavity/cavity.h"

using nlohmann::json;

namespace {

constexpr double kPi = 3.14159265358979323846;

struct ConfigFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------- numbers

std::optional<double> parse_plain(std::string_view s) {
  if (s.empty()) return std::nullopt;
  if (s.front() == '+') s.remove_prefix(1);
  double v = 0;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || end != s.data() + s.size()) return std::nullopt;
  return v;
}

// "2", "pi", "-pi/4", "3pi/2", "2*pi", "1/3"
std::optional<double> parse_term(std::string_view s) {
  if (s.size() >= 2 && s.substr(s.size() - 2) == "pi") {
    std::string_view coef = s.substr(0, s.size() - 2);
    if (!coef.empty() && coef.back() == '*') coef.remove_suffix(1);
    if (coef.empty() || coef == "+") return kPi;
    if (coef == "-") return -kPi;
    const auto c = parse_plain(coef);
    return c ? std::optional<double>(*c * kPi) : std::nullopt;
  }
  return parse_plain(s);
}

std::optional<double> parse_real(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  const auto slash = s.find('/');
  if (slash == std::string::npos) return parse_term(s);
  const auto num = parse_term(std::string_view(s).substr(0, slash));
  const auto den = parse_term(std::string_view(s).substr(slash + 1));
  if (!num || !den || *den == 0.0) return std::nullopt;
  return *num / *den;
}

std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, r.ptr);
}

// ---------------------------------------------------------------- config

const std::map<std::string, std::set<std::string>> kCliSections = {
    {"quadrature", {"tol"}},
    {"spectrum", {"nmax"}},
    {"observables", {"t_start", "t_end", "steps"}},
    {"wavefunction", {"points", "t"}},
    {"evolve", {"points", "steps", "t_final", "bound", "norm_tol", "analytic_boundary"}},
    {"verify",
     {"default_coupling", "y0_perturbation", "k_perturbation", "random_draws", "seed", "pde_base_points",
      "pde_refinements", "evolve_points", "evolve_steps", "quad_tol"}},
    {"output", {"path"}},
};
// Sections validated by the library itself.
const std::set<std::string> kLibrarySections = {"model", "family", "lift"};
// Keys whose values are genuinely strings.
const std::set<std::string> kStringKeys = {"kind", "parity", "equation", "path", "inner", "k0", "k1", "energy_branch"};

json toml_to_json(const toml::node& node, const std::string& where) {
  if (const auto* t = node.as_table()) {
    json out = json::object();
    for (const auto& [k, v] : *t) {
      const std::string key(k.str());
      out[key] = toml_to_json(v, where.empty() ? key : where + "." + key);
    }
    return out;
  }
  if (const auto* a = node.as_array()) {
    json out = json::array();
    for (const auto& v : *a) out.push_back(toml_to_json(v, where));
    return out;
  }
  if (const auto* v = node.as_string()) return v->get();
  if (const auto* v = node.as_integer()) return v->get();
  if (const auto* v = node.as_floating_point()) return v->get();
  if (const auto* v = node.as_boolean()) return v->get();
  throw ConfigFailure("unsupported value type for key '" + where + "'");
}

json load_config(const std::string& path) {
  std::ifstream probe(path);
  if (!probe) throw ConfigFailure("cannot open config file '" + path + "'");
  try {
    return toml_to_json(toml::parse_file(path), "");
  } catch (const toml::parse_error& e) {
    std::ostringstream os;
    os << "config parse error in '" << path << "': " << e.description() << " (line " << e.source().begin.line
       << ")";
    throw ConfigFailure(os.str());
  }
}

// Pi literals are accepted anywhere a number is expected.
void resolve_numbers(json& j, const std::string& where) {
  for (auto& [key, value] : j.items()) {
    const std::string name = where.empty() ? key : where + "." + key;
    if (value.is_object()) {
      resolve_numbers(value, name);
    } else if (value.is_string() && !kStringKeys.count(key)) {
      const auto v = parse_real(value.get<std::string>());
      if (!v) throw ConfigFailure("key '" + name + "': cannot read '" + value.get<std::string>() + "' as a number");
      value = *v;
    }
  }
}

void validate_sections(const json& cfg) {
  if (!cfg.is_object()) throw ConfigFailure("config must be a table");
  for (const auto& [section, body] : cfg.items()) {
    if (kLibrarySections.count(section)) {
      if (!body.is_object()) throw ConfigFailure("'" + section + "' must be a table");
      continue;
    }
    const auto it = kCliSections.find(section);
    if (it == kCliSections.end()) throw ConfigFailure("unknown key '" + section + "'");
    if (!body.is_object()) throw ConfigFailure("'" + section + "' must be a table");
    for (const auto& [key, _] : body.items())
      if (!it->second.count(key)) throw ConfigFailure("unknown key '" + section + "." + key + "'");
  }
}

double get_num(const json& cfg, const char* section, const char* key, double fallback) {
  if (!cfg.contains(section) || !cfg[section].contains(key)) return fallback;
  const json& v = cfg[section][key];
  if (!v.is_number()) throw ConfigFailure(std::string("key '") + section + "." + key + "' must be a number");
  return v.get<double>();
}

int get_int(const json& cfg, const char* section, const char* key, int fallback) {
  if (!cfg.contains(section) || !cfg[section].contains(key)) return fallback;
  const json& v = cfg[section][key];
  if (!v.is_number_integer()) throw ConfigFailure(std::string("key '") + section + "." + key + "' must be an integer");
  return v.get<int>();
}

bool get_bool(const json& cfg, const char* section, const char* key, bool fallback) {
  if (!cfg.contains(section) || !cfg[section].contains(key)) return fallback;
  const json& v = cfg[section][key];
  if (!v.is_boolean()) throw ConfigFailure(std::string("key '") + section + "." + key + "' must be a boolean");
  return v.get<bool>();
}

// ---------------------------------------------------------------- flags

struct Override {
  std::string section, key;
  enum Kind { Real, Integer, Text } kind;
  std::string value;
  bool set = false;
};

struct Flags {
  std::string config;
  std::string out;
  bool to_stdout = false;
  std::vector<Override> overrides;

  void apply(json& cfg) const {
    for (const auto& o : overrides) {
      if (!o.set) continue;
      json& slot = cfg[o.section][o.key];
      const std::string name = o.section + "." + o.key;
      switch (o.kind) {
      case Override::Real: {
        const auto v = parse_real(o.value);
        if (!v) throw ConfigFailure("key '" + name + "': cannot read '" + o.value + "' as a number");
        slot = *v;
        break;
      }
      case Override::Integer: {
        int v = 0;
        const auto [end, ec] = std::from_chars(o.value.data(), o.value.data() + o.value.size(), v);
        if (ec != std::errc() || end != o.value.data() + o.value.size())
          throw ConfigFailure("key '" + name + "': '" + o.value + "' is not an integer");
        slot = v;
        break;
      }
      case Override::Text: slot = o.value; break;
      }
    }
  }
};

void add_override(CLI::App* app, Flags& f, const std::string& flag, std::string section, std::string key,
                  Override::Kind kind, const std::string& help) {
  f.overrides.push_back({std::move(section), std::move(key), kind, {}, false});
  // Stable storage: the vector is reserved up front.
  Override& o = f.overrides.back();
  app->add_option_function<std::string>(flag, [&o](const std::string& v) {
    o.value = v;
    o.set = true;
  }, help);
}

void add_common(CLI::App* app, Flags& f) {
  f.overrides.reserve(64);
  app->add_option("-c,--config", f.config, "TOML config file");
  app->add_option("-o,--out", f.out, "output path");
  app->add_flag("--stdout", f.to_stdout, "write data to stdout, diagnostics to stderr");
  add_override(app, f, "--ell", "model", "ell", Override::Real, "well width (pi literals accepted)");
  add_override(app, f, "--mass", "model", "mass", Override::Real, "particle mass");
  add_override(app, f, "--hbar", "model", "hbar", Override::Real, "reduced Planck constant");
  add_override(app, f, "--v0", "model", "V0", Override::Real, "real potential");
  add_override(app, f, "--v1", "model", "V1", Override::Real, "imaginary potential");
  add_override(app, f, "--w0", "model", "W0", Override::Real, "real part of the j-coupling U1");
  add_override(app, f, "--w1", "model", "W1", Override::Real, "imaginary part of the j-coupling U1");
  add_override(app, f, "--tol", "quadrature", "tol", Override::Real, "relative quadrature tolerance");
}

void add_family(CLI::App* app, Flags& f) {
  add_override(app, f, "--kind", "family", "kind", Override::Text,
               "I, II, IIIProp, IIIEvan, IIICombined, PhaseGeneralized");
  add_override(app, f, "--N,--n", "family", "N", Override::Integer, "quantum number");
  add_override(app, f, "--theta", "family", "theta", Override::Real, "kind II mixing angle");
  add_override(app, f, "--omega", "family", "omega", Override::Real, "kind II relative phase");
  add_override(app, f, "--parity", "family", "parity", Override::Text, "kind III parity: even or odd");
  add_override(app, f, "--e0", "family", "E0", Override::Real, "energy parameter E0");
  add_override(app, f, "--e1", "family", "E1", Override::Real, "energy parameter E1");
  add_override(app, f, "--omega-phase", "family", "omega_phase", Override::Real, "phase-generalized omega");
  add_override(app, f, "--lift", "lift", "equation", Override::Text, "lift onto the left or right equation");
  add_override(app, f, "--energy-branch", "lift", "energy_branch", Override::Text, "lift energy root: + or -");
  add_override(app, f, "--y0-perturbation", "lift", "y0_perturbation", Override::Real, "relative Y0 perturbation");
}

json build_config(const Flags& f) {
  json cfg = f.config.empty() ? json::object() : load_config(f.config);
  f.apply(cfg);
  validate_sections(cfg);
  resolve_numbers(cfg, "");
  if (!f.out.empty()) cfg["output"]["path"] = f.out;
  return cfg;
}

// --u1 X is shorthand for a real coupling X j.
void apply_u1(json& cfg, const std::optional<std::string>& u1) {
  if (!u1) return;
  const auto v = parse_real(*u1);
  if (!v) throw ConfigFailure("key 'model.U1': cannot read '" + *u1 + "' as a number");
  cfg["model"]["W0"] = *v;
  cfg["model"]["W1"] = 0.0;
}

// ---------------------------------------------------------------- C handles

void check(cavity_status s, bool config_phase) {
  if (s == CAVITY_OK) return;
  const std::string msg = std::string(cavity_status_string(s)) + ": " + cavity_last_error();
  if (config_phase) throw ConfigFailure(s == CAVITY_ERR_CONFIG ? std::string(cavity_last_error()) : msg);
  throw RunFailure(msg);
}

std::string take(char* s) {
  std::string out = s ? s : "";
  cavity_string_free(s);
  return out;
}

struct Model {
  cavity_model* p = nullptr;
  explicit Model(const json& cfg) {
    const json m = cfg.contains("model") ? cfg["model"] : json::object();
    check(cavity_model_from_json(m.dump().c_str(), &p), true);
  }
  ~Model() { cavity_model_destroy(p); }
  Model(const Model&) = delete;
  Model& operator=(const Model&) = delete;
};

struct State {
  cavity_state* p = nullptr;
  explicit State(const json& cfg) {
    json spec;
    spec["model"] = cfg.contains("model") ? cfg["model"] : json::object();
    json fam = cfg.contains("family") ? cfg["family"] : json::object();
    if (!fam.contains("kind")) fam["kind"] = "I";
    if ((fam["kind"] == "I" || fam["kind"] == "II") && !fam.contains("N")) fam["N"] = 1;
    spec["family"] = fam;
    if (cfg.contains("lift")) spec["lift"] = cfg["lift"];
    check(cavity_state_from_json(spec.dump().c_str(), &p), true);
  }
  ~State() { cavity_state_destroy(p); }
  State(const State&) = delete;
  State& operator=(const State&) = delete;
};

// ---------------------------------------------------------------- output

struct Sink {
  std::ofstream file;
  std::ostream* os = nullptr;
  std::string path;

  Sink(const json& cfg, const Flags& f, const std::string& fallback) {
    if (f.to_stdout) {
      os = &std::cout;
      return;
    }
    path = cfg.contains("output") && cfg["output"].contains("path") ? cfg["output"]["path"].get<std::string>()
                                                                     : fallback;
    file.open(path, std::ios::binary);
    if (!file) throw ConfigFailure("cannot write output file '" + path + "'");
    os = &file;
  }
  std::ostream& operator*() { return *os; }
  void done() {
    os->flush();
    if (!path.empty()) std::cerr << "wrote " << path << "\n";
  }
};

void row(std::ostream& os, std::initializer_list<double> values) {
  bool first = true;
  for (double v : values) {
    if (!first) os << ',';
    os << fmt(v);
    first = false;
  }
  os << '\n';
}

std::string sibling(const std::string& path, const std::string& suffix) {
  const auto dot = path.rfind('.');
  const auto slash = path.rfind('/');
  const std::string stem = (dot != std::string::npos && (slash == std::string::npos || dot > slash))
                               ? path.substr(0, dot)
                               : path;
  return stem + suffix;
}

// ---------------------------------------------------------------- commands

int cmd_spectrum(const json& cfg, const Flags& f) {
  const int nmax = get_int(cfg, "spectrum", "nmax", 10);
  if (nmax < 1) throw ConfigFailure("key 'spectrum.nmax' must be >= 1");
  Model m(cfg);
  std::vector<double> Ec(static_cast<size_t>(nmax)), Eq(static_cast<size_t>(nmax));
  check(cavity_levels(m.p, nmax, Ec.data(), Eq.data()), true);

  Sink out(cfg, f, "spectrum.csv");
  *out << "N,E_N,E1_N,gap,sq_gap\n";
  for (int n = 1; n <= nmax; ++n) {
    double gc, gq, gs;
    check(cavity_level_gap(m.p, n, 1, &gc, &gq, &gs), false);
    row(*out, {double(n), Ec[n - 1], Eq[n - 1], gq, gs});
  }
  out.done();
  return 0;
}

int cmd_observables(const json& cfg, const Flags& f) {
  const double t0 = get_num(cfg, "observables", "t_start", 0.0);
  const double t1 = get_num(cfg, "observables", "t_end", 1.0);
  const int steps = get_int(cfg, "observables", "steps", 10);
  const double tol = get_num(cfg, "quadrature", "tol", 0.0);
  if (steps < 0) throw ConfigFailure("key 'observables.steps' must be >= 0");
  State s(cfg);

  Sink out(cfg, f, "observables.csv");
  *out << "t,E,p,p2,V,x,residual\n";
  for (int i = 0; i <= steps; ++i) {
    const double t = steps == 0 ? t0 : t0 + (t1 - t0) * i / steps;
    double E, p, p2, V, x, r;
    check(cavity_expectation(s.p, CAVITY_OP_ENERGY, t, tol, &E), false);
    check(cavity_expectation(s.p, CAVITY_OP_MOMENTUM, t, tol, &p), false);
    check(cavity_expectation(s.p, CAVITY_OP_MOMENTUM_SQ, t, tol, &p2), false);
    check(cavity_expectation(s.p, CAVITY_OP_POTENTIAL, t, tol, &V), false);
    check(cavity_expectation(s.p, CAVITY_OP_POSITION, t, tol, &x), false);
    check(cavity_energy_conservation_residual(s.p, t, tol, &r), false);
    row(*out, {t, E, p, p2, V, x, r});
  }
  out.done();
  return 0;
}

int cmd_wavefunction(const json& cfg, const Flags& f) {
  const int points = get_int(cfg, "wavefunction", "points", 201);
  const double t = get_num(cfg, "wavefunction", "t", 0.0);
  if (points < 2) throw ConfigFailure("key 'wavefunction.points' must be >= 2");
  State s(cfg);
  const double ell = cfg.contains("model") && cfg["model"].contains("ell") ? cfg["model"]["ell"].get<double>() : kPi;

  Sink out(cfg, f, "wavefunction.csv");
  *out << "x,psi_w,psi_i,psi_j,psi_k,rho,varrho\n";
  for (int i = 0; i < points; ++i) {
    const double x = i == points - 1 ? 0.5 * ell : -0.5 * ell + ell * i / (points - 1);
    cavity_quat q;
    double rho, varrho;
    check(cavity_state_eval(s.p, x, t, 1, &q), false);
    check(cavity_state_densities(s.p, x, t, &rho, &varrho), false);
    row(*out, {x, q.w, q.x, q.y, q.z, rho, varrho});
  }
  out.done();
  return 0;
}

int cmd_verify(const json& cfg, const Flags& f) {
  json opts = cfg.contains("verify") ? cfg["verify"] : json::object();
  if (cfg.contains("model")) opts["model"] = cfg["model"];
  char* report = nullptr;
  int all_passed = 0;
  check(cavity_run_verification(opts.dump().c_str(), &report, &all_passed), true);
  const json r = json::parse(take(report));

  Sink out(cfg, f, "verify.json");
  *out << r.dump(2) << '\n';
  out.done();
  for (const auto& c : r["checks"])
    std::cerr << (c["passed"].get<bool>() ? "pass " : "FAIL ") << c["name"].get<std::string>() << "  value "
              << fmt(c["value"].get<double>()) << "  threshold " << fmt(c["threshold"].get<double>()) << "\n";
  if (all_passed) return 0;
  std::cerr << "verification failed:";
  for (const auto& name : r["failures"]) std::cerr << ' ' << name.get<std::string>();
  std::cerr << "\n";
  return 1;
}

int cmd_evolve(const json& cfg, const Flags& f) {
  const int points = get_int(cfg, "evolve", "points", 2001);
  const int steps = get_int(cfg, "evolve", "steps", 2000);
  const double t_final = get_num(cfg, "evolve", "t_final", 1.0);
  const double bound = get_num(cfg, "evolve", "bound", 1e-6);
  const double norm_tol = get_num(cfg, "evolve", "norm_tol", 1e-4);
  const bool analytic = get_bool(cfg, "evolve", "analytic_boundary", false);
  if (points < 3) throw ConfigFailure("key 'evolve.points' must be >= 3");
  if (steps < 1) throw ConfigFailure("key 'evolve.steps' must be >= 1");
  if (!(t_final > 0)) throw ConfigFailure("key 'evolve.t_final' must be positive");
  State s(cfg);

  cavity_grid* g = nullptr;
  double dev, ratio, expected;
  check(cavity_evolve(s.p, points, steps, t_final, analytic ? 1 : 0, &g, &dev, &ratio, &expected), false);
  std::unique_ptr<cavity_grid, void (*)(cavity_grid*)> grid(g, cavity_grid_destroy);

  Sink out(cfg, f, "evolve.csv");
  *out << "x,psi_w,psi_i,psi_j,psi_k,exact_w,exact_i,exact_j,exact_k,error\n";
  for (int i = 0; i < cavity_grid_size(g); ++i) {
    double x;
    cavity_quat q, e;
    check(cavity_grid_point(g, i, &x, &q), false);
    check(cavity_state_eval(s.p, x, t_final, 0, &e), false);
    const double err = std::sqrt((q.w - e.w) * (q.w - e.w) + (q.x - e.x) * (q.x - e.x) +
                                 (q.y - e.y) * (q.y - e.y) + (q.z - e.z) * (q.z - e.z));
    row(*out, {x, q.w, q.x, q.y, q.z, e.w, e.x, e.y, e.z, err});
  }
  out.done();

  const double norm_error = std::abs(ratio - expected);
  const bool passed = dev <= bound && norm_error <= norm_tol;
  const json summary = {{"schema_version", 1},
                        {"points", points},
                        {"steps", steps},
                        {"t_final", t_final},
                        {"max_deviation", dev},
                        {"bound", bound},
                        {"norm_ratio", ratio},
                        {"expected_norm_ratio", expected},
                        {"norm_error", norm_error},
                        {"norm_tol", norm_tol},
                        {"passed", passed}};
  if (f.to_stdout) {
    std::cerr << summary.dump() << "\n";
  } else {
    const std::string path = sibling(out.path, "_summary.json");
    std::ofstream js(path, std::ios::binary);
    if (!js) throw RunFailure("cannot write summary '" + path + "'");
    js << summary.dump(2) << '\n';
    std::cerr << "wrote " << path << "\n";
  }
  std::cerr << "max deviation " << fmt(dev) << " (bound " << fmt(bound) << "), norm ratio " << fmt(ratio)
            << " vs " << fmt(expected) << "\n";
  if (!passed) {
    std::cerr << (dev > bound ? "deviation exceeds bound\n" : "norm trajectory outside tolerance\n");
    return 1;
  }
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Infinite quantum cavity: complex and quaternionic solutions", "cavity-cli"};
  app.require_subcommand(1);

  Flags spectrum_f, observables_f, wavefunction_f, verify_f, evolve_f;
  std::optional<std::string> u1;

  auto* spectrum = app.add_subcommand("spectrum", "energy levels and gaps as CSV");
  add_common(spectrum, spectrum_f);
  add_override(spectrum, spectrum_f, "--nmax", "spectrum", "nmax", Override::Integer, "highest level");
  spectrum->add_option("--u1", u1, "real j-coupling, shorthand for --w0 X --w1 0");

  auto* observables = app.add_subcommand("observables", "expectation values over a time sweep as CSV");
  add_common(observables, observables_f);
  add_family(observables, observables_f);
  add_override(observables, observables_f, "--t-start", "observables", "t_start", Override::Real, "first time");
  add_override(observables, observables_f, "--t-end", "observables", "t_end", Override::Real, "last time");
  add_override(observables, observables_f, "--steps", "observables", "steps", Override::Integer, "time intervals");
  observables->add_option("--u1", u1, "real j-coupling");

  auto* wavefunction = app.add_subcommand("wavefunction", "pointwise dump of the state as CSV");
  add_common(wavefunction, wavefunction_f);
  add_family(wavefunction, wavefunction_f);
  add_override(wavefunction, wavefunction_f, "--points", "wavefunction", "points", Override::Integer, "samples");
  add_override(wavefunction, wavefunction_f, "--t", "wavefunction", "t", Override::Real, "time");
  wavefunction->add_option("--u1", u1, "real j-coupling");

  auto* verify = app.add_subcommand("verify", "run the residual suite, JSON report");
  add_common(verify, verify_f);
  add_override(verify, verify_f, "--perturb-y0", "verify", "y0_perturbation", Override::Real,
               "relative Y0 perturbation (negative control)");
  add_override(verify, verify_f, "--perturb-k", "verify", "k_perturbation", Override::Real,
               "K perturbation (negative control)");
  add_override(verify, verify_f, "--draws", "verify", "random_draws", Override::Integer, "random draws per check");
  add_override(verify, verify_f, "--seed", "verify", "seed", Override::Integer, "RNG seed");
  verify->add_option("--u1", u1, "real j-coupling");

  auto* evolve = app.add_subcommand("evolve", "Crank-Nicolson run against the closed form");
  add_common(evolve, evolve_f);
  add_family(evolve, evolve_f);
  add_override(evolve, evolve_f, "--points", "evolve", "points", Override::Integer, "grid points");
  add_override(evolve, evolve_f, "--steps", "evolve", "steps", Override::Integer, "time steps");
  add_override(evolve, evolve_f, "--t", "evolve", "t_final", Override::Real, "final time");
  add_override(evolve, evolve_f, "--bound", "evolve", "bound", Override::Real, "max allowed deviation");
  evolve->add_option("--u1", u1, "real j-coupling");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  struct Entry {
    CLI::App* sub;
    Flags* flags;
    int (*run)(const json&, const Flags&);
  };
  const Entry entries[] = {{spectrum, &spectrum_f, cmd_spectrum},
                           {observables, &observables_f, cmd_observables},
                           {wavefunction, &wavefunction_f, cmd_wavefunction},
                           {verify, &verify_f, cmd_verify},
                           {evolve, &evolve_f, cmd_evolve}};
  for (const auto& e : entries) {
    if (!e.sub->parsed()) continue;
    try {
      json cfg = build_config(*e.flags);
      apply_u1(cfg, u1);
      return e.run(cfg, *e.flags);
    } catch (const ConfigFailure& ex) {
      std::cerr << "config error: " << ex.what() << "\n";
      return 2;
    } catch (const RunFailure& ex) {
      std::cerr << "error: " << ex.what() << "\n";
      return 1;
    } catch (const std::exception& ex) {
      std::cerr << "error: " << ex.what() << "\n";
      return 1;
    }
  }
  return 2;
}
