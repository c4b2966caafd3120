#include "cavity/verify.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "cavity/errors.hpp"
#include "cavity/io.hpp"
#include "cavity/observables.hpp"
#include "cavity/oracle.hpp"
#include "cavity/spectra.hpp"

namespace cavity {

using nlohmann::json;

bool VerifyReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

std::vector<std::string> VerifyReport::failures() const {
  std::vector<std::string> out;
  for (const auto& c : checks)
    if (!c.passed) out.push_back(c.name);
  return out;
}

json VerifyReport::to_json() const {
  json arr = json::array();
  for (const auto& c : checks)
    arr.push_back({{"name", c.name},
                   {"passed", c.passed},
                   {"value", c.value},
                   {"threshold", c.threshold},
                   {"detail", c.detail}});
  return {{"schema_version", kSchemaVersion},
          {"model", cavity::to_json(model)},
          {"coupled_model", cavity::to_json(coupled_model)},
          {"all_passed", all_passed()},
          {"failures", failures()},
          {"checks", arr}};
}

namespace {

struct Suite {
  const VerifyOptions& opts;
  VerifyReport report;
  std::mt19937_64 rng;

  double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng); }

  // Records a check where smaller values are better.
  void bound(const std::string& name, double value, double threshold, std::string detail = {}) {
    report.checks.push_back({name, value <= threshold, value, threshold, std::move(detail)});
  }

  // Runs body; an exception becomes a failed check.
  template <class F>
  void guarded(const std::string& name, F body) {
    try {
      body();
    } catch (const std::exception& e) {
      report.checks.push_back({name, false, NAN, NAN, std::string("error: ") + e.what()});
    }
  }
};

std::vector<SolutionFamily> complex_families(const CavityModel& m) {
  const double V0 = m.V0, V1 = m.V1;
  return {make_solution_I(m, 1),
          make_solution_I(m, 2),
          make_solution_II(m, 3, 0.4, 1.1),
          make_solution_III(m, {-V1, V0 + 2.0}, Parity::Even),
          make_solution_III(m, {-V1, V0 - 1.0}, Parity::Odd),
          make_solution_III(m, {-V1 + 0.3, V0 + 1.0}, Parity::Even),
          phase_generalized(m, {-V1 + 0.2, V0 + 1.5}, 0.8)};
}

} // namespace

VerifyReport run_verification(const VerifyOptions& opts) {
  opts.model.validate();
  Suite s{opts, {}, std::mt19937_64(opts.seed)};
  const CavityModel& m = opts.model;
  CavityModel q = m;
  if (q.is_complex()) q.W0 = opts.default_coupling;
  CavityModel c = m;
  c.W0 = c.W1 = 0.0;
  s.report.model = m;
  s.report.coupled_model = q;

  s.guarded("constraint_closure", [&] {
    double worst = 0.0;
    for (int n = 0; n < opts.random_draws; ++n) {
      CavityModel r = c;
      r.V0 = s.uniform(-10, 10);
      r.V1 = s.uniform(-10, 10);
      const EnergyParam E{s.uniform(-10, 10), s.uniform(-10, 10)};
      const auto res = complex_constraint_residual(complex_dispersion(E, r), E, r);
      worst = std::max({worst, res.energy, res.continuity});
    }
    s.bound("constraint_closure", worst, 1e-11);
  });

  for (WaveEquation w : {WaveEquation::QuatLeft, WaveEquation::QuatRight}) {
    const std::string name = std::string("eigen_residual_") + to_string(w);
    s.guarded(name, [&] {
      double worst = 0.0;
      for (int n = 0; n < opts.random_draws; ++n) {
        const EnergyParam E{s.uniform(-5, 5), s.uniform(-5, 5)};
        for (Sign br : {Sign::Plus, Sign::Minus}) {
          BranchChoice b;
          b.inner = br;
          const QuatMode mode = quat_dispersion(w, E, q, b);
          const MomentumParam K{mode.K.K0 + opts.k_perturbation, mode.K.K1 + opts.k_perturbation};
          worst = std::max(worst, eigen_residual(K, perturb_y0(mode.Y0, opts.y0_perturbation), E, q, w));
        }
      }
      s.bound(name, worst, 1e-10);
    });
  }

  s.guarded("boundary_density", [&] {
    double worst = 0.0;
    std::string where;
    for (const auto& f : complex_families(c)) {
      const double half = 0.5 * c.ell;
      const double scale = std::max(1.0, std::norm(eval_psi(f, half, 0.0)));
      const double r = boundary_residual(f).density / scale;
      if (r > worst) where = to_string(f.kind);
      worst = std::max(worst, r);
    }
    s.bound("boundary_density", worst, 1e-12, where);
  });

  s.guarded("orthogonality", [&] {
    double worst = 0.0;
    for (int N = 1; N <= 10; ++N)
      for (int M = 1; M <= N; ++M)
        worst = std::max(worst, std::abs(orthogonality(make_solution_I(c, N), make_solution_I(c, M)) -
                                         (N == M ? 1.0 : 0.0)));
    s.bound("orthogonality", worst, 1e-10);
  });

  s.guarded("energy_conservation", [&] {
    double worst = 0.0;
    for (const auto& f : complex_families(c))
      for (double t : {0.0, 0.5, 1.0})
        worst = std::max(worst, energy_conservation_residual(State::complex(f), t, opts.quad_tol));
    s.bound("energy_conservation", worst, 1e-10);
  });

  auto pde_check = [&](const std::string& name, const std::vector<State>& states) {
    s.guarded(name, [&] {
      double worst_dev = 0.0;
      bool ok = true;
      std::ostringstream detail;
      for (const State& st : states) {
        const auto study = refinement_study(st, st.equation(), opts.pde_base_points, opts.pde_refinements, 0.5);
        ok = ok && study.monotone() && study.orders_within(1.8, 2.2);
        for (double p : study.orders) worst_dev = std::max(worst_dev, std::abs(p - 2.0));
        detail << st.describe() << ": orders";
        for (double p : study.orders) detail << ' ' << format_number(p);
        detail << "; ";
      }
      s.report.checks.push_back({name, ok, worst_dev, 0.2, detail.str()});
    });
  };
  {
    std::vector<State> plain;
    for (const auto& f : complex_families(c)) plain.push_back(State::complex(f));
    pde_check("pde_residual_complex", plain);
  }
  for (WaveEquation w : {WaveEquation::QuatLeft, WaveEquation::QuatRight}) {
    std::vector<State> lifts;
    for (const auto& f : {make_solution_I(c, 1), make_solution_II(c, 2, 0.4, 1.1),
                          make_solution_III(c, {-c.V1 + 0.3, c.V0 + 1.0}, Parity::Odd)}) {
      QuatLift l = lift_family(f, q, w);
      l.Y0 = perturb_y0(l.Y0, opts.y0_perturbation);
      l.base.K.K0 += opts.k_perturbation;
      l.base.K.K1 += opts.k_perturbation;
      lifts.push_back(State::lift(l));
    }
    pde_check(std::string("pde_residual_") + to_string(w), lifts);
  }

  s.guarded("norm_trajectory", [&] {
    const auto r = evolve_and_compare(State::complex(make_solution_I(c, 1)), opts.evolve_points,
                                      opts.evolve_steps, 1.0);
    s.bound("norm_trajectory", std::abs(r.norm_ratio / r.expected_norm_ratio - 1.0), 1e-4,
            "max pointwise deviation " + format_number(r.max_deviation));
  });

  s.guarded("spectrum_oracle", [&] {
    CavityModel d = c;
    d.V1 = 0.0;
    const auto grid = dirichlet_eigs_extrapolated(d, 5, 1001);
    double worst = 0.0;
    for (int n = 1; n <= 5; ++n) worst = std::max(worst, std::abs(grid[n - 1] - complex_level(d, n)));
    s.bound("spectrum_oracle", worst, 1e-6);
  });

  s.guarded("squared_gap", [&] {
    CavityModel z = q;
    z.V0 = 0.0;
    const auto lv = levels(z, 50);
    double worst = 0.0;
    for (int N = 1; N <= 50; ++N)
      for (int M = 1; M <= N; ++M) {
        const double pred = squared_gap_prediction(z, N, M);
        worst = std::max(worst, std::abs(level_gap(lv, N, M).gap_sq_quat - pred) / std::max(1.0, pred));
      }
    s.bound("squared_gap", worst, 1e-10, "evaluated at V0 = 0");
  });

  return std::move(s.report);
}

VerifyOptions verify_options_from_json(const json& j) {
  VerifyOptions o;
  if (!j.is_object()) throw ConfigError("verify options must be an object");
  for (const auto& [key, value] : j.items()) {
    auto num = [&] {
      if (!value.is_number()) throw ConfigError("key '" + key + "' must be a number");
      return value.get<double>();
    };
    auto whole = [&] {
      if (!value.is_number_integer()) throw ConfigError("key '" + key + "' must be an integer");
      return value.get<int>();
    };
    if (key == "model") o.model = model_from_json(value);
    else if (key == "default_coupling") o.default_coupling = num();
    else if (key == "y0_perturbation") o.y0_perturbation = num();
    else if (key == "k_perturbation") o.k_perturbation = num();
    else if (key == "random_draws") o.random_draws = whole();
    else if (key == "seed") o.seed = static_cast<unsigned>(whole());
    else if (key == "pde_base_points") o.pde_base_points = whole();
    else if (key == "pde_refinements") o.pde_refinements = whole();
    else if (key == "evolve_points") o.evolve_points = whole();
    else if (key == "evolve_steps") o.evolve_steps = whole();
    else if (key == "quad_tol") o.quad_tol = num();
    else throw ConfigError("unknown key '" + key + "'");
  }
  return o;
}

} // namespace cavity
