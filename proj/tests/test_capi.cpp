// Exercises the shared library through its C header only.

#include "doctest.h"

#include <cmath>
#include <numbers>
#include <string>

#include "cavity/cavity.h"
#include "json.hpp"

constexpr double pi = std::numbers::pi;

namespace {

struct ModelHandle {
  cavity_model* p = nullptr;
  ~ModelHandle() { cavity_model_destroy(p); }
};

struct StateHandle {
  cavity_state* p = nullptr;
  ~StateHandle() { cavity_state_destroy(p); }
};

std::string take(char* s) {
  std::string out = s ? s : "";
  cavity_string_free(s);
  return out;
}

const char* kGround = R"({"model": {"ell": 3.141592653589793}, "family": {"kind": "I", "N": 1}})";

} // namespace

TEST_CASE("status strings and null handling") {
  CHECK(std::string(cavity_status_string(CAVITY_OK)) == "ok");
  CHECK(cavity_model_create(pi, 1, 1, 0, 0, 0, 0, nullptr) == CAVITY_ERR_NULL);
  CHECK(std::string(cavity_last_error()) == "null argument");
  cavity_model_destroy(nullptr);
  cavity_state_destroy(nullptr);
  cavity_grid_destroy(nullptr);
  CHECK(cavity_grid_size(nullptr) == 0);
}

TEST_CASE("model validation maps to domain errors") {
  ModelHandle m;
  CHECK(cavity_model_create(-1.0, 1, 1, 0, 0, 0, 0, &m.p) == CAVITY_ERR_DOMAIN);
  CHECK(m.p == nullptr);
  CHECK(cavity_model_from_json(R"({"ell": 1, "bogus": 2})", &m.p) == CAVITY_ERR_CONFIG);
  CHECK(std::string(cavity_last_error()).find("model.bogus") != std::string::npos);
  CHECK(cavity_model_from_json("{not json", &m.p) == CAVITY_ERR_CONFIG);
  REQUIRE(cavity_model_from_json(R"({"V0": 0.5})", &m.p) == CAVITY_OK);
}

TEST_CASE("complex dispersion and spectrum") {
  ModelHandle m;
  REQUIRE(cavity_model_create(pi, 1, 1, 0, 0, 0, 0, &m.p) == CAVITY_OK);
  double K0 = 0, K1 = 0;
  REQUIRE(cavity_complex_dispersion(m.p, 0.5, 2.0, {1, 1, 1}, &K0, &K1) == CAVITY_OK);
  // K0^2 - K1^2 = 2(V0 - E1), 2 K0 K1 = 2(V1 + E0)
  CHECK(K0 * K0 - K1 * K1 == doctest::Approx(-4.0));
  CHECK(2 * K0 * K1 == doctest::Approx(1.0));

  double Ec[4], Eq[4];
  REQUIRE(cavity_levels(m.p, 4, Ec, Eq) == CAVITY_OK);
  for (int n = 1; n <= 4; ++n) CHECK(Ec[n - 1] == doctest::Approx(0.5 * n * n));
  CHECK(cavity_levels(m.p, 0, Ec, Eq) == CAVITY_ERR_DOMAIN);

  double gc, gq, gs;
  CHECK(cavity_level_gap(m.p, 3, 1, &gc, &gq, &gs) == CAVITY_OK);
  CHECK(gc == doctest::Approx(4.0));
  CHECK(cavity_level_gap(m.p, 1, 3, &gc, &gq, &gs) == CAVITY_ERR_DOMAIN);
}

TEST_CASE("quaternionic dispersion round trip") {
  ModelHandle m;
  REQUIRE(cavity_model_create(pi, 1, 1, 0.3, 0.0, 0.7, -0.2, &m.p) == CAVITY_OK);
  double K0, K1, yr, yi, res;
  REQUIRE(cavity_quat_dispersion(m.p, CAVITY_EQ_LEFT, 0.1, 1.5, {1, 1, 1}, &K0, &K1, &yr, &yi, &res) == CAVITY_OK);
  CHECK(res < 1e-10);
  double again = 1;
  REQUIRE(cavity_eigen_residual(m.p, CAVITY_EQ_LEFT, 0.1, 1.5, K0, K1, yr, yi, &again) == CAVITY_OK);
  CHECK(again < 1e-10);
  REQUIRE(cavity_eigen_residual(m.p, CAVITY_EQ_LEFT, 0.1, 1.5, K0 + 1e-3, K1, yr, yi, &again) == CAVITY_OK);
  CHECK(again > 1e-6);
  CHECK(cavity_quat_dispersion(m.p, CAVITY_EQ_COMPLEX, 0.1, 1.5, {1, 1, 1}, &K0, &K1, &yr, &yi, &res) ==
        CAVITY_ERR_DOMAIN);
  CHECK(cavity_quat_dispersion(m.p, CAVITY_EQ_LEFT, 0.1, 1.5, {2, 1, 1}, &K0, &K1, &yr, &yi, &res) ==
        CAVITY_ERR_DOMAIN);
}

TEST_CASE("states, observables and boundary") {
  StateHandle s;
  REQUIRE(cavity_state_from_json(kGround, &s.p) == CAVITY_OK);
  double norm = 0, E = 0, p = 0;
  REQUIRE(cavity_expectation(s.p, CAVITY_OP_IDENTITY, 0.0, 0.0, &norm) == CAVITY_OK);
  CHECK(norm == doctest::Approx(1.0).epsilon(1e-10));
  REQUIRE(cavity_expectation(s.p, CAVITY_OP_ENERGY, 0.3, 0.0, &E) == CAVITY_OK);
  CHECK(E == doctest::Approx(0.5).epsilon(1e-10));
  REQUIRE(cavity_expectation(s.p, CAVITY_OP_MOMENTUM, 0.3, 0.0, &p) == CAVITY_OK);
  CHECK(std::abs(p) < 1e-10);

  cavity_quat q;
  CHECK(cavity_state_eval(s.p, 2.0, 0.0, 1, &q) == CAVITY_ERR_DOMAIN);
  REQUIRE(cavity_state_eval(s.p, 2.0, 0.0, 0, &q) == CAVITY_OK);
  CHECK(q.w == 0.0);
  REQUIRE(cavity_state_eval(s.p, 0.0, 0.0, 1, &q) == CAVITY_OK);
  CHECK(q.w == doctest::Approx(std::sqrt(2.0 / pi)));

  double sym, anti, dens;
  REQUIRE(cavity_boundary_residual(s.p, &sym, &anti, &dens) == CAVITY_OK);
  CHECK(dens < 1e-12);

  const auto j = nlohmann::json::parse(take([&] {
    char* out = nullptr;
    REQUIRE(cavity_state_to_json(s.p, &out) == CAVITY_OK);
    return out;
  }()));
  CHECK(j.at("family").at("kind") == "I");
  CHECK(j.contains("derived"));
}

TEST_CASE("lifted state through the C interface") {
  StateHandle s;
  const char* spec = R"({"model": {"V0": 0.2, "W0": 0.8},
                         "family": {"kind": "I", "N": 2},
                         "lift": {"equation": "left"}})";
  REQUIRE(cavity_state_from_json(spec, &s.p) == CAVITY_OK);
  cavity_equation eq;
  REQUIRE(cavity_state_equation(s.p, &eq) == CAVITY_OK);
  CHECK(eq == CAVITY_EQ_LEFT);
  double r = 1;
  REQUIRE(cavity_energy_conservation_residual(s.p, 0.4, 0.0, &r) == CAVITY_OK);
  CHECK(r < 1e-9);

  char* study = nullptr;
  REQUIRE(cavity_pde_study(s.p, CAVITY_EQ_LEFT, 41, 2, 0.2, &study) == CAVITY_OK);
  const auto js = nlohmann::json::parse(take(study));
  for (double o : js.at("orders")) CHECK(std::abs(o - 2.0) < 0.1);

  CHECK(cavity_energy_trajectory(s.p, 0.0, &r) == CAVITY_ERR_DOMAIN);
}

TEST_CASE("malformed state specs") {
  StateHandle s;
  CHECK(cavity_state_from_json(R"({"model": {}, "family": {"kind": "I", "N": 1, "x": 1}})", &s.p) ==
        CAVITY_ERR_CONFIG);
  CHECK(std::string(cavity_last_error()).find("family.x") != std::string::npos);
  CHECK(cavity_state_from_json(R"({"model": {}, "family": {"kind": "I", "N": 0}})", &s.p) == CAVITY_ERR_DOMAIN);
}

TEST_CASE("evolution grid handle") {
  StateHandle s;
  REQUIRE(cavity_state_from_json(kGround, &s.p) == CAVITY_OK);
  cavity_grid* g = nullptr;
  double dev, ratio, expected;
  REQUIRE(cavity_evolve(s.p, 201, 200, 0.5, 0, &g, &dev, &ratio, &expected) == CAVITY_OK);
  CHECK(cavity_grid_size(g) == 201);
  CHECK(dev < 1e-4);
  CHECK(ratio == doctest::Approx(expected).epsilon(1e-6));
  double x;
  cavity_quat q;
  REQUIRE(cavity_grid_point(g, 200, &x, &q) == CAVITY_OK);
  CHECK(x == doctest::Approx(pi / 2));
  CHECK(cavity_grid_point(g, 201, &x, &q) == CAVITY_ERR_DOMAIN);
  cavity_grid_destroy(g);
}

TEST_CASE("dirichlet oracle and verification report") {
  ModelHandle m;
  REQUIRE(cavity_model_create(pi, 1, 1, 0, 0, 0, 0, &m.p) == CAVITY_OK);
  double ev[3];
  REQUIRE(cavity_dirichlet_eigs(m.p, 3, 800, 1, ev) == CAVITY_OK);
  for (int n = 1; n <= 3; ++n) CHECK(ev[n - 1] == doctest::Approx(0.5 * n * n).epsilon(1e-8));

  char* report = nullptr;
  int ok = 0;
  REQUIRE(cavity_run_verification(R"({"random_draws": 20})", &report, &ok) == CAVITY_OK);
  const auto j = nlohmann::json::parse(take(report));
  CHECK(ok == 1);
  CHECK(j.at("all_passed") == true);
  CHECK(cavity_run_verification(R"({"nope": 1})", &report, &ok) == CAVITY_ERR_CONFIG);
}
