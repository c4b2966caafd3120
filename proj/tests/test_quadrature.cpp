#include "doctest.h"

#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

#include "cavity/errors.hpp"
#include "cavity/quadrature.hpp"

using cavity::quadrature;
constexpr double pi = std::numbers::pi;

TEST_CASE("textbook integrals") {
  CHECK(std::abs(quadrature([](double x) { return std::sin(x); }, 0, pi).value - 2.0) < 1e-12);
  CHECK(std::abs(quadrature([](double x) { return 2 * std::pow(std::cos(pi * x), 2); }, -0.5, 0.5).value - 1.0) <
        1e-12);
  CHECK(std::abs(quadrature([](double x) { return std::pow(std::cosh(x), 2); }, -0.5, 0.5).value -
                 (1 + std::sinh(1.0)) / 2) < 1e-12);
}

TEST_CASE("error estimates bound the true error on analytic integrands") {
  struct Case {
    std::function<double(double)> f;
    double a, b, truth;
  };
  const double e = std::numbers::e;
  const std::vector<Case> cases = {
      {[](double x) { return x * x; }, 0, 1, 1.0 / 3},
      {[](double x) { return std::exp(x); }, 0, 1, e - 1},
      {[](double x) { return std::exp(-x); }, 0, 5, 1 - std::exp(-5.0)},
      {[](double x) { return std::cos(x); }, 0, pi / 2, 1.0},
      {[](double x) { return std::sin(3 * x); }, 0, pi / 3, 2.0 / 3},
      {[](double x) { return 1 / (1 + x * x); }, 0, 1, pi / 4},
      {[](double x) { return 1 / (1 + x); }, 0, 1, std::log(2.0)},
      {[](double x) { return std::sqrt(1 + x); }, 0, 3, 14.0 / 3},
      {[](double x) { return x * std::exp(x); }, 0, 1, 1.0},
      {[](double x) { return std::log(1 + x); }, 0, 1, 2 * std::log(2.0) - 1},
      {[](double x) { return std::cosh(2 * x); }, -1, 1, std::sinh(2.0)},
      {[](double x) { return std::sinh(x) * std::sinh(x); }, -1, 1, (std::sinh(2.0) - 2) / 2},
      {[](double x) { return std::pow(std::sin(5 * x), 2); }, 0, pi, pi / 2},
      {[](double x) { return x * std::sin(x); }, 0, pi, pi},
      {[](double x) { return std::exp(-x * x); }, -1, 1, std::sqrt(pi) * std::erf(1.0)},
      {[](double x) { return std::pow(x, 7) - 2 * x; }, -2, 3, (std::pow(3, 8) - 256) / 8 - 5},
      {[](double x) { return std::cos(x) * std::exp(x); }, 0, pi, -(std::exp(pi) + 1) / 2},
      {[](double x) { return 1 / std::cosh(x) / std::cosh(x); }, -2, 2, 2 * std::tanh(2.0)},
      {[](double x) { return std::atan(x); }, 0, 1, pi / 4 - std::log(2.0) / 2},
      {[](double x) { return std::sin(20 * x) * std::sin(20 * x); }, 0, 1, 0.5 - std::sin(40.0) / 80},
  };
  for (const auto& c : cases) {
    const auto r = quadrature(c.f, c.a, c.b, 1e-12);
    CHECK(std::abs(r.value - c.truth) <= r.error_estimate);
    CHECK(std::abs(r.value - c.truth) <= 1e-11 * std::max(1.0, std::abs(c.truth)));
  }
}

TEST_CASE("failure modes") {
  CHECK_THROWS_AS(quadrature([](double x) { return x; }, 1, 0), cavity::DomainError);
  // a jump converges only at first order; six doublings are not enough
  CHECK_THROWS_AS(quadrature([](double x) { return x < 0.3 ? 0.0 : 1.0; }, 0, 1, 1e-12, 6), cavity::NonConvergence);
}
