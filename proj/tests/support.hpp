#pragma once

// Shared test helpers: seeded random draws and oracles that do not go
// through the library code under test.

#include <Eigen/Eigenvalues>
#include <complex>
#include <random>

#include "cavity/dispersion.hpp"

namespace testing {

using cavity::Complex;

class Rng {
public:
  explicit Rng(unsigned seed) : gen_(seed) {}
  double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(gen_); }
  int integer(int a, int b) { return std::uniform_int_distribution<int>(a, b)(gen_); }

private:
  std::mt19937_64 gen_;
};

// The 2x2 wave matrix written out from the coupled component equations.
inline Eigen::Matrix2cd oracle_matrix(const cavity::EnergyParam& E, const cavity::CavityModel& m, bool right) {
  const Complex U0(m.V0, m.V1), U1(m.W0, m.W1), iE = Complex(0, 1) * Complex(E.E0, E.E1);
  Eigen::Matrix2cd M;
  M << U0 + iE, -U1, std::conj(U1), std::conj(U0) + (right ? iE : -iE);
  return M;
}

inline Eigen::Vector2cd oracle_eigenvalues(const cavity::EnergyParam& E, const cavity::CavityModel& m, bool right) {
  Eigen::ComplexEigenSolver<Eigen::Matrix2cd> es(oracle_matrix(E, m, right));
  return es.eigenvalues();
}

inline double rel(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

} // namespace testing
