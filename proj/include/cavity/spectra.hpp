#pragma once

#include <vector>

#include "cavity/dispersion.hpp"

namespace cavity {

struct Level {
  int N = 1;
  double E_complex = 0.0; // E_N = hbar^2 pi^2 N^2 / (2 m ell^2) + V0
  double E_quat = 0.0;    // E1(N) = sqrt(E_N^2 + |U1|^2)
};

/// hbar^2 pi^2 / (2 m ell^2), the level quantum of the box.
double level_quantum(const CavityModel& model);

double complex_level(const CavityModel& model, int N);
double quat_level(const CavityModel& model, int N);

/// Levels N = 1..n_max. Throws DomainError when n_max < 1.
std::vector<Level> levels(const CavityModel& model, int n_max);

struct LevelGap {
  double gap_complex = 0.0; // E_N - E_M
  double gap_quat = 0.0;    // E1(N) - E1(M)
  double gap_sq_quat = 0.0; // E1(N)^2 - E1(M)^2
};

/// Gaps between entries N and M of `table` (N >= M >= 1, both present).
LevelGap level_gap(const std::vector<Level>& table, int N, int M);

/// (N^4 - M^4) q^2 with q the level quantum. Equals gap_sq_quat only at V0 = 0.
double squared_gap_prediction(const CavityModel& model, int N, int M);

} // namespace cavity
