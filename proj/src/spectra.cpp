#include "cavity/spectra.hpp"

#include <cmath>
#include <numbers>

#include "cavity/errors.hpp"

namespace cavity {

double level_quantum(const CavityModel& model) {
  const double pi = std::numbers::pi;
  return model.hbar * model.hbar * pi * pi / (2.0 * model.mass * model.ell * model.ell);
}

double complex_level(const CavityModel& model, int N) {
  return level_quantum(model) * static_cast<double>(N) * N + model.V0;
}

double quat_level(const CavityModel& model, int N) {
  return std::hypot(complex_level(model, N), std::abs(model.U1()));
}

std::vector<Level> levels(const CavityModel& model, int n_max) {
  if (n_max < 1) throw DomainError("levels: N_max must be >= 1");
  model.validate();
  std::vector<Level> out;
  out.reserve(static_cast<size_t>(n_max));
  for (int n = 1; n <= n_max; ++n) out.push_back({n, complex_level(model, n), quat_level(model, n)});
  return out;
}

LevelGap level_gap(const std::vector<Level>& table, int N, int M) {
  if (M < 1 || N < M) throw DomainError("level_gap requires N >= M >= 1");
  if (static_cast<size_t>(N) > table.size()) throw DomainError("level_gap: N beyond the level table");
  const Level& a = table[static_cast<size_t>(N - 1)];
  const Level& b = table[static_cast<size_t>(M - 1)];
  return {a.E_complex - b.E_complex, a.E_quat - b.E_quat, a.E_quat * a.E_quat - b.E_quat * b.E_quat};
}

double squared_gap_prediction(const CavityModel& model, int N, int M) {
  const double q = level_quantum(model);
  const double n2 = static_cast<double>(N) * N;
  const double m2 = static_cast<double>(M) * M;
  return (n2 * n2 - m2 * m2) * q * q;
}

} // namespace cavity
