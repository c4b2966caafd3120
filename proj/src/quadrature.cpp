#include "cavity/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "cavity/errors.hpp"

namespace cavity {

namespace {
constexpr int kMinDoublings = 5;
constexpr int kMaxColumns = 10;
} // namespace

QuadratureResult quadrature(const std::function<double(double)>& f, double a, double b, double tol,
                            int max_doublings, double abs_tol) {
  if (!(a < b)) throw DomainError("quadrature requires a < b");
  const double width = b - a;

  const double fa = f(a);
  const double fb = f(b);
  double trap = 0.5 * width * (fa + fb);
  double trap_abs = 0.5 * width * (std::abs(fa) + std::abs(fb));
  long evals = 2;

  std::vector<double> prev{trap};
  std::vector<double> row;
  double prev_diff = std::numeric_limits<double>::infinity();

  for (int k = 1; k <= max_doublings; ++k) {
    const long panels = 1L << k;
    const double h = width / static_cast<double>(panels);
    double mid = 0.0;
    double mid_abs = 0.0;
    for (long i = 1; i < panels; i += 2) {
      const double v = f(a + static_cast<double>(i) * h);
      mid += v;
      mid_abs += std::abs(v);
    }
    evals += panels / 2;
    trap = 0.5 * trap + h * mid;
    trap_abs = 0.5 * trap_abs + h * mid_abs;

    const int cols = std::min(k, kMaxColumns);
    row.assign(static_cast<size_t>(cols) + 1, 0.0);
    row[0] = trap;
    double factor = 1.0;
    for (int j = 1; j <= cols; ++j) {
      factor *= 4.0;
      const double older = j - 1 < static_cast<int>(prev.size()) ? prev[j - 1] : prev.back();
      row[j] = row[j - 1] + (row[j - 1] - older) / (factor - 1.0);
    }
    const double best = row.back();
    const double diff = std::abs(best - prev.back());
    const double floor = 20.0 * std::numeric_limits<double>::epsilon() * trap_abs;
    const double target = std::max(tol * std::max(std::abs(best), trap_abs), abs_tol);
    const double err = std::max(diff, floor);

    if (k >= kMinDoublings && err <= target && std::max(prev_diff, floor) <= target * 1e3) {
      return {best, err, trap_abs, k, evals};
    }
    prev_diff = diff;
    prev.swap(row);
  }
  std::ostringstream msg;
  msg << "quadrature did not converge on [" << a << ", " << b << "] after " << max_doublings << " doublings";
  throw NonConvergence(msg.str());
}

} // namespace cavity
