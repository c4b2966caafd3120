#pragma once

#include <memory>
#include <utility>
#include <vector>

#include "cavity/algebra.hpp"
#include "cavity/wavefunctions.hpp"

namespace cavity {

/// Closed-form wave function viewed as a quaternion-valued field. Wraps a
/// complex family (embedded as psi + 0 j), a quaternionic lift, or a real
/// linear combination of states. Immutable; copies share the payload.
class State {
public:
  static State complex(SolutionFamily family);
  static State lift(QuatLift lift);
  /// sum_k c_k s_k with real coefficients; all terms must share one model.
  static State combination(std::vector<std::pair<double, State>> terms);

  Quaternion value(double x, double t) const;
  Quaternion d_dx(double x, double t) const;
  Quaternion d2_dx2(double x, double t) const;
  Quaternion d_dt(double x, double t) const;

  /// Equation the state is meant to solve.
  WaveEquation equation() const;
  const CavityModel& model() const;

  /// The potential acting from the left: V psi (complex) or (U0 + U1 j) Psi.
  Quaternion apply_potential(const Quaternion& psi) const;

  const SolutionFamily* family() const; // non-null for complex states
  const QuatLift* as_lift() const;      // non-null for lifts

  std::string describe() const;

private:
  struct Impl;
  explicit State(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

} // namespace cavity
