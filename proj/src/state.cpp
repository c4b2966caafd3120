#include "cavity/state.hpp"

#include <sstream>
#include <variant>

#include "cavity/errors.hpp"

namespace cavity {

namespace {

using Terms = std::vector<std::pair<double, State>>;

Quaternion embed(Complex c) { return Quaternion(c); }

// Lift components: Psi = c (psi, Y0 conj(psi)); any real derivative commutes with conj.
Quaternion lift_of(const QuatLift& l, Complex psi) {
  const double c = l.normalizer();
  return Quaternion::from_pair(c * psi, c * l.Y0 * std::conj(psi));
}

} // namespace

struct State::Impl {
  std::variant<SolutionFamily, QuatLift, Terms> payload;
  WaveEquation equation = WaveEquation::Complex;
  CavityModel model;
};

State State::complex(SolutionFamily family) {
  auto impl = std::make_shared<Impl>();
  impl->model = family.model;
  impl->equation = WaveEquation::Complex;
  impl->payload = std::move(family);
  return State(std::move(impl));
}

State State::lift(QuatLift lift) {
  auto impl = std::make_shared<Impl>();
  impl->model = lift.base.model;
  impl->equation = lift.equation;
  impl->payload = std::move(lift);
  return State(std::move(impl));
}

State State::combination(std::vector<std::pair<double, State>> terms) {
  if (terms.empty()) throw DomainError("combination needs at least one term");
  auto impl = std::make_shared<Impl>();
  impl->model = terms.front().second.model();
  impl->equation = terms.front().second.equation();
  for (const auto& [coef, s] : terms)
    if (!(s.model() == impl->model)) throw DomainError("combined states must share one cavity model");
  impl->payload = std::move(terms);
  return State(std::move(impl));
}

namespace {

template <class FamilyFn>
Quaternion dispatch(const std::variant<SolutionFamily, QuatLift, Terms>& payload, FamilyFn fn,
                    Quaternion (State::*member)(double, double) const, double x, double t) {
  if (const auto* f = std::get_if<SolutionFamily>(&payload)) return embed(fn(*f, x, t));
  if (const auto* l = std::get_if<QuatLift>(&payload)) return lift_of(*l, fn(l->base, x, t));
  Quaternion sum;
  for (const auto& [coef, s] : std::get<Terms>(payload)) sum += coef * (s.*member)(x, t);
  return sum;
}

} // namespace

Quaternion State::value(double x, double t) const {
  return dispatch(
      impl_->payload, [](const SolutionFamily& f, double xx, double tt) { return eval_psi(f, xx, tt); }, &State::value,
      x, t);
}

Quaternion State::d_dx(double x, double t) const {
  return dispatch(
      impl_->payload, [](const SolutionFamily& f, double xx, double tt) { return eval_dpsi_dx(f, xx, tt); },
      &State::d_dx, x, t);
}

Quaternion State::d2_dx2(double x, double t) const {
  return dispatch(
      impl_->payload, [](const SolutionFamily& f, double xx, double tt) { return eval_d2psi_dx2(f, xx, tt); },
      &State::d2_dx2, x, t);
}

Quaternion State::d_dt(double x, double t) const {
  return dispatch(
      impl_->payload, [](const SolutionFamily& f, double xx, double tt) { return eval_dpsi_dt(f, xx, tt); },
      &State::d_dt, x, t);
}

WaveEquation State::equation() const { return impl_->equation; }
const CavityModel& State::model() const { return impl_->model; }

Quaternion State::apply_potential(const Quaternion& psi) const {
  if (impl_->equation == WaveEquation::Complex) return left_mul(impl_->model.U0(), psi);
  return Quaternion::from_pair(impl_->model.U0(), impl_->model.U1()) * psi;
}

const SolutionFamily* State::family() const { return std::get_if<SolutionFamily>(&impl_->payload); }
const QuatLift* State::as_lift() const { return std::get_if<QuatLift>(&impl_->payload); }

std::string State::describe() const {
  std::ostringstream os;
  if (const auto* f = family()) {
    os << "complex " << to_string(f->kind);
    if (f->quantized()) os << " N=" << f->N;
    else if (f->kind != FamilyKind::PhaseGeneralized) os << ' ' << to_string(f->parity);
  } else if (const auto* l = as_lift()) {
    os << to_string(l->equation) << "-lift " << to_string(l->base.kind);
    if (l->base.quantized()) os << " N=" << l->base.N;
    else if (l->base.kind != FamilyKind::PhaseGeneralized) os << ' ' << to_string(l->base.parity);
  } else {
    os << "combination of " << std::get<Terms>(impl_->payload).size() << " states";
  }
  return os.str();
}

} // namespace cavity
