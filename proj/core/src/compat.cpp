#include "twopoint/compat.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "twopoint/errors.hpp"
#include "twopoint/integrate.hpp"

namespace twopoint {

SpatialField::SpatialField(std::vector<SpaceFn> derivatives)
    : derivatives_(std::move(derivatives)) {
  if (derivatives_.empty() || !derivatives_.front()) {
    throw std::invalid_argument("SpatialField needs at least its value");
  }
  // Trailing empty entries carry no information.
  while (!derivatives_.back()) derivatives_.pop_back();
}

double SpatialField::operator()(double x) const {
  return derivatives_.empty() ? 0.0 : derivatives_.front()(x);
}

int SpatialField::analytic_order() const noexcept {
  return derivatives_.empty() ? -1 : static_cast<int>(derivatives_.size()) - 1;
}

SpatialField SpatialField::second_derivative() const {
  if (is_zero()) return {};
  SpatialField out;
  if (derivatives_.size() >= 3) {
    out.derivatives_.assign(derivatives_.begin() + 2, derivatives_.end());
    out.numeric_ = numeric_;
    return out;
  }
  if (numeric_) {
    throw OrderError("second derivative of a finite-difference field is not available; "
                     "supply analytic derivatives");
  }
  const SpaceFn g = derivatives_.front();
  out.derivatives_.push_back([g](double x) {
    constexpr double h = kFiniteDifferenceStep;
    return (-g(x + 2 * h) + 16.0 * g(x + h) - 30.0 * g(x) + 16.0 * g(x - h) - g(x - 2 * h)) /
           (12.0 * h * h);
  });
  out.numeric_ = true;
  return out;
}

SpatialField operator+(const SpatialField& a, const SpatialField& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  SpatialField out;
  const std::size_t n = std::min(a.derivatives_.size(), b.derivatives_.size());
  out.derivatives_.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    out.derivatives_.push_back(
        [fa = a.derivatives_[k], fb = b.derivatives_[k]](double x) { return fa(x) + fb(x); });
  }
  out.numeric_ = a.numeric_ || b.numeric_;
  return out;
}

SpatialField operator*(double s, const SpatialField& a) {
  if (a.is_zero() || s == 0.0) return {};
  SpatialField out;
  out.derivatives_.reserve(a.derivatives_.size());
  for (const auto& d : a.derivatives_) {
    out.derivatives_.push_back([s, d](double x) { return s * d(x); });
  }
  out.numeric_ = a.numeric_;
  return out;
}

Forcing SmoothData::forcing(int k) const {
  const auto idx = static_cast<std::size_t>(k);
  if (k < 0 || idx >= f_time_derivs.size() || idx >= g0_derivs.size() ||
      idx >= g1_derivs.size()) {
    throw OrderError("forcing time derivative of order " + std::to_string(k) +
                     " is not supplied");
  }
  return {f_time_derivs[idx], g0_derivs[idx], g1_derivs[idx]};
}

CompatibilityData compatibility_data(const SmoothData& data, const ProblemParams& p, int r) {
  if (r < 0) throw OrderError("compatibility order must be non-negative");
  CompatibilityData cur{data.u0, data.u1};
  for (int k = 1; k <= r; ++k) {
    const auto idx = static_cast<std::size_t>(k - 1);
    if (idx >= data.f_time_derivs.size()) {
      throw OrderError("compatibility data of order " + std::to_string(r) + " needs d^" +
                       std::to_string(k - 1) + "f/dt^" + std::to_string(k - 1));
    }
    SpatialField source;
    if (const SpaceTimeFn& f = data.f_time_derivs[idx]) {
      source = SpatialField({[f](double x) { return f(x, 0.0); }});
    }
    CompatibilityData next;
    next.u0 = cur.u1;
    next.u1 = cur.u0.second_derivative() + (-p.K) * cur.u0 + (-p.lam) * cur.u1 + source;
    cur = std::move(next);
  }
  return cur;
}

LadderReport ladder_check(const SmoothData& data, const ProblemParams& p, const Mesh& mesh, int r,
                          double T, double dt, const LadderOptions& options) {
  if (r != 1 && r != 2) throw std::invalid_argument("ladder_check supports r = 1 or 2");

  const GalerkinSystem sys = assemble(mesh, p);
  const State base_initial = project_initial_data(mesh, data.u0, data.u1);
  const Trajectory base = integrate(sys, data.forcing(0), base_initial, T, dt);

  const CompatibilityData compat = compatibility_data(data, p, r);
  State diff_initial = project_initial_data(mesh, compat.u0, compat.u1);
  diff_initial.v.array() += options.velocity_perturbation;
  const Trajectory differentiated = integrate(sys, data.forcing(r), diff_initial, T, dt);

  LadderReport rep;
  rep.order = r;
  for (std::size_t i = 1; i + 1 < base.size(); ++i) {
    const Vector& prev = base.states[i - 1].c;
    const Vector& here = base.states[i].c;
    const Vector& next = base.states[i + 1].c;
    const Vector approx =
        r == 1 ? Vector((next - prev) / (2.0 * dt)) : Vector((next - 2.0 * here + prev) / (dt * dt));
    const Vector& target = differentiated.states[i].c;
    rep.absolute = std::max(rep.absolute, (approx - target).cwiseAbs().maxCoeff());
    rep.scale = std::max(rep.scale, target.cwiseAbs().maxCoeff());
  }
  if (rep.absolute == 0.0) {
    rep.relative = 0.0;
  } else {
    rep.relative = rep.scale > 0.0 ? rep.absolute / rep.scale
                                   : std::numeric_limits<double>::infinity();
  }
  return rep;
}

}  // namespace twopoint
