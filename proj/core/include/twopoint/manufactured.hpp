#pragma once

#include <functional>
#include <string>
#include <vector>

#include "twopoint/compat.hpp"
#include "twopoint/galerkin.hpp"
#include "twopoint/params.hpp"

namespace twopoint {

/// Derivative tower: profile(k, s) is the k-th derivative at s.
using DerivativeTower = std::function<double(int k, double s)>;

/// Exact solution u(x, t) = tau(t) phi(x) with forcing and boundary data
/// synthesized so that it solves the damped two-point problem for `params`.
class ManufacturedSolution {
public:
  ManufacturedSolution(std::string name, ProblemParams params, DerivativeTower time_part,
                       DerivativeTower space_part);

  const std::string& name() const noexcept { return name_; }
  const ProblemParams& params() const noexcept { return params_; }

  /// d^kt/dt^kt d^kx/dx^kx u at (x, t).
  double derivative(int kt, int kx, double x, double t) const;
  double u(double x, double t) const { return derivative(0, 0, x, t); }

  /// k-th time derivative of the synthesized f, g0, g1:
  ///   f  = u_tt - u_xx + K u + lam u_t
  ///   g0 = u_x(0) - h0 u(0) - lam0 u_t(0) - ht1 u(1) - lt1 u_t(1)
  ///   g1 = -u_x(1) - h1 u(1) - lam1 u_t(1) - ht0 u(0) - lt0 u_t(0)
  double f(double x, double t, int k = 0) const;
  double g0(double t, int k = 0) const;
  double g1(double t, int k = 0) const;

  Forcing forcing(int k = 0) const;

  SpaceFn initial_displacement() const;
  SpaceFn initial_velocity() const;
  /// Profile of d^k u / dt^k at time t.
  SpaceFn profile(double t, int k = 0) const;
  SpaceFn profile_x(double t) const;

  /// Initial data with analytic spatial derivatives (up to order 4) and
  /// forcing towers up to order r.
  SmoothData smooth_data(int r) const;

  bool is_zero() const noexcept { return name_ == "zero"; }

private:
  std::string name_;
  ProblemParams params_;
  DerivativeTower tau_;
  DerivativeTower phi_;
};

/// Registered exact solutions.
inline const std::vector<std::string>& manufactured_forms() {
  static const std::vector<std::string> forms = {"zero", "decaying_cosine", "decaying_affine",
                                                 "polynomial"};
  return forms;
}

/// decaying_cosine: exp(-alpha t) cos(pi x); decaying_affine:
/// exp(-alpha t)(1 + x); polynomial: (1 + t^2)(x^2 - x + 1); zero.
/// Throws UnknownFormError for anything else.
ManufacturedSolution manufacture(const std::string& form, const ProblemParams& p,
                                 double alpha = 0.5);

}  // namespace twopoint
