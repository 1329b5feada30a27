#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "twopoint/galerkin.hpp"

namespace twopoint {

/// Coefficients `c` of u_m(t) and their time derivatives `v`.
struct State {
  Vector c;
  Vector v;
};

/// Boundary values u(0), u(1) and velocities u'(0), u'(1) at one sample.
struct TraceSample {
  double u0 = 0.0;
  double u1 = 0.0;
  double du0 = 0.0;
  double du1 = 0.0;
};

/// Uniformly sampled solution. All per-sample vectors have equal length;
/// `accumulated0/1` hold the running integrals of |u'(0,s)|^2 and |u'(1,s)|^2
/// from the first sample (trapezoid rule on the sample grid).
struct Trajectory {
  double dt = 0.0;
  std::vector<double> times;
  std::vector<State> states;
  std::vector<TraceSample> traces;
  std::vector<double> accumulated0;
  std::vector<double> accumulated1;

  std::size_t size() const noexcept { return times.size(); }
};

/// Nodal interpolants of the initial displacement and velocity.
State project_initial_data(const Mesh& mesh, const SpaceFn& u0, const SpaceFn& u1);

/// Implicit midpoint rule on the first-order form c' = v,
/// M v' = F(t) - (lam M + D) v - (A + K M + B) c. The iteration matrix
/// M + dt/2 (lam M + D) + dt^2/4 (A + K M + B) is factored once at
/// construction; throws SingularMatrixError if it is not invertible.
class MidpointStepper {
public:
  MidpointStepper(const GalerkinSystem& sys, double dt);

  /// Advances `state` from t to t + dt.
  State step(const GalerkinSystem& sys, const Forcing& forcing, const State& state,
             double t) const;

  double dt() const noexcept { return dt_; }

private:
  double dt_;
  Matrix restoring_;
  Matrix explicit_part_;
  Eigen::PartialPivLU<Matrix> lu_;
};

/// Single midpoint step; factors the iteration matrix on every call, so prefer
/// MidpointStepper (or `integrate`) inside loops.
State step(const GalerkinSystem& sys, const Forcing& forcing, const State& state, double t,
           double dt);

/// Samples at t0, t0 + dt, ..., t0 + T. Requires T > 0, dt > 0 and T / dt an
/// integer within 1e-9 relative; throws std::invalid_argument otherwise.
Trajectory integrate(const GalerkinSystem& sys, const Forcing& forcing, const State& initial,
                     double T, double dt, double t0 = 0.0);

/// Largest system the RK4 oracle accepts.
inline constexpr int kOracleMaxDim = 8;

/// Classical explicit RK4 on the same first-order form, stepping with
/// dt_oracle and recording every dt_sample so its samples align with an
/// `integrate` run of step dt_sample. Requires dim <= 8 (DimensionError) and
/// dt_oracle <= dt_sample / 100 with dt_sample / dt_oracle integral.
Trajectory oracle_integrate(const GalerkinSystem& sys, const Forcing& forcing,
                            const State& initial, double T, double dt_sample, double dt_oracle);

}  // namespace twopoint
