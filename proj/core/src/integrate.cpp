#include "twopoint/integrate.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "twopoint/errors.hpp"

namespace twopoint {

namespace {

long checked_step_count(double span, double dt, const char* what) {
  if (!(span > 0.0) || !(dt > 0.0)) {
    throw std::invalid_argument(std::string(what) + ": horizon and step must be positive");
  }
  const double ratio = span / dt;
  const long n = std::lround(ratio);
  if (n < 1 || std::abs(ratio - static_cast<double>(n)) > 1e-9 * ratio) {
    throw std::invalid_argument(std::string(what) + ": " + std::to_string(span) +
                                " is not an integer multiple of " + std::to_string(dt));
  }
  return n;
}

void require_state(const GalerkinSystem& sys, const State& s) {
  if (s.c.size() != sys.dim() || s.v.size() != sys.dim()) {
    throw DimensionError("state size does not match system dimension " +
                         std::to_string(sys.dim()));
  }
}

TraceSample traces_of(const GalerkinSystem& sys, const State& s) {
  return {sys.trace0.dot(s.c), sys.trace1.dot(s.c), sys.trace0.dot(s.v), sys.trace1.dot(s.v)};
}

class Recorder {
public:
  Recorder(const GalerkinSystem& sys, double dt, std::size_t n_samples) : sys_(sys), dt_(dt) {
    traj_.dt = dt;
    traj_.times.reserve(n_samples);
    traj_.states.reserve(n_samples);
    traj_.traces.reserve(n_samples);
    traj_.accumulated0.reserve(n_samples);
    traj_.accumulated1.reserve(n_samples);
  }

  void push(double t, const State& s) {
    const TraceSample tr = traces_of(sys_, s);
    double a0 = 0.0;
    double a1 = 0.0;
    if (!traj_.traces.empty()) {
      const TraceSample& prev = traj_.traces.back();
      a0 = traj_.accumulated0.back() + 0.5 * dt_ * (prev.du0 * prev.du0 + tr.du0 * tr.du0);
      a1 = traj_.accumulated1.back() + 0.5 * dt_ * (prev.du1 * prev.du1 + tr.du1 * tr.du1);
    }
    traj_.times.push_back(t);
    traj_.states.push_back(s);
    traj_.traces.push_back(tr);
    traj_.accumulated0.push_back(a0);
    traj_.accumulated1.push_back(a1);
  }

  Trajectory take() { return std::move(traj_); }

private:
  const GalerkinSystem& sys_;
  double dt_;
  Trajectory traj_;
};

}  // namespace

State project_initial_data(const Mesh& mesh, const SpaceFn& u0, const SpaceFn& u1) {
  return {interpolate(mesh, u0), interpolate(mesh, u1)};
}

MidpointStepper::MidpointStepper(const GalerkinSystem& sys, double dt) : dt_(dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("MidpointStepper: dt must be positive");
  restoring_ = sys.restoring();
  const Matrix damping = sys.damping();
  const Matrix implicit_part = sys.M + 0.5 * dt * damping + 0.25 * dt * dt * restoring_;
  explicit_part_ = sys.M - 0.5 * dt * damping - 0.25 * dt * dt * restoring_;
  lu_.compute(implicit_part);
  const double rcond = lu_.rcond();
  if (!(rcond > 1e-14)) {
    throw SingularMatrixError("midpoint iteration matrix is singular (rcond " +
                                  std::to_string(rcond) + ", dt " + std::to_string(dt) + ")",
                              dt);
  }
}

State MidpointStepper::step(const GalerkinSystem& sys, const Forcing& forcing,
                            const State& state, double t) const {
  // Eliminating c_{n+1} = c_n + dt/2 (v_n + v_{n+1}) from the midpoint
  // velocity equation leaves one linear solve for v_{n+1}.
  Vector rhs = explicit_part_ * state.v - dt_ * (restoring_ * state.c);
  if (!forcing.is_zero()) rhs += dt_ * load_vector(sys, forcing, t + 0.5 * dt_);
  State next;
  next.v = lu_.solve(rhs);
  next.c = state.c + 0.5 * dt_ * (state.v + next.v);
  return next;
}

State step(const GalerkinSystem& sys, const Forcing& forcing, const State& state, double t,
           double dt) {
  require_state(sys, state);
  return MidpointStepper(sys, dt).step(sys, forcing, state, t);
}

Trajectory integrate(const GalerkinSystem& sys, const Forcing& forcing, const State& initial,
                     double T, double dt, double t0) {
  require_state(sys, initial);
  const long n_steps = checked_step_count(T, dt, "integrate");
  const MidpointStepper stepper(sys, dt);

  Recorder rec(sys, dt, static_cast<std::size_t>(n_steps) + 1);
  State s = initial;
  rec.push(t0, s);
  for (long k = 0; k < n_steps; ++k) {
    const double t = t0 + static_cast<double>(k) * dt;
    s = stepper.step(sys, forcing, s, t);
    rec.push(t0 + static_cast<double>(k + 1) * dt, s);
  }
  return rec.take();
}

Trajectory oracle_integrate(const GalerkinSystem& sys, const Forcing& forcing,
                            const State& initial, double T, double dt_sample,
                            double dt_oracle) {
  if (sys.dim() > kOracleMaxDim) {
    throw DimensionError("oracle_integrate supports at most " + std::to_string(kOracleMaxDim) +
                         " unknowns, got " + std::to_string(sys.dim()));
  }
  require_state(sys, initial);
  const long n_samples = checked_step_count(T, dt_sample, "oracle_integrate");
  const long substeps = checked_step_count(dt_sample, dt_oracle, "oracle_integrate");
  if (substeps < 100) {
    throw std::invalid_argument("oracle_integrate: dt_oracle must be at most dt_sample / 100");
  }

  const Eigen::LLT<Matrix> mass(sys.M);
  const Matrix damping = sys.damping();
  const Matrix restoring = sys.restoring();
  auto accel = [&](double t, const Vector& c, const Vector& v) -> Vector {
    Vector rhs = -damping * v - restoring * c;
    if (!forcing.is_zero()) rhs += load_vector(sys, forcing, t);
    return mass.solve(rhs);
  };

  Recorder rec(sys, dt_sample, static_cast<std::size_t>(n_samples) + 1);
  Vector c = initial.c;
  Vector v = initial.v;
  rec.push(0.0, initial);
  const double h = dt_oracle;
  for (long k = 0; k < n_samples; ++k) {
    for (long s = 0; s < substeps; ++s) {
      const double t = static_cast<double>(k) * dt_sample + static_cast<double>(s) * h;
      const Vector k1c = v;
      const Vector k1v = accel(t, c, v);
      const Vector k2c = v + 0.5 * h * k1v;
      const Vector k2v = accel(t + 0.5 * h, c + 0.5 * h * k1c, k2c);
      const Vector k3c = v + 0.5 * h * k2v;
      const Vector k3v = accel(t + 0.5 * h, c + 0.5 * h * k2c, k3c);
      const Vector k4c = v + h * k3v;
      const Vector k4v = accel(t + h, c + h * k3c, k4c);
      c += (h / 6.0) * (k1c + 2.0 * k2c + 2.0 * k3c + k4c);
      v += (h / 6.0) * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
    }
    rec.push(static_cast<double>(k + 1) * dt_sample, State{c, v});
  }
  return rec.take();
}

}  // namespace twopoint
