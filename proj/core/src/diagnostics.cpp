#include "twopoint/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "twopoint/errors.hpp"

namespace twopoint {

namespace {

void require_pair(const GalerkinSystem& sys, const Vector& c, const Vector& v) {
  if (c.size() != sys.dim() || v.size() != sys.dim()) {
    throw DimensionError("state size does not match system dimension");
  }
}

std::vector<double> centered_gamma_rate(const std::vector<EnergyRecord>& r, double dt) {
  std::vector<double> out(r.size(), 0.0);
  for (std::size_t i = 1; i + 1 < r.size(); ++i) {
    out[i] = (r[i + 1].Gamma - r[i - 1].Gamma) / (2.0 * dt);
  }
  return out;
}

double uniform_step(const std::vector<EnergyRecord>& r) {
  const double dt = (r.back().t - r.front().t) / static_cast<double>(r.size() - 1);
  if (!(dt > 0.0)) throw std::invalid_argument("records must have increasing times");
  return dt;
}

}  // namespace

double energy(const GalerkinSystem& sys, const ProblemParams& p, const Vector& c,
              const Vector& v) {
  require_pair(sys, c, v);
  return 0.5 * v.dot(sys.M * v) + 0.5 * c.dot(sys.A * c) + 0.5 * p.K * c.dot(sys.M * c);
}

double psi(const GalerkinSystem& sys, const ProblemParams& p, const Vector& c, const Vector& v) {
  require_pair(sys, c, v);
  const Vector Mc = sys.M * c;
  const double u0 = sys.trace0.dot(c);
  const double u1 = sys.trace1.dot(c);
  return Mc.dot(v) + 0.5 * p.lam * c.dot(Mc) + 0.5 * p.lam0 * u0 * u0 + 0.5 * p.lam1 * u1 * u1;
}

double lyapunov(const GalerkinSystem& sys, const ProblemParams& p, const DerivedConstants& dc,
                const Vector& c, const Vector& v) {
  return energy(sys, p, c, v) + dc.delta * psi(sys, p, c, v);
}

double sigma_forcing(const Forcing& forcing, const GalerkinSystem& sys, double t) {
  double s = 0.0;
  if (forcing.f) {
    if (!sys.mesh) throw DimensionError("sigma_forcing: interior forcing needs a mesh");
    s += integrate_over(*sys.mesh, [&](double x) {
      const double fx = forcing.f(x, t);
      return fx * fx;
    });
  }
  if (forcing.g0) {
    const double g = forcing.g0(t);
    s += g * g;
  }
  if (forcing.g1) {
    const double g = forcing.g1(t);
    s += g * g;
  }
  return s;
}

std::vector<EnergyRecord> record_trajectory(const Trajectory& traj, const GalerkinSystem& sys,
                                            const ProblemParams& p, const DerivedConstants& dc,
                                            const Forcing& forcing) {
  std::vector<EnergyRecord> out;
  out.reserve(traj.size());
  for (std::size_t i = 0; i < traj.size(); ++i) {
    const State& s = traj.states[i];
    EnergyRecord r;
    r.t = traj.times[i];
    r.E = energy(sys, p, s.c, s.v);
    r.psi = psi(sys, p, s.c, s.v);
    r.Gamma = r.E + dc.delta * r.psi;
    r.sigma = forcing.is_zero() ? 0.0 : sigma_forcing(forcing, sys, r.t);
    r.X = s.v.dot(sys.M * s.v) + norm_1_sq(sys, s.c) + traj.accumulated0[i] +
          traj.accumulated1[i];
    r.u0_trace = traj.traces[i].u0;
    r.u1_trace = traj.traces[i].u1;
    out.push_back(r);
  }
  return out;
}

SandwichReport check_sandwich(const std::vector<EnergyRecord>& records,
                              const DerivedConstants& dc) {
  SandwichReport rep;
  rep.min_ratio = std::numeric_limits<double>::infinity();
  rep.max_ratio = -std::numeric_limits<double>::infinity();
  for (const auto& r : records) {
    const double tol = 1e-10 * std::max(r.E, 1.0);
    if (r.Gamma < dc.beta1 * r.E - tol || r.Gamma > dc.beta2 * r.E + tol) ++rep.violations;
    if (r.E > 0.0) {
      const double ratio = r.Gamma / r.E;
      rep.min_ratio = std::min(rep.min_ratio, ratio);
      rep.max_ratio = std::max(rep.max_ratio, ratio);
    }
  }
  if (rep.min_ratio > rep.max_ratio) rep.min_ratio = rep.max_ratio = 0.0;
  return rep;
}

double calibrate_fd_constant(const std::vector<EnergyRecord>& coarse,
                             const std::vector<EnergyRecord>& fine) {
  if (coarse.size() < 3) throw TooFewSamples("calibration needs at least 3 coarse records");
  if (fine.size() != 2 * coarse.size() - 1) {
    throw std::invalid_argument("fine run must use half the coarse step over the same span");
  }
  const double dt = uniform_step(coarse);
  const double half = uniform_step(fine);
  const std::vector<double> dc = centered_gamma_rate(coarse, dt);
  const std::vector<double> df = centered_gamma_rate(fine, half);
  double worst = 0.0;
  for (std::size_t i = 1; i + 1 < coarse.size(); ++i) {
    worst = std::max(worst, std::abs(dc[i] - df[2 * i]));
  }
  // |D_dt - D_dt/2| ~ C (dt^2 - dt^2 / 4)
  return worst / (0.75 * dt * dt);
}

DifferentialReport check_differential_inequality(const std::vector<EnergyRecord>& records,
                                                 const DerivedConstants& dc,
                                                 double fd_constant) {
  if (records.size() < 3) throw TooFewSamples("differential check needs at least 3 records");
  const double dt = uniform_step(records);
  const std::vector<double> rate = centered_gamma_rate(records, dt);
  const bool forced = std::any_of(records.begin(), records.end(),
                                  [](const EnergyRecord& r) { return r.sigma != 0.0; });
  const double forcing_weight = forced ? 0.5 * (1.0 / dc.eps1 + dc.delta / dc.eps2) : 0.0;

  DifferentialReport rep;
  rep.tolerance = fd_constant * dt * dt + 1e-8;
  rep.worst_excess = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i + 1 < records.size(); ++i) {
    const EnergyRecord& r = records[i];
    const double rhs = -dc.delta * r.Gamma + forcing_weight * r.sigma;
    const double excess = rate[i] - rhs;
    rep.worst_excess = std::max(rep.worst_excess, excess);
    if (excess > rep.tolerance) ++rep.violations;
    ++rep.checked;
  }
  return rep;
}

DecayReport fit_decay_rate(const std::vector<EnergyRecord>& records,
                           std::optional<FitWindow> window) {
  if (records.empty()) throw InsufficientDataError("no records to fit");
  const FitWindow w = window.value_or(FitWindow{
      records.front().t + 0.5 * (records.back().t - records.front().t), records.back().t});

  std::vector<double> ts;
  std::vector<double> ys;
  for (const auto& r : records) {
    if (r.t >= w.start && r.t <= w.end && r.E > kFitEnergyFloor) {
      ts.push_back(r.t);
      ys.push_back(std::log(r.E));
    }
  }
  if (ts.size() < kFitMinSamples) {
    throw InsufficientDataError("fit window [" + std::to_string(w.start) + ", " +
                                std::to_string(w.end) + "] keeps " + std::to_string(ts.size()) +
                                " samples with E > 1e-14; energy decays too fast for the horizon");
  }

  const double n = static_cast<double>(ts.size());
  double tm = 0.0;
  double ym = 0.0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    tm += ts[i];
    ym += ys[i];
  }
  tm /= n;
  ym /= n;
  double stt = 0.0;
  double sty = 0.0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    stt += (ts[i] - tm) * (ts[i] - tm);
    sty += (ts[i] - tm) * (ys[i] - ym);
  }
  const double slope = sty / stt;
  const double intercept = ym - slope * tm;
  double ss = 0.0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const double e = ys[i] - (intercept + slope * ts[i]);
    ss += e * e;
  }

  DecayReport rep;
  rep.fitted_rate = -slope;
  rep.fitted_amplitude = std::exp(intercept);
  rep.fit_window = {ts.front(), ts.back()};
  rep.residual = std::sqrt(ss / n);
  rep.samples = ts.size();
  return rep;
}

}  // namespace twopoint
