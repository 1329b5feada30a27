#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "twopoint/galerkin.hpp"
#include "twopoint/integrate.hpp"
#include "twopoint/params.hpp"

namespace twopoint {

/// Observables of one sample.
struct EnergyRecord {
  double t = 0.0;
  double E = 0.0;      ///< 1/2 ||u'||^2 + 1/2 ||u||_a^2 + K/2 ||u||^2
  double psi = 0.0;    ///< <u, u'> + lam/2 ||u||^2 + lam0/2 u(0)^2 + lam1/2 u(1)^2
  double Gamma = 0.0;  ///< E + delta psi
  double sigma = 0.0;  ///< ||f(t)||^2 + g0(t)^2 + g1(t)^2
  double X = 0.0;      ///< ||u'||^2 + ||u||_1^2 + boundary velocity integrals
  double u0_trace = 0.0;
  double u1_trace = 0.0;
};

double energy(const GalerkinSystem& sys, const ProblemParams& p, const Vector& c, const Vector& v);
double psi(const GalerkinSystem& sys, const ProblemParams& p, const Vector& c, const Vector& v);
/// energy + dc.delta * psi
double lyapunov(const GalerkinSystem& sys, const ProblemParams& p, const DerivedConstants& dc,
                const Vector& c, const Vector& v);

/// ||f(., t)||^2 (element-wise Gauss rule) + g0(t)^2 + g1(t)^2.
double sigma_forcing(const Forcing& forcing, const GalerkinSystem& sys, double t);

/// Per-sample records. Pass a default DerivedConstants (delta = 0) when the
/// decay constants are unavailable; Gamma then equals E.
std::vector<EnergyRecord> record_trajectory(const Trajectory& traj, const GalerkinSystem& sys,
                                            const ProblemParams& p, const DerivedConstants& dc,
                                            const Forcing& forcing);

struct SandwichReport {
  std::size_t violations = 0;
  double min_ratio = 0.0;  ///< smallest Gamma / E over samples with E > 0
  double max_ratio = 0.0;  ///< largest Gamma / E over samples with E > 0
};

/// Counts samples with Gamma < beta1 E - tol or Gamma > beta2 E + tol,
/// tol = 1e-10 max(E, 1). Reports rather than rejects an invalid delta.
SandwichReport check_sandwich(const std::vector<EnergyRecord>& records, const DerivedConstants& dc);

struct DifferentialReport {
  std::size_t violations = 0;
  std::size_t checked = 0;
  double tolerance = 0.0;
  double worst_excess = 0.0;  ///< max of Gamma'_fd - rhs over interior samples
};

/// Richardson estimate of C in |Gamma'_fd - Gamma'| ~ C dt^2 from two runs of
/// the same scenario with steps dt (`coarse`) and dt / 2 (`fine`).
double calibrate_fd_constant(const std::vector<EnergyRecord>& coarse,
                             const std::vector<EnergyRecord>& fine);

/// Checks Gamma' <= -delta Gamma + 1/2 (1/eps1 + delta/eps2) sigma with Gamma'
/// from centered differences, allowing fd_constant dt^2 + 1e-8. Throws
/// TooFewSamples for fewer than 3 records.
DifferentialReport check_differential_inequality(const std::vector<EnergyRecord>& records,
                                                 const DerivedConstants& dc, double fd_constant);

struct FitWindow {
  double start = 0.0;
  double end = 0.0;
};

struct DecayReport {
  double fitted_rate = 0.0;       ///< -slope of log E
  double fitted_amplitude = 0.0;  ///< exp(intercept)
  double theoretical_delta = 0.0;
  std::size_t sandwich_violations = 0;
  std::size_t differential_violations = 0;
  FitWindow fit_window;           ///< times of the first and last sample used
  double residual = 0.0;          ///< RMS misfit of log E about the fitted line
  std::size_t samples = 0;
};

inline constexpr double kFitEnergyFloor = 1e-14;
inline constexpr std::size_t kFitMinSamples = 10;

/// Least squares fit of log E against t. The window defaults to the second
/// half of the recorded span; samples with E <= 1e-14 are skipped. Throws
/// InsufficientDataError if fewer than 10 samples remain.
DecayReport fit_decay_rate(const std::vector<EnergyRecord>& records,
                           std::optional<FitWindow> window = std::nullopt);

}  // namespace twopoint
