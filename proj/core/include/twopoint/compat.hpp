#pragma once

#include <vector>

#include "twopoint/galerkin.hpp"
#include "twopoint/params.hpp"

namespace twopoint {

/// A function of x together with whatever analytic x-derivatives are known.
///
/// `second_derivative()` shifts the analytic chain by two. When fewer than two
/// analytic derivatives remain it falls back to a 5-point central difference
/// (step 1e-4) of the value, which is allowed once: differentiating a
/// difference-derived field again throws OrderError. Closures must be finite
/// slightly outside [0, 1] for the fallback to work at the endpoints.
class SpatialField {
public:
  /// The zero function, with every derivative available.
  SpatialField() = default;

  /// derivatives[k] is the k-th derivative; derivatives[0] must be set.
  explicit SpatialField(std::vector<SpaceFn> derivatives);

  double operator()(double x) const;

  /// Number of analytic derivatives beyond the value; -1 stands for the zero
  /// function, which has all of them.
  int analytic_order() const noexcept;
  bool is_zero() const noexcept { return derivatives_.empty(); }

  SpatialField second_derivative() const;

  friend SpatialField operator+(const SpatialField& a, const SpatialField& b);
  friend SpatialField operator*(double s, const SpatialField& a);

  static constexpr double kFiniteDifferenceStep = 1e-4;

private:
  std::vector<SpaceFn> derivatives_;
  bool numeric_ = false;  // produced by a finite difference
};

/// Initial data and time-derivative towers of the forcing:
/// f_time_derivs[k] = d^k f / dt^k, g0_derivs[k] = d^k g0 / dt^k, and so on.
/// Empty callables stand for zero.
struct SmoothData {
  SpatialField u0;
  SpatialField u1;
  std::vector<SpaceTimeFn> f_time_derivs;
  std::vector<TimeFn> g0_derivs;
  std::vector<TimeFn> g1_derivs;

  Forcing forcing(int k) const;
};

struct CompatibilityData {
  SpatialField u0;
  SpatialField u1;
};

/// Initial data of the problem differentiated r times in time:
///   u0^[0] = u0,  u1^[0] = u1,
///   u0^[r] = u1^[r-1],
///   u1^[r] = (u0^[r-1])_xx - K u0^[r-1] - lam u1^[r-1] + d^{r-1} f / dt^{r-1} (x, 0).
/// Throws OrderError when a required time derivative of f or a spatial
/// derivative is unavailable.
CompatibilityData compatibility_data(const SmoothData& data, const ProblemParams& p, int r);

struct LadderReport {
  int order = 0;
  double absolute = 0.0;  ///< max over interior samples and nodes
  double scale = 0.0;     ///< max |u^[r]| over the same samples
  double relative = 0.0;  ///< absolute / scale (0 when both vanish)
};

struct LadderOptions {
  /// Added to u1^[r] before solving the differentiated problem; a nonzero
  /// value makes the compatibility data deliberately inconsistent.
  double velocity_perturbation = 0.0;
};

/// Solves the original problem and its r-times differentiated counterpart
/// (r in {1, 2}) on `mesh` and compares the r-th centered time difference of
/// the former against the latter at every interior sample.
LadderReport ladder_check(const SmoothData& data, const ProblemParams& p, const Mesh& mesh, int r,
                          double T, double dt, const LadderOptions& options = {});

}  // namespace twopoint
