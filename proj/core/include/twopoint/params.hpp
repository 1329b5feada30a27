#pragma once

#include <optional>
#include <string>
#include <vector>

namespace twopoint {

/// Constants of the damped wave problem
///
///   u_tt - u_xx + K u + lam u_t = f(x, t)                          on (0, 1)
///   u_x(0, t)  = h0 u(0, t) + lam0 u_t(0, t) + ht1 u(1, t) + lt1 u_t(1, t) + g0(t)
///  -u_x(1, t)  = h1 u(1, t) + lam1 u_t(1, t) + ht0 u(0, t) + lt0 u_t(0, t) + g1(t)
///
/// `ht*` are the displacement cross-couplings and `lt*` the velocity
/// cross-couplings between the two endpoints.
struct ProblemParams {
  double h0 = 1.0;
  double h1 = 0.0;
  double lam0 = 1.0;
  double lam1 = 1.0;
  double ht0 = 0.0;
  double ht1 = 0.0;
  double lt0 = 0.0;
  double lt1 = 0.0;
  double K = 0.0;
  double lam = 0.0;

  bool operator==(const ProblemParams&) const = default;
};

struct Violation {
  std::string name;    // the failed inequality, e.g. "h0 > 0"
  std::string detail;  // the offending values
};

struct Verdict {
  std::vector<Violation> violations;

  bool accepted() const noexcept { return violations.empty(); }
  explicit operator bool() const noexcept { return accepted(); }
  /// One violation per line; empty when accepted.
  std::string describe() const;
};

/// Checks the existence hypotheses (h0 > 0, h1 >= 0, lam0, lam1 > 0 and the
/// damping admissibility |lt0 + lt1| < 2 sqrt(lam0 lam1)); with
/// `require_decay_hypotheses` also K > 0 and lam > 0. Never throws.
Verdict validate_params(const ProblemParams& p, bool require_decay_hypotheses);

/// Name used for the damping admissibility inequality in verdicts.
inline constexpr const char* kDampingAdmissibility = "|lt0 + lt1| < 2*sqrt(lam0*lam1)";

/// Optional overrides for the free parameters of the decay estimate. Omitted
/// values default to 0.9 times their upper bound, chosen in the order
/// eps1 -> eps2 -> delta.
struct FreeParameters {
  std::optional<double> eps1;
  std::optional<double> eps2;
  std::optional<double> delta;
};

struct DerivedConstants {
  double C0 = 0.0;      ///< coercivity constant min{1, h0}
  double C1 = 0.0;      ///< continuity constant max{1, h0, 2 h1}
  double mu_min = 0.0;  ///< boundary damping form constant
  double mu0 = 0.0;     ///< min{C0, mu_min}
  double eps1 = 0.0;
  double eps2 = 0.0;
  double delta = 0.0;
  double beta1 = 0.0;   ///< lower sandwich factor 1 - 2 delta / C0
  double beta2 = 0.0;   ///< upper sandwich factor
  /// Slack of the smallness condition on ht0, ht1. Non-negative means the
  /// cross-couplings are small enough for the dissipation inequality.
  double htilde_budget = 0.0;

  bool operator==(const DerivedConstants&) const = default;
};

/// Throws DomainError if `p` fails validate_params(p, true) or a supplied free
/// parameter lies outside its range, InfeasibleError if no positive delta
/// exists for the chosen eps1.
DerivedConstants derive_constants(const ProblemParams& p, const FreeParameters& free = {});

/// lam0 x^2 + lam1 y^2 + (lt0 + lt1) x y
double quadratic_form_lhs(const ProblemParams& p, double x, double y);

/// Lower bound (mu_min / 2)(x^2 + y^2) of quadratic_form_lhs.
double quadratic_form_bound(double mu_min, double x, double y);

double compute_mu_min(const ProblemParams& p);

}  // namespace twopoint
