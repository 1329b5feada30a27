#include "twopoint/params.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "twopoint/errors.hpp"

namespace twopoint {

namespace {

constexpr double kDefaultFraction = 0.9;

std::string values(std::initializer_list<std::pair<const char*, double>> kv) {
  std::ostringstream os;
  os.precision(17);
  bool first = true;
  for (const auto& [k, v] : kv) {
    if (!first) os << ", ";
    os << k << '=' << v;
    first = false;
  }
  return os.str();
}

}  // namespace

std::string Verdict::describe() const {
  std::ostringstream os;
  for (const auto& v : violations) os << v.name << " violated (" << v.detail << ")\n";
  return os.str();
}

Verdict validate_params(const ProblemParams& p, bool require_decay_hypotheses) {
  Verdict verdict;
  auto fail = [&](std::string name, std::string detail) {
    verdict.violations.push_back({std::move(name), std::move(detail)});
  };

  const double all[] = {p.h0, p.h1, p.lam0, p.lam1, p.ht0, p.ht1, p.lt0, p.lt1, p.K, p.lam};
  if (!std::all_of(std::begin(all), std::end(all), [](double x) { return std::isfinite(x); })) {
    fail("all constants finite", "non-finite input");
    return verdict;
  }

  if (!(p.h0 > 0.0)) fail("h0 > 0", values({{"h0", p.h0}}));
  if (!(p.h1 >= 0.0)) fail("h1 >= 0", values({{"h1", p.h1}}));
  if (!(p.lam0 > 0.0)) fail("lam0 > 0", values({{"lam0", p.lam0}}));
  if (!(p.lam1 > 0.0)) fail("lam1 > 0", values({{"lam1", p.lam1}}));
  if (p.lam0 > 0.0 && p.lam1 > 0.0) {
    const double lhs = std::abs(p.lt0 + p.lt1);
    const double rhs = 2.0 * std::sqrt(p.lam0 * p.lam1);
    if (!(lhs < rhs)) {
      fail(kDampingAdmissibility,
           values({{"|lt0+lt1|", lhs}, {"2*sqrt(lam0*lam1)", rhs}}));
    }
  }
  if (require_decay_hypotheses) {
    if (!(p.K > 0.0)) fail("K > 0", values({{"K", p.K}}));
    if (!(p.lam > 0.0)) fail("lam > 0", values({{"lam", p.lam}}));
  }
  return verdict;
}

double compute_mu_min(const ProblemParams& p) {
  const double s = p.lt0 + p.lt1;
  return 0.25 * (-s * s + 4.0 * p.lam0 * p.lam1) * std::min(1.0 / p.lam0, 1.0 / p.lam1);
}

DerivedConstants derive_constants(const ProblemParams& p, const FreeParameters& free) {
  const Verdict verdict = validate_params(p, true);
  if (!verdict) throw DomainError("problem constants rejected:\n" + verdict.describe());

  DerivedConstants dc;
  dc.C0 = std::min(1.0, p.h0);
  dc.C1 = std::max({1.0, p.h0, 2.0 * p.h1});
  dc.mu_min = compute_mu_min(p);
  dc.mu0 = std::min(dc.C0, dc.mu_min);

  const double eps1_bound = std::min(dc.C0 * p.lam, 0.5 * dc.mu_min);
  dc.eps1 = free.eps1.value_or(kDefaultFraction * eps1_bound);
  if (!(dc.eps1 > 0.0)) throw DomainError("eps1 must be positive, got " + std::to_string(dc.eps1));

  const double eps2_bound = dc.C0 / 5.0;
  dc.eps2 = free.eps2.value_or(kDefaultFraction * eps2_bound);
  if (!(dc.eps2 > 0.0 && dc.eps2 < eps2_bound)) {
    throw DomainError("eps2 outside (0, C0/5): " + std::to_string(dc.eps2));
  }

  // The third bound comes from a term that vanishes when lt0 = lt1 = 0.
  const double lt_sq = p.lt0 * p.lt0 + p.lt1 * p.lt1;
  const double third = lt_sq == 0.0 ? std::numeric_limits<double>::infinity()
                                     : 2.0 * dc.eps2 * (0.5 * dc.mu_min - dc.eps1) / lt_sq;
  const double delta_bound = std::min({0.5 * dc.C0, p.lam - dc.eps1 / dc.C0, third});
  if (!(delta_bound > 0.0)) {
    throw InfeasibleError("no positive delta exists for eps1=" + std::to_string(dc.eps1) +
                          " (delta bound " + std::to_string(delta_bound) + ")");
  }
  if (!(dc.eps1 < eps1_bound)) {
    throw DomainError("eps1 outside (0, min{C0*lam, mu_min/2}): " + std::to_string(dc.eps1));
  }

  dc.delta = free.delta.value_or(kDefaultFraction * delta_bound);
  if (!(dc.delta > 0.0 && dc.delta < delta_bound)) {
    throw DomainError("delta outside (0, " + std::to_string(delta_bound) +
                      "): " + std::to_string(dc.delta));
  }

  dc.beta1 = 1.0 - 2.0 * dc.delta / dc.C0;
  dc.beta2 = 1.0 + (2.0 * dc.delta / dc.C0) * (1.0 + p.lam + p.lam0 + p.lam1);
  dc.htilde_budget = dc.delta * (1.0 - 5.0 * dc.eps2 / dc.C0) -
                     (p.ht0 * p.ht0 + p.ht1 * p.ht1) / (dc.eps1 * dc.C0) -
                     (2.0 * dc.delta / dc.C0) * std::abs(p.ht0 + p.ht1);
  return dc;
}

double quadratic_form_lhs(const ProblemParams& p, double x, double y) {
  return p.lam0 * x * x + p.lam1 * y * y + (p.lt0 + p.lt1) * x * y;
}

double quadratic_form_bound(double mu_min, double x, double y) {
  return 0.5 * mu_min * (x * x + y * y);
}

}  // namespace twopoint
