#include "twopoint/properties.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>

#include "twopoint/galerkin.hpp"
#include "twopoint/params.hpp"

namespace twopoint {

namespace {

constexpr std::array<int, 6> kMeshSizes = {2, 3, 5, 9, 17, 33};

class Sampler {
public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

  int mesh_size() {
    return kMeshSizes[std::uniform_int_distribution<std::size_t>(0, kMeshSizes.size() - 1)(rng_)];
  }

  Vector coefficients(int n) {
    Vector c(n);
    for (int i = 0; i < n; ++i) c[i] = uniform(-1.0, 1.0);
    return c;
  }

  /// Boundary stiffness pair; a quarter of the draws put h1 exactly at 0.
  ProblemParams stiffness() {
    ProblemParams p;
    p.h0 = uniform(0.01, 5.0);
    p.h1 = uniform(0.0, 1.0) < 0.25 ? 0.0 : uniform(0.0, 5.0);
    return p;
  }

private:
  std::mt19937_64 rng_;
};

struct Tally {
  PropertyReport report;

  void add(double lhs, double rhs) {
    ++report.samples;
    double ratio = 0.0;
    if (rhs > 0.0) {
      ratio = lhs / rhs;
    } else if (lhs > 0.0) {
      ratio = std::numeric_limits<double>::infinity();
    }
    report.max_ratio = std::max(report.max_ratio, ratio);
    if (ratio > 1.0 + kPropertyTolerance) ++report.violations;
  }
};

}  // namespace

PropertyReport quadratic_form_property(std::uint64_t seed, std::size_t samples) {
  Sampler s(seed);
  Tally tally{{"quadratic_form", "(mu_min/2)(x^2+y^2) <= lam0 x^2 + lam1 y^2 + (lt0+lt1) x y"}};
  for (std::size_t i = 0; i < samples; ++i) {
    ProblemParams p;
    p.lam0 = s.uniform(0.01, 10.0);
    p.lam1 = s.uniform(0.01, 10.0);
    const double cross = s.uniform(-1.0, 1.0) * 2.0 * std::sqrt(p.lam0 * p.lam1) * (1.0 - 1e-9);
    p.lt0 = s.uniform(0.0, 1.0) * cross;
    p.lt1 = cross - p.lt0;
    const double x = s.uniform(-10.0, 10.0);
    const double y = s.uniform(-10.0, 10.0);
    tally.add(quadratic_form_bound(compute_mu_min(p), x, y), quadratic_form_lhs(p, x, y));
  }
  return tally.report;
}

PropertyReport norm_lower_property(std::uint64_t seed, std::size_t samples) {
  Sampler s(seed);
  Tally tally{{"norm_equivalence_lower", "C0 ||v||_1^2 <= ||v||_a^2"}};
  for (std::size_t i = 0; i < samples; ++i) {
    const ProblemParams p = s.stiffness();
    const int n = s.mesh_size();
    const GalerkinSystem sys = assemble(Mesh(n), p);
    const Vector c = s.coefficients(n);
    const double C0 = std::min(1.0, p.h0);
    tally.add(C0 * norm_1_sq(sys, c), norm_a_sq(sys, c));
  }
  return tally.report;
}

PropertyReport norm_upper_property(std::uint64_t seed, std::size_t samples) {
  Sampler s(seed);
  Tally tally{{"norm_equivalence_upper", "||v||_a^2 <= C1 ||v||_1^2"}};
  for (std::size_t i = 0; i < samples; ++i) {
    const ProblemParams p = s.stiffness();
    const int n = s.mesh_size();
    const GalerkinSystem sys = assemble(Mesh(n), p);
    const Vector c = s.coefficients(n);
    const double C1 = std::max({1.0, p.h0, 2.0 * p.h1});
    tally.add(norm_a_sq(sys, c), C1 * norm_1_sq(sys, c));
  }
  return tally.report;
}

PropertyReport sup_norm_property(std::uint64_t seed, std::size_t samples) {
  Sampler s(seed);
  Tally tally{{"sup_norm_embedding", "max|v| <= sqrt(2) ||v||_1"}};
  for (std::size_t i = 0; i < samples; ++i) {
    const int n = s.mesh_size();
    const GalerkinSystem sys = assemble(Mesh(n), ProblemParams{});
    const Vector c = s.coefficients(n);
    tally.add(sup_norm(sys, c), std::sqrt(2.0) * std::sqrt(norm_1_sq(sys, c)));
  }
  return tally.report;
}

std::vector<PropertyReport> run_property_suites(std::uint64_t seed, std::size_t samples) {
  return {quadratic_form_property(seed, samples), norm_lower_property(seed + 1, samples),
          norm_upper_property(seed + 2, samples), sup_norm_property(seed + 3, samples)};
}

}  // namespace twopoint
