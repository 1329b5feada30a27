#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace twopoint {

/// Outcome of one randomized inequality sweep. Each sample is reduced to a
/// ratio lhs / rhs of the inequality lhs <= rhs; a sample violates it when the
/// ratio exceeds 1 + kPropertyTolerance.
struct PropertyReport {
  std::string name;
  std::string inequality;
  std::size_t samples = 0;
  std::size_t violations = 0;
  double max_ratio = 0.0;

  bool passed() const noexcept { return violations == 0; }
};

inline constexpr double kPropertyTolerance = 1e-12;
inline constexpr std::size_t kPropertySamples = 10000;

/// (mu_min / 2)(x^2 + y^2) <= lam0 x^2 + lam1 y^2 + (lt0 + lt1) x y for random
/// admissible damping constants and (x, y) in [-10, 10]^2.
PropertyReport quadratic_form_property(std::uint64_t seed, std::size_t samples = kPropertySamples);

/// C0 ||v||_1^2 <= ||v||_a^2 on random hat-function vectors and random h0 > 0,
/// h1 >= 0, over meshes of 2 to 33 nodes.
PropertyReport norm_lower_property(std::uint64_t seed, std::size_t samples = kPropertySamples);

/// ||v||_a^2 <= C1 ||v||_1^2 on the same kind of samples.
PropertyReport norm_upper_property(std::uint64_t seed, std::size_t samples = kPropertySamples);

/// max |v| <= sqrt(2) ||v||_1 on random hat-function vectors.
PropertyReport sup_norm_property(std::uint64_t seed, std::size_t samples = kPropertySamples);

/// All four suites, each seeded from `seed`.
std::vector<PropertyReport> run_property_suites(std::uint64_t seed,
                                                std::size_t samples = kPropertySamples);

}  // namespace twopoint
