#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "twopoint/compat.hpp"
#include "twopoint/errors.hpp"
#include "twopoint/manufactured.hpp"

using namespace twopoint;

namespace {

constexpr double kPi = std::numbers::pi;

SpatialField cosine_field() {
  std::vector<SpaceFn> tower;
  for (int k = 0; k <= 6; ++k) {
    tower.push_back([k](double x) {
      const double s = std::pow(kPi, k);
      switch (k % 4) {
        case 0: return s * std::cos(kPi * x);
        case 1: return -s * std::sin(kPi * x);
        case 2: return -s * std::cos(kPi * x);
        default: return s * std::sin(kPi * x);
      }
    });
  }
  return SpatialField(std::move(tower));
}

SmoothData cosine_data(int r) {
  SmoothData d;
  d.u0 = cosine_field();
  d.f_time_derivs.resize(static_cast<std::size_t>(r) + 1);
  d.g0_derivs.resize(static_cast<std::size_t>(r) + 1);
  d.g1_derivs.resize(static_cast<std::size_t>(r) + 1);
  return d;
}

ProblemParams recurrence_params() {
  ProblemParams p;
  p.K = 1;
  p.lam = 2;
  return p;
}

ProblemParams reference() {
  return {.h0 = 1, .h1 = 0.5, .lam0 = 1, .lam1 = 1, .ht0 = 0.01, .ht1 = 0.01, .lt0 = 0.1,
          .lt1 = 0.1, .K = 1, .lam = 1};
}

const std::vector<double> kXs = {0.0, 0.13, 0.5, 0.77, 1.0};

}  // namespace

TEST(SpatialField, ZeroField) {
  const SpatialField z;
  EXPECT_TRUE(z.is_zero());
  EXPECT_EQ(z(0.3), 0.0);
  EXPECT_EQ(z.analytic_order(), -1);
  EXPECT_TRUE(z.second_derivative().is_zero());
}

TEST(SpatialField, AnalyticChainShifts) {
  const SpatialField f = cosine_field();
  EXPECT_EQ(f.analytic_order(), 6);
  const SpatialField f2 = f.second_derivative();
  EXPECT_EQ(f2.analytic_order(), 4);
  for (double x : kXs) EXPECT_NEAR(f2(x), -kPi * kPi * std::cos(kPi * x), 1e-12);
}

TEST(SpatialField, DifferenceFallbackOnce) {
  const SpatialField f({[](double x) { return std::exp(x); }});
  const SpatialField f2 = f.second_derivative();
  for (double x : kXs) EXPECT_NEAR(f2(x), std::exp(x), 1e-6);
  EXPECT_THROW(f2.second_derivative(), OrderError);
}

TEST(SpatialField, Arithmetic) {
  const SpatialField f = cosine_field();
  const SpatialField g = 2.0 * f + f;
  for (double x : kXs) EXPECT_NEAR(g(x), 3 * std::cos(kPi * x), 1e-15);
  EXPECT_NEAR(g.second_derivative()(0.2), -3 * kPi * kPi * std::cos(0.2 * kPi), 1e-12);
}

TEST(Compatibility, OrderZeroIsIdentity) {
  const SmoothData d = cosine_data(0);
  const CompatibilityData c = compatibility_data(d, recurrence_params(), 0);
  for (double x : kXs) {
    EXPECT_EQ(c.u0(x), d.u0(x));
    EXPECT_EQ(c.u1(x), 0.0);
  }
}

TEST(Compatibility, OrderOneHandEvaluated) {
  const CompatibilityData c = compatibility_data(cosine_data(1), recurrence_params(), 1);
  for (double x : kXs) {
    EXPECT_EQ(c.u0(x), 0.0);
    EXPECT_NEAR(c.u1(x), -(kPi * kPi + 1) * std::cos(kPi * x), 1e-12);
  }
}

TEST(Compatibility, OrderTwoHandEvaluated) {
  const CompatibilityData c = compatibility_data(cosine_data(2), recurrence_params(), 2);
  for (double x : kXs) {
    EXPECT_NEAR(c.u0(x), -(kPi * kPi + 1) * std::cos(kPi * x), 1e-12);
    EXPECT_NEAR(c.u1(x), 2 * (kPi * kPi + 1) * std::cos(kPi * x), 1e-11);
  }
}

TEST(Compatibility, SourceEntersAtTimeZero) {
  SmoothData d = cosine_data(1);
  d.f_time_derivs[0] = [](double x, double t) { return x + 10 * t; };
  const CompatibilityData c = compatibility_data(d, recurrence_params(), 1);
  EXPECT_NEAR(c.u1(0.5), -(kPi * kPi + 1) * std::cos(kPi * 0.5) + 0.5, 1e-12);
}

TEST(Compatibility, MissingDerivatives) {
  SmoothData d = cosine_data(0);
  d.f_time_derivs.clear();
  EXPECT_THROW(compatibility_data(d, recurrence_params(), 1), OrderError);
  EXPECT_THROW(cosine_data(1).forcing(2), OrderError);
  EXPECT_THROW(compatibility_data(cosine_data(1), recurrence_params(), -1), std::invalid_argument);
  // A closure without derivatives supports one difference-based second
  // derivative, which order 2 exceeds: (u0_xx)_xx would be needed.
  SmoothData closure = cosine_data(3);
  closure.u0 = SpatialField({[](double x) { return std::cos(kPi * x); }});
  EXPECT_NO_THROW(compatibility_data(closure, recurrence_params(), 1));
  EXPECT_THROW(compatibility_data(closure, recurrence_params(), 3), OrderError);
}

TEST(Compatibility, LinearInData) {
  const ProblemParams p = reference();
  const ManufacturedSolution a = manufacture("decaying_cosine", p, 0.5);
  const ManufacturedSolution b = manufacture("polynomial", p);
  const SmoothData da = a.smooth_data(2);
  const SmoothData db = b.smooth_data(2);
  SmoothData sum;
  sum.u0 = da.u0 + db.u0;
  sum.u1 = da.u1 + db.u1;
  for (std::size_t k = 0; k < 3; ++k) {
    sum.f_time_derivs.push_back([fa = da.f_time_derivs[k], fb = db.f_time_derivs[k]](double x, double t) {
      return fa(x, t) + fb(x, t);
    });
  }
  for (int r = 0; r <= 2; ++r) {
    const CompatibilityData ca = compatibility_data(da, p, r);
    const CompatibilityData cb = compatibility_data(db, p, r);
    const CompatibilityData cs = compatibility_data(sum, p, r);
    for (double x : kXs) {
      EXPECT_NEAR(cs.u0(x), ca.u0(x) + cb.u0(x), 1e-10) << r;
      EXPECT_NEAR(cs.u1(x), ca.u1(x) + cb.u1(x), 1e-10) << r;
    }
  }
}

TEST(Compatibility, ManufacturedDataGivesTimeDerivatives) {
  // For an exact solution, u0^[r] and u1^[r] are d^r u / dt^r and
  // d^{r+1} u / dt^{r+1} at t = 0.
  const ProblemParams p = reference();
  for (const std::string form : {"decaying_cosine", "decaying_affine", "polynomial"}) {
    const ManufacturedSolution sol = manufacture(form, p, 0.5);
    for (int r = 0; r <= 2; ++r) {
      const CompatibilityData c = compatibility_data(sol.smooth_data(r), p, r);
      for (double x : kXs) {
        EXPECT_NEAR(c.u0(x), sol.derivative(r, 0, x, 0.0), 1e-10) << form << r;
        EXPECT_NEAR(c.u1(x), sol.derivative(r + 1, 0, x, 0.0), 1e-10) << form << r;
      }
    }
  }
}

TEST(Ladder, ZeroData) {
  SmoothData d;
  d.f_time_derivs.resize(3);
  d.g0_derivs.resize(3);
  d.g1_derivs.resize(3);
  for (int r : {1, 2}) {
    const LadderReport rep = ladder_check(d, reference(), Mesh(9), r, 0.1, 0.01);
    EXPECT_EQ(rep.absolute, 0.0);
    EXPECT_EQ(rep.relative, 0.0);
  }
}

TEST(Ladder, OrderOutOfRange) {
  const SmoothData d = manufacture("decaying_cosine", reference()).smooth_data(3);
  EXPECT_THROW(ladder_check(d, reference(), Mesh(9), 3, 0.1, 0.01), std::invalid_argument);
  EXPECT_THROW(ladder_check(d, reference(), Mesh(9), 0, 0.1, 0.01), std::invalid_argument);
}

TEST(Ladder, ConsistentAndPerturbedData) {
  const ProblemParams p = reference();
  const SmoothData d = manufacture("decaying_cosine", p, 0.5).smooth_data(2);
  const Mesh m(33);
  const LadderReport one = ladder_check(d, p, m, 1, 0.5, 1e-3);
  EXPECT_LE(one.relative, 1e-2);
  const LadderReport two = ladder_check(d, p, m, 2, 0.5, 1e-3);
  EXPECT_LE(two.relative, 1e-2);
  const LadderReport bad = ladder_check(d, p, m, 1, 0.5, 1e-3, {.velocity_perturbation = 1.0});
  EXPECT_GE(bad.relative, 0.1);
}

TEST(Ladder, DiscrepancyShrinksUnderRefinement) {
  const ProblemParams p = reference();
  const SmoothData d = manufacture("decaying_cosine", p, 0.5).smooth_data(1);
  double prev = 0.0;
  for (int k = 0; k < 3; ++k) {
    const int n = 8 * (1 << k) + 1;
    const double dt = 0.02 / (1 << k);
    const double rel = ladder_check(d, p, Mesh(n), 1, 0.5, dt).relative;
    if (k > 0) EXPECT_GE(std::log2(prev / rel), 1.0) << n;
    prev = rel;
  }
}
