#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "twopoint/errors.hpp"
#include "twopoint/galerkin.hpp"
#include "twopoint/manufactured.hpp"

using namespace twopoint;

namespace {

constexpr double kPi = std::numbers::pi;

ProblemParams reference() {
  return {.h0 = 1, .h1 = 0.5, .lam0 = 1, .lam1 = 1, .ht0 = 0.01, .ht1 = 0.01, .lt0 = 0.1,
          .lt1 = 0.1, .K = 1, .lam = 1};
}

// Hand-differentiated derivatives of each registered solution:
// {u, u_t, u_tt, u_x, u_xx}.
struct Jet {
  double u, ut, utt, ux, uxx;
};

Jet hand_jet(const std::string& form, double alpha, double x, double t) {
  if (form == "decaying_cosine") {
    const double e = std::exp(-alpha * t);
    const double c = std::cos(kPi * x), s = std::sin(kPi * x);
    return {e * c, -alpha * e * c, alpha * alpha * e * c, -kPi * e * s, -kPi * kPi * e * c};
  }
  if (form == "decaying_affine") {
    const double e = std::exp(-alpha * t);
    return {e * (1 + x), -alpha * e * (1 + x), alpha * alpha * e * (1 + x), e, 0.0};
  }
  if (form == "polynomial") {
    const double q = x * x - x + 1;
    return {(1 + t * t) * q, 2 * t * q, 2 * q, (1 + t * t) * (2 * x - 1), 2 * (1 + t * t)};
  }
  return {0, 0, 0, 0, 0};
}

}  // namespace

TEST(Manufacture, AffineExampleByHand) {
  ProblemParams p = reference();
  p.K = 1;
  p.lam = 1;
  const ManufacturedSolution sol = manufacture("decaying_affine", p, 1.0);
  for (double x : {0.0, 0.3, 1.0}) {
    for (double t : {0.0, 0.5, 2.0}) {
      EXPECT_NEAR(sol.f(x, t), std::exp(-t) * (1 + x), 1e-14);
    }
  }
}

TEST(Manufacture, ZeroSolution) {
  const ManufacturedSolution sol = manufacture("zero", reference());
  EXPECT_TRUE(sol.is_zero());
  EXPECT_TRUE(sol.forcing().is_zero());
  EXPECT_EQ(sol.f(0.4, 1.0), 0.0);
  EXPECT_EQ(sol.g0(1.0), 0.0);
  EXPECT_EQ(sol.g1(1.0), 0.0);
}

TEST(Manufacture, UnknownForm) {
  EXPECT_THROW(manufacture("gaussian", reference()), UnknownFormError);
}

TEST(Manufacture, ResidualsVanishAtRandomPoints) {
  ProblemParams p = reference();
  p.lt0 = 0.2;
  p.lt1 = -0.05;
  p.ht0 = 0.03;
  p.ht1 = -0.02;
  p.h1 = 0.7;
  p.lam0 = 1.3;
  const double alpha = 0.7;
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> X(0.0, 1.0), T(0.0, 10.0);
  for (const auto& form : manufactured_forms()) {
    const ManufacturedSolution sol = manufacture(form, p, alpha);
    for (int i = 0; i < 1000; ++i) {
      const double x = X(rng), t = T(rng);
      const Jet j = hand_jet(form, alpha, x, t);
      const double pde = j.utt - j.uxx + p.K * j.u + p.lam * j.ut - sol.f(x, t);
      EXPECT_LE(std::abs(pde), 1e-10 * std::max(1.0, std::abs(j.utt))) << form;

      const Jet a = hand_jet(form, alpha, 0.0, t);
      const Jet b = hand_jet(form, alpha, 1.0, t);
      const double left =
          a.ux - (p.h0 * a.u + p.lam0 * a.ut + p.ht1 * b.u + p.lt1 * b.ut + sol.g0(t));
      const double right =
          -b.ux - (p.h1 * b.u + p.lam1 * b.ut + p.ht0 * a.u + p.lt0 * a.ut + sol.g1(t));
      EXPECT_LE(std::abs(left), 1e-10) << form;
      EXPECT_LE(std::abs(right), 1e-10) << form;
    }
  }
}

TEST(Manufacture, InitialDataFromExactSolution) {
  const ManufacturedSolution sol = manufacture("polynomial", reference());
  for (double x : {0.0, 0.25, 1.0}) {
    EXPECT_EQ(sol.initial_displacement()(x), x * x - x + 1);
    EXPECT_EQ(sol.initial_velocity()(x), 0.0);
  }
}

TEST(Manufacture, ForcingTowersAreTimeDerivatives) {
  const ProblemParams p = reference();
  const double h = 1e-4;
  for (const auto& form : manufactured_forms()) {
    const ManufacturedSolution sol = manufacture(form, p, 0.5);
    for (int k = 0; k < 2; ++k) {
      const double t = 0.8, x = 0.3;
      const double fd_f = (sol.f(x, t + h, k) - sol.f(x, t - h, k)) / (2 * h);
      const double fd_g0 = (sol.g0(t + h, k) - sol.g0(t - h, k)) / (2 * h);
      const double fd_g1 = (sol.g1(t + h, k) - sol.g1(t - h, k)) / (2 * h);
      EXPECT_NEAR(sol.f(x, t, k + 1), fd_f, 1e-6) << form;
      EXPECT_NEAR(sol.g0(t, k + 1), fd_g0, 1e-6) << form;
      EXPECT_NEAR(sol.g1(t, k + 1), fd_g1, 1e-6) << form;
    }
  }
}

TEST(Manufacture, DecayingFormsHaveExponentialSigma) {
  // sigma(t) = sigma(0) e^{-2 alpha t} because every datum carries e^{-alpha t}.
  const ProblemParams p = reference();
  const GalerkinSystem sys = assemble(Mesh(33), p);
  for (const std::string form : {"decaying_cosine", "decaying_affine"}) {
    const ManufacturedSolution sol = manufacture(form, p, 0.5);
    const Forcing f = sol.forcing();
    auto sigma = [&](double t) {
      return integrate_over(*sys.mesh, [&](double x) { return f.f(x, t) * f.f(x, t); }) +
             f.g0(t) * f.g0(t) + f.g1(t) * f.g1(t);
    };
    const double s0 = sigma(0.0);
    for (double t : {0.5, 1.0, 3.0}) {
      EXPECT_NEAR(sigma(t), s0 * std::exp(-2 * 0.5 * t), 1e-12 * s0) << form;
    }
  }
}
