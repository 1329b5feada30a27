#include "twopoint/manufactured.hpp"

#include <cmath>
#include <numbers>

#include "twopoint/errors.hpp"

namespace twopoint {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kSpatialTower = 4;

DerivativeTower exponential(double alpha) {
  return [alpha](int k, double t) { return std::pow(-alpha, k) * std::exp(-alpha * t); };
}

DerivativeTower cosine_pi() {
  return [](int k, double x) {
    const double scale = std::pow(kPi, k);
    switch (k % 4) {
      case 0: return scale * std::cos(kPi * x);
      case 1: return -scale * std::sin(kPi * x);
      case 2: return -scale * std::cos(kPi * x);
      default: return scale * std::sin(kPi * x);
    }
  };
}

}  // namespace

ManufacturedSolution::ManufacturedSolution(std::string name, ProblemParams params,
                                           DerivativeTower time_part, DerivativeTower space_part)
    : name_(std::move(name)),
      params_(params),
      tau_(std::move(time_part)),
      phi_(std::move(space_part)) {}

double ManufacturedSolution::derivative(int kt, int kx, double x, double t) const {
  return tau_(kt, t) * phi_(kx, x);
}

double ManufacturedSolution::f(double x, double t, int k) const {
  const ProblemParams& p = params_;
  const double phi = phi_(0, x);
  return (tau_(k + 2, t) + p.lam * tau_(k + 1, t) + p.K * tau_(k, t)) * phi -
         tau_(k, t) * phi_(2, x);
}

double ManufacturedSolution::g0(double t, int k) const {
  const ProblemParams& p = params_;
  const double at0 = phi_(0, 0.0);
  const double at1 = phi_(0, 1.0);
  return tau_(k, t) * (phi_(1, 0.0) - p.h0 * at0 - p.ht1 * at1) -
         tau_(k + 1, t) * (p.lam0 * at0 + p.lt1 * at1);
}

double ManufacturedSolution::g1(double t, int k) const {
  const ProblemParams& p = params_;
  const double at0 = phi_(0, 0.0);
  const double at1 = phi_(0, 1.0);
  return tau_(k, t) * (-phi_(1, 1.0) - p.h1 * at1 - p.ht0 * at0) -
         tau_(k + 1, t) * (p.lam1 * at1 + p.lt0 * at0);
}

Forcing ManufacturedSolution::forcing(int k) const {
  if (is_zero()) return Forcing::none();
  auto self = *this;
  return {[self, k](double x, double t) { return self.f(x, t, k); },
          [self, k](double t) { return self.g0(t, k); },
          [self, k](double t) { return self.g1(t, k); }};
}

SpaceFn ManufacturedSolution::profile(double t, int k) const {
  return [tau = tau_, phi = phi_, t, k](double x) { return tau(k, t) * phi(0, x); };
}

SpaceFn ManufacturedSolution::profile_x(double t) const {
  return [tau = tau_, phi = phi_, t](double x) { return tau(0, t) * phi(1, x); };
}

SpaceFn ManufacturedSolution::initial_displacement() const { return profile(0.0, 0); }
SpaceFn ManufacturedSolution::initial_velocity() const { return profile(0.0, 1); }

SmoothData ManufacturedSolution::smooth_data(int r) const {
  auto field = [this](int kt) {
    std::vector<SpaceFn> tower;
    for (int kx = 0; kx <= kSpatialTower; ++kx) {
      tower.push_back([tau = tau_, phi = phi_, kt, kx](double x) {
        return tau(kt, 0.0) * phi(kx, x);
      });
    }
    return SpatialField(std::move(tower));
  };

  SmoothData data;
  data.u0 = field(0);
  data.u1 = field(1);
  for (int k = 0; k <= r; ++k) {
    const Forcing fk = forcing(k);
    data.f_time_derivs.push_back(fk.f);
    data.g0_derivs.push_back(fk.g0);
    data.g1_derivs.push_back(fk.g1);
  }
  return data;
}

ManufacturedSolution manufacture(const std::string& form, const ProblemParams& p, double alpha) {
  if (form == "zero") {
    return {form, p, [](int, double) { return 0.0; }, [](int, double) { return 0.0; }};
  }
  if (form == "decaying_cosine") return {form, p, exponential(alpha), cosine_pi()};
  if (form == "decaying_affine") {
    return {form, p, exponential(alpha), [](int k, double x) {
              return k == 0 ? 1.0 + x : (k == 1 ? 1.0 : 0.0);
            }};
  }
  if (form == "polynomial") {
    return {form, p,
            [](int k, double t) {
              switch (k) {
                case 0: return 1.0 + t * t;
                case 1: return 2.0 * t;
                case 2: return 2.0;
                default: return 0.0;
              }
            },
            [](int k, double x) {
              switch (k) {
                case 0: return x * x - x + 1.0;
                case 1: return 2.0 * x - 1.0;
                case 2: return 2.0;
                default: return 0.0;
              }
            }};
  }
  throw UnknownFormError("unknown manufactured solution '" + form + "'");
}

}  // namespace twopoint
