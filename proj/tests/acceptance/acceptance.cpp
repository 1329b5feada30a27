// Acceptance suite: one PASS/FAIL line per criterion. `--only N` runs one.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "twopoint/diagnostics.hpp"
#include "twopoint/galerkin.hpp"
#include "twopoint/integrate.hpp"
#include "twopoint/manufactured.hpp"
#include "twopoint/compat.hpp"
#include "twopoint/params.hpp"
#include "twopoint/properties.hpp"
#include "twopoint/runner.hpp"
#include "twopoint/scenario.hpp"

using namespace twopoint;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string num(double x, int digits = 6) {
  std::ostringstream os;
  os.precision(digits);
  os << x;
  return os.str();
}

SpaceFn cosine() {
  return [](double x) { return std::cos(kPi * x); };
}

SpaceFn zero() {
  return [](double) { return 0.0; };
}

struct ReferenceRun {
  Scenario s = reference_scenario();
  Mesh mesh{s.n_nodes};
  GalerkinSystem sys = assemble(mesh, s.params);
  DerivedConstants dc = derive_constants(s.params);
  std::vector<EnergyRecord> records;
  std::vector<EnergyRecord> fine;

  ReferenceRun() {
    const State s0 = project_initial_data(mesh, cosine(), zero());
    records = record_trajectory(integrate(sys, Forcing::none(), s0, s.T, s.dt), sys, s.params, dc,
                                Forcing::none());
    fine = record_trajectory(integrate(sys, Forcing::none(), s0, s.T, s.dt / 2), sys, s.params,
                             dc, Forcing::none());
  }
};

const ReferenceRun& reference_run() {
  static const ReferenceRun run;
  return run;
}

// 1. Lemma property suites, 10^4 samples each, 1e-12 relative, < 10 s.
Outcome lemma_suites() {
  const auto start = Clock::now();
  const auto reports = run_property_suites(20240101, kPropertySamples);
  const double elapsed = seconds_since(start);
  Outcome o{elapsed < 10.0, ""};
  for (const auto& r : reports) {
    o.pass = o.pass && r.passed() && r.samples == kPropertySamples;
    o.detail += r.name + " " + std::to_string(r.violations) + "/" + std::to_string(r.samples) +
                " (max ratio " + num(r.max_ratio, 10) + "); ";
  }
  o.detail += num(elapsed, 3) + " s";
  return o;
}

// 2. m = 2, midpoint dt = 1e-3 against RK4 dt = 1e-5, T = 1, <= 1e-6, < 5 s.
Outcome oracle_equivalence() {
  const auto start = Clock::now();
  const ProblemParams p = reference_scenario().params;
  const Mesh mesh(2);
  const GalerkinSystem sys = assemble(mesh, p);
  const State s0 = project_initial_data(mesh, cosine(), zero());
  Forcing forced;
  forced.f = [](double x, double t) { return std::exp(-t) * std::cos(kPi * x); };
  forced.g0 = [](double t) { return 0.5 * std::exp(-t); };

  double worst = 0.0;
  for (const Forcing& f : {Forcing::none(), forced}) {
    const Trajectory mid = integrate(sys, f, s0, 1.0, 1e-3);
    const Trajectory rk = oracle_integrate(sys, f, s0, 1.0, 1e-3, 1e-5);
    double diff = 0.0, scale = 0.0;
    for (std::size_t i = 0; i < mid.size(); ++i) {
      diff = std::max(diff, (mid.states[i].c - rk.states[i].c).cwiseAbs().maxCoeff());
      scale = std::max(scale, rk.states[i].c.cwiseAbs().maxCoeff());
    }
    worst = std::max(worst, diff / scale);
  }
  const double elapsed = seconds_since(start);
  return {worst <= 1e-6 && elapsed < 5.0,
          "relative max nodal error " + num(worst) + " (unforced and forced), " +
              num(elapsed, 3) + " s"};
}

// 3. Zero data and forcing: ||c|| + ||v|| <= 1e-12 over T = 10, < 5 s.
Outcome zero_data() {
  const auto start = Clock::now();
  const Scenario s = reference_scenario();
  const Mesh mesh(s.n_nodes);
  const GalerkinSystem sys = assemble(mesh, s.params);
  const Trajectory tr =
      integrate(sys, Forcing::none(), project_initial_data(mesh, zero(), zero()), 10.0, s.dt);
  double worst = 0.0;
  for (const auto& st : tr.states) worst = std::max(worst, st.c.norm() + st.v.norm());
  const double elapsed = seconds_since(start);
  return {worst <= 1e-12 && elapsed < 5.0,
          "max ||c|| + ||v|| = " + num(worst) + " over " + std::to_string(tr.size()) +
              " samples, " + num(elapsed, 3) + " s"};
}

// 4. Sandwich on the reference run, >= 10^4 samples, 1e-10 relative.
Outcome sandwich() {
  const ReferenceRun& run = reference_run();
  const SandwichReport r = check_sandwich(run.records, run.dc);
  return {r.violations == 0 && run.records.size() >= 10000,
          std::to_string(r.violations) + " violations in " + std::to_string(run.records.size()) +
              " samples; Gamma/E in [" + num(r.min_ratio) + ", " + num(r.max_ratio) +
              "], beta1 = " + num(run.dc.beta1) + ", beta2 = " + num(run.dc.beta2)};
}

// 5. Differential inequality on the reference run, Richardson tolerance.
Outcome differential() {
  const ReferenceRun& run = reference_run();
  const double c_dt = calibrate_fd_constant(run.records, run.fine);
  const DifferentialReport r = check_differential_inequality(run.records, run.dc, c_dt);
  return {r.violations == 0 && run.dc.htilde_budget >= 0.0,
          std::to_string(r.violations) + " of " + std::to_string(r.checked) +
              " beyond tolerance " + num(r.tolerance) + " (worst excess " +
              num(r.worst_excess) + "), htilde_budget = " + num(run.dc.htilde_budget)};
}

// 6. Decay: rate >= 0.95 delta with log residual <= 1e-3; forced rate > 0; < 30 s.
Outcome decay() {
  const auto start = Clock::now();
  const ReferenceRun& run = reference_run();
  const DecayReport hom = fit_decay_rate(run.records);

  Scenario forced = reference_scenario();
  forced.forcing = {"exp_decay", 1.0, 1.0, 0.5, 0.5};  // sigma = e^{-2t} (envelope 1)
  const Forcing f = scenario_forcing(forced);
  const State s0 = project_initial_data(run.mesh, cosine(), zero());
  const auto recs = record_trajectory(integrate(run.sys, f, s0, forced.T, forced.dt), run.sys,
                                      forced.params, run.dc, f);
  const DecayReport frc = fit_decay_rate(recs);
  const double elapsed = seconds_since(start);

  const bool rate_ok = hom.fitted_rate >= 0.95 * run.dc.delta;
  const bool residual_ok = hom.residual <= 1e-3;
  const bool forced_ok = frc.fitted_rate > 0.0;
  return {rate_ok && residual_ok && forced_ok && elapsed < 30.0,
          "homogeneous rate " + num(hom.fitted_rate) + " (needs >= " + num(0.95 * run.dc.delta) +
              (rate_ok ? ", ok" : ", low") + "), log residual " + num(hom.residual) +
              " (needs <= 0.001" + (residual_ok ? ", ok" : ", too large") + "), forced rate " +
              num(frc.fitted_rate) + (forced_ok ? " > 0" : " <= 0") + ", " + num(elapsed, 3) +
              " s"};
}

// 7. decaying_cosine, 4 levels: L2 order >= 1.8, norm-1 order >= 0.9, < 2 min.
Outcome convergence() {
  const auto start = Clock::now();
  Scenario s = reference_scenario();
  s.solution = "decaying_cosine";
  s.n_nodes = 9;
  s.T = 1.0;
  s.dt = 0.05;
  const auto rows = convergence_study(s, 4);
  const double elapsed = seconds_since(start);
  const ConvergenceRow& r = rows.back();
  const bool ok = r.l2_order && r.h1_order && *r.l2_order >= 1.8 && *r.h1_order >= 0.9;
  return {ok && elapsed < 120.0,
          "finest pair (n = " + std::to_string(rows[rows.size() - 2].n_nodes) + " -> " +
              std::to_string(r.n_nodes) + "): L2 order " + num(r.l2_order.value_or(NAN)) +
              ", norm-1 order " + num(r.h1_order.value_or(NAN)) + ", " + num(elapsed, 3) + " s"};
}

// 8. Ladder r = 1, n = 257, dt = 1e-3: <= 1e-2; perturbed data >= 0.1.
Outcome ladder() {
  const ProblemParams p = reference_scenario().params;
  const SmoothData d = manufacture("decaying_cosine", p, 0.5).smooth_data(1);
  const Mesh mesh(257);
  const LadderReport good = ladder_check(d, p, mesh, 1, 1.0, 1e-3);
  const LadderReport bad = ladder_check(d, p, mesh, 1, 1.0, 1e-3, {.velocity_perturbation = 1.0});
  return {good.relative <= 1e-2 && bad.relative >= 0.1,
          "consistent " + num(good.relative) + " (<= 0.01), perturbed " + num(bad.relative) +
              " (>= 0.1)"};
}

// 9. Undamped, uncoupled, unforced: E conserved to 1e-10 over 10^4 steps.
Outcome conservation() {
  ProblemParams p;
  p.h0 = 1;
  p.h1 = 0;
  p.lam0 = 0;
  p.lam1 = 0;
  const Mesh mesh(65);
  const GalerkinSystem sys = assemble(mesh, p);
  const State s0 = project_initial_data(mesh, cosine(), zero());
  const Trajectory tr = integrate(sys, Forcing::none(), s0, 10.0, 1e-3);
  const auto recs = record_trajectory(tr, sys, p, DerivedConstants{}, Forcing::none());
  double worst = 0.0;
  for (const auto& r : recs) worst = std::max(worst, std::abs(r.E - recs[0].E) / recs[0].E);
  return {worst <= 1e-10 && tr.size() == 10001,
          "max relative drift " + num(worst) + " over " + std::to_string(tr.size() - 1) +
              " steps"};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  int only = 0;
  app.add_option("--only", only, "run a single criterion")->check(CLI::Range(1, 9));
  CLI11_PARSE(app, argc, argv);

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"lemma property suites", lemma_suites},
      {"oracle equivalence", oracle_equivalence},
      {"zero-data uniqueness", zero_data},
      {"sandwich inequality", sandwich},
      {"differential inequality", differential},
      {"exponential decay", decay},
      {"convergence proxy", convergence},
      {"regularity ladder", ladder},
      {"energy conservation", conservation},
  };

  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    if (only != 0 && only != id) continue;
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    std::cout << (o.pass ? "PASS" : "FAIL") << "  " << id << "  " << criteria[i].first << ": "
              << o.detail << std::endl;
    all = all && o.pass;
  }
  return all ? 0 : 1;
}
