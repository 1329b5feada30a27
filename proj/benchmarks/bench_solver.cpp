#include <cmath>
#include <numbers>

#include <benchmark/benchmark.h>

#include "twopoint/diagnostics.hpp"
#include "twopoint/galerkin.hpp"
#include "twopoint/integrate.hpp"
#include "twopoint/scenario.hpp"

namespace {

using namespace twopoint;

const ProblemParams& reference_params() {
  static const ProblemParams p = reference_scenario().params;
  return p;
}

State cosine_state(const Mesh& mesh) {
  return project_initial_data(
      mesh, [](double x) { return std::cos(std::numbers::pi * x); }, [](double) { return 0.0; });
}

void BM_Assemble(benchmark::State& st) {
  const Mesh mesh(static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(assemble(mesh, reference_params()));
}

void BM_Step(benchmark::State& st) {
  const Mesh mesh(static_cast<int>(st.range(0)));
  const GalerkinSystem sys = assemble(mesh, reference_params());
  const MidpointStepper stepper(sys, 1e-3);
  const Forcing none = Forcing::none();
  State s = cosine_state(mesh);
  double t = 0.0;
  for (auto _ : st) {
    s = stepper.step(sys, none, s, t);
    t += 1e-3;
  }
}

void BM_Factor(benchmark::State& st) {
  const Mesh mesh(static_cast<int>(st.range(0)));
  const GalerkinSystem sys = assemble(mesh, reference_params());
  for (auto _ : st) benchmark::DoNotOptimize(MidpointStepper(sys, 1e-3));
}

void BM_Record(benchmark::State& st) {
  const Mesh mesh(static_cast<int>(st.range(0)));
  const ProblemParams& p = reference_params();
  const GalerkinSystem sys = assemble(mesh, p);
  const DerivedConstants dc = derive_constants(p);
  const Trajectory traj = integrate(sys, Forcing::none(), cosine_state(mesh), 0.1, 1e-3);
  for (auto _ : st) {
    benchmark::DoNotOptimize(record_trajectory(traj, sys, p, dc, Forcing::none()));
  }
  st.SetItemsProcessed(st.iterations() * static_cast<long>(traj.size()));
}

}  // namespace

BENCHMARK(BM_Assemble)->Arg(65)->Arg(257)->Arg(1024)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_Factor)->Arg(65)->Arg(257)->Arg(1024)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Step)->Arg(65)->Arg(257)->Arg(1024)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_Record)->Arg(65)->Arg(257)->Arg(1024)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
