// twopoint: run, refine, sweep and property-check damped two-point wave scenarios.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "twopoint/errors.hpp"
#include "twopoint/properties.hpp"
#include "twopoint/runner.hpp"
#include "twopoint/scenario.hpp"

namespace fs = std::filesystem;
using namespace twopoint;

namespace {

std::optional<fs::path> as_override(const std::string& out) {
  if (out.empty()) return std::nullopt;
  return fs::path(out);
}

int converge(const std::string& config, int levels, const std::string& out) {
  Scenario s;
  try {
    s = load_scenario(config);
    const auto rows = convergence_study(s, levels);
    const fs::path dir = resolve_output_dir(s, as_override(out));
    fs::create_directories(dir);
    std::ofstream csv(dir / "convergence.csv");
    write_convergence_csv(csv, rows);

    std::cout << std::setw(8) << "n_nodes" << std::setw(12) << "dt" << std::setw(14) << "L2"
              << std::setw(14) << "norm1" << std::setw(10) << "L2 ord" << std::setw(10)
              << "n1 ord" << '\n';
    auto ord = [](const std::optional<double>& o) {
      std::ostringstream os;
      if (o) {
        os << std::fixed << std::setprecision(3) << *o;
      } else {
        os << "n/a";
      }
      return os.str();
    };
    for (const auto& r : rows) {
      std::cout << std::setw(8) << r.n_nodes << std::setw(12) << r.dt << std::setw(14)
                << r.l2_error << std::setw(14) << r.h1_error << std::setw(10) << ord(r.l2_order)
                << std::setw(10) << ord(r.h1_order) << '\n';
    }
    std::cout << "wrote " << (dir / "convergence.csv").string() << '\n';

    const auto& finest = rows.back();
    if (scenario_solution(s)->is_zero()) return kExitOk;
    const bool ok = finest.l2_order && finest.h1_order && *finest.l2_order >= kConvergenceL2Order &&
                    *finest.h1_order >= kConvergenceH1Order;
    return ok ? kExitOk : kExitCheckFailed;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const SingularMatrixError& e) {
    std::cerr << e.what() << " (dt = " << e.dt() << ")\n";
    return kExitSolver;
  }
}

int run_sweep(const std::string& config, const std::string& param,
              const std::vector<std::string>& values, const std::string& out) {
  ConfigMap base;
  try {
    base = read_config_file(config);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  }
  const std::string name = fs::path(config).stem().string();
  fs::path root;
  if (!out.empty()) {
    root = out;
  } else if (const char* env = std::getenv(kOutputDirEnv); env && *env) {
    root = env;
  } else {
    root = fs::path("out") / (name + "-sweep");
  }

  int worst = kExitOk;
  for (const auto& e : sweep(base, name, param, values, root)) {
    std::cout << param << " = " << e.value << "  exit " << e.exit_code;
    if (e.fitted_rate) std::cout << "  fitted_rate " << std::setprecision(6) << *e.fitted_rate;
    if (!e.message.empty()) std::cout << "  " << e.message;
    std::cout << '\n';
    worst = std::max(worst, e.exit_code);
  }
  return worst;
}

int props(std::uint64_t seed, std::size_t samples) {
  bool ok = true;
  for (const auto& r : run_property_suites(seed, samples)) {
    std::cout << (r.passed() ? "PASS " : "FAIL ") << std::left << std::setw(24) << r.name
              << std::right << " violations " << r.violations << "/" << r.samples
              << "  max ratio " << std::setprecision(15) << r.max_ratio << "  [" << r.inequality
              << "]\n";
    ok = ok && r.passed();
  }
  return ok ? kExitOk : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Damped wave equation with two-point boundary conditions"};
  app.require_subcommand(1);

  std::string config;
  std::string out;

  auto* run = app.add_subcommand("run", "run a scenario and write energy.csv/report.txt");
  run->add_option("config", config, "scenario file")->required();
  run->add_option("--out", out, "output directory (overrides " + std::string(kOutputDirEnv) + ")");

  int levels = 4;
  auto* conv = app.add_subcommand("converge", "mesh/step refinement against the exact solution");
  conv->add_option("config", config, "scenario file with a manufactured solution")->required();
  conv->add_option("--levels", levels, "refinement levels")->check(CLI::Range(3, 12));
  conv->add_option("--out", out, "output directory");

  std::string param;
  std::vector<std::string> values;
  auto* sw = app.add_subcommand("sweep", "rerun a scenario over values of one key");
  sw->add_option("config", config, "scenario file")->required();
  sw->add_option("--param", param, "scenario key to vary")->required();
  sw->add_option("--values", values, "values to try")->required();
  sw->add_option("--out", out, "root directory for per-value outputs");

  std::uint64_t seed = 0;
  std::size_t samples = kPropertySamples;
  auto* pr = app.add_subcommand("props", "randomized checks of the norm and form inequalities");
  pr->add_option("--seed", seed, "RNG seed");
  pr->add_option("--samples", samples, "samples per suite")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  if (*run) return run_scenario_file(config, as_override(out), std::cerr);
  if (*conv) return converge(config, levels, out);
  if (*sw) return run_sweep(config, param, values, out);
  return props(seed, samples);
}
