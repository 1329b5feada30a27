#include "twopoint/runner.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

#include "twopoint/errors.hpp"
#include "twopoint/galerkin.hpp"
#include "twopoint/integrate.hpp"
#include "twopoint/manufactured.hpp"

namespace twopoint {

namespace fs = std::filesystem;

namespace {

constexpr const char* kEnergyHeader = "t,E,psi,Gamma,sigma,X,u0_trace,u1_trace";

std::ostream& full_precision(std::ostream& os) {
  os.precision(17);
  return os;
}

std::string fmt(double x) {
  std::ostringstream os;
  full_precision(os) << x;
  return os.str();
}

std::optional<double> order_between(double coarse, double fine) {
  if (!(coarse > 0.0) || !(fine > 0.0)) return std::nullopt;
  return std::log2(coarse / fine);
}

std::ofstream open_output(const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

void write_solution_csv(std::ostream& out, const Mesh& mesh, const Trajectory& traj, int stride) {
  full_precision(out) << "t,x,u\n";
  const std::size_t last = traj.size() - 1;
  for (std::size_t i = 0; i < traj.size(); ++i) {
    if (i % static_cast<std::size_t>(stride) != 0 && i != last) continue;
    const Vector& c = traj.states[i].c;
    for (int j = 0; j < mesh.n_nodes(); ++j) {
      out << traj.times[i] << ',' << mesh.node(j) << ',' << c[j] << '\n';
    }
  }
}

double oracle_discrepancy(const Trajectory& a, const Trajectory& b) {
  double diff = 0.0;
  double scale = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    diff = std::max(diff, (a.states[i].c - b.states[i].c).cwiseAbs().maxCoeff());
    scale = std::max(scale, b.states[i].c.cwiseAbs().maxCoeff());
  }
  if (diff == 0.0) return 0.0;
  return scale > 0.0 ? diff / scale : std::numeric_limits<double>::infinity();
}

std::string yes_no(bool b) { return b ? "PASS" : "FAIL"; }

RunResult early_exit(int code, std::string message) {
  RunResult r;
  r.exit_code = code;
  r.message = std::move(message);
  return r;
}

}  // namespace

std::vector<ConvergenceRow> convergence_study(const Scenario& base, int levels) {
  const auto sol = scenario_solution(base);
  if (!sol) throw ConfigError("convergence study needs a manufactured solution");
  if (levels < 3) throw ConfigError("convergence study needs at least 3 levels");

  std::vector<ConvergenceRow> rows;
  for (int k = 0; k < levels; ++k) {
    Scenario s = base;
    s.n_nodes = (base.n_nodes - 1) * (1 << k) + 1;
    s.dt = base.dt / static_cast<double>(1 << k);

    const Mesh mesh(s.n_nodes);
    const GalerkinSystem sys = assemble(mesh, s.params);
    const Trajectory traj =
        integrate(sys, sol->forcing(0), scenario_initial_state(s, mesh), s.T, s.dt);
    const FieldErrors e = field_errors(mesh, traj.states.back().c, sol->profile(traj.times.back()),
                                       sol->profile_x(traj.times.back()));

    ConvergenceRow row{s.n_nodes, s.dt, e.l2, e.norm1, std::nullopt, std::nullopt};
    if (!rows.empty()) {
      row.l2_order = order_between(rows.back().l2_error, row.l2_error);
      row.h1_order = order_between(rows.back().h1_error, row.h1_error);
    }
    rows.push_back(row);
  }
  return rows;
}

fs::path resolve_output_dir(const Scenario& s, const std::optional<fs::path>& override_dir) {
  if (override_dir) return *override_dir;
  if (const char* env = std::getenv(kOutputDirEnv); env && *env) return fs::path(env);
  if (s.output_dir) return fs::path(*s.output_dir);
  return fs::path("out") / s.name;
}

RunResult run_scenario(const Scenario& s, const fs::path& output_dir) {
  const bool wants_decay = std::any_of(s.checks.begin(), s.checks.end(), needs_decay_hypotheses);
  const Verdict verdict = validate_params(s.params, wants_decay);

  std::optional<DerivedConstants> dc;
  if (wants_decay) {
    if (!verdict) {
      auto r = early_exit(kExitHypothesis,
                          "decay checks requested on inadmissible parameters:\n" + verdict.describe());
      r.verdict = verdict;
      return r;
    }
    try {
      dc = derive_constants(s.params, s.free);
    } catch (const std::domain_error& e) {
      auto r = early_exit(kExitHypothesis, e.what());
      r.verdict = verdict;
      return r;
    }
  } else if (validate_params(s.params, true)) {
    try {
      dc = derive_constants(s.params, s.free);
    } catch (const std::domain_error&) {
      // Constants are informational here; Gamma falls back to E.
    }
  }

  RunResult r;
  r.verdict = verdict;
  r.constants = dc;
  r.output_dir = output_dir;
  const DerivedConstants constants = dc.value_or(DerivedConstants{});
  const auto sol = scenario_solution(s);

  try {
    const Mesh mesh(s.n_nodes);
    const GalerkinSystem sys = assemble(mesh, s.params);
    const Forcing forcing = scenario_forcing(s);
    const State initial = scenario_initial_state(s, mesh);
    const Trajectory traj = integrate(sys, forcing, initial, s.T, s.dt);
    r.records = record_trajectory(traj, sys, s.params, constants, forcing);

    fs::create_directories(output_dir);
    {
      auto out = open_output(output_dir / "energy.csv");
      write_energy_csv(out, r.records);
    }
    if (s.write_solution) {
      auto out = open_output(output_dir / "solution.csv");
      write_solution_csv(out, mesh, traj, s.solution_stride);
    }

    for (Check check : s.checks) {
      CheckOutcome o;
      o.check = check;
      std::ostringstream summary;
      full_precision(summary);
      switch (check) {
        case Check::sandwich: {
          r.sandwich = check_sandwich(r.records, constants);
          o.passed = r.sandwich->violations == 0;
          summary << r.sandwich->violations << " violations, Gamma/E in [" << r.sandwich->min_ratio
                  << ", " << r.sandwich->max_ratio << "]";
          break;
        }
        case Check::differential: {
          const Trajectory fine = integrate(sys, forcing, initial, s.T, s.dt / 2.0);
          const auto fine_records = record_trajectory(fine, sys, s.params, constants, forcing);
          const double c_dt = calibrate_fd_constant(r.records, fine_records);
          r.differential = check_differential_inequality(r.records, constants, c_dt);
          o.asserted = constants.htilde_budget >= 0.0;
          o.passed = r.differential->violations == 0;
          summary << r.differential->violations << " of " << r.differential->checked
                  << " samples beyond tolerance " << r.differential->tolerance;
          if (!o.asserted) summary << " (cross-coupling budget negative, not asserted)";
          break;
        }
        case Check::decay_fit: {
          try {
            r.decay = fit_decay_rate(r.records);
            r.decay->theoretical_delta = constants.delta;
            const bool forced = !forcing.is_zero();
            o.passed = forced ? r.decay->fitted_rate > 0.0
                              : r.decay->fitted_rate >= kDecayRateFraction * constants.delta;
            summary << "fitted_rate " << r.decay->fitted_rate
                    << (forced ? " (forced, needs > 0)" : ", needs >= ")
                    << (forced ? std::string() : fmt(kDecayRateFraction * constants.delta));
          } catch (const InsufficientDataError& e) {
            o.passed = false;
            summary << e.what();
          }
          break;
        }
        case Check::ladder: {
          r.ladder = ladder_check(sol->smooth_data(s.ladder_order), s.params, mesh, s.ladder_order,
                                  s.T, s.dt);
          o.passed = r.ladder->relative <= kLadderTolerance;
          summary << "relative discrepancy " << r.ladder->relative << " at r = " << s.ladder_order;
          break;
        }
        case Check::oracle: {
          const Trajectory rk = oracle_integrate(sys, forcing, initial, s.T, s.dt, s.dt / 100.0);
          r.oracle_error = oracle_discrepancy(traj, rk);
          o.passed = *r.oracle_error <= kOracleTolerance;
          summary << "relative max nodal error " << *r.oracle_error;
          break;
        }
        case Check::convergence: {
          r.convergence = convergence_study(s, s.convergence_levels);
          auto out = open_output(output_dir / "convergence.csv");
          write_convergence_csv(out, r.convergence);
          const ConvergenceRow& finest = r.convergence.back();
          if (sol->is_zero()) {
            o.passed = true;
            summary << "zero solution, orders not applicable";
          } else {
            o.passed = finest.l2_order && finest.h1_order &&
                       *finest.l2_order >= kConvergenceL2Order &&
                       *finest.h1_order >= kConvergenceH1Order;
            summary << "finest orders L2 " << finest.l2_order.value_or(NAN) << ", norm1 "
                    << finest.h1_order.value_or(NAN);
          }
          break;
        }
      }
      o.summary = summary.str();
      r.outcomes.push_back(o);
    }
  } catch (const SingularMatrixError& e) {
    r.exit_code = kExitSolver;
    r.message = std::string(e.what()) + " (dt = " + fmt(e.dt()) + ")";
    return r;
  } catch (const std::invalid_argument& e) {
    r.exit_code = kExitSolver;
    r.message = e.what();
    return r;
  }

  if (r.decay) {
    if (r.sandwich) r.decay->sandwich_violations = r.sandwich->violations;
    if (r.differential) r.decay->differential_violations = r.differential->violations;
  }
  const bool ok = std::all_of(r.outcomes.begin(), r.outcomes.end(),
                              [](const CheckOutcome& o) { return o.passed || !o.asserted; });
  r.exit_code = ok ? kExitOk : kExitCheckFailed;

  auto out = open_output(output_dir / "report.txt");
  write_report(out, s, r);
  return r;
}

int run_scenario_file(const fs::path& config, const std::optional<fs::path>& override_dir,
                      std::ostream& log) {
  Scenario s;
  try {
    s = load_scenario(config);
  } catch (const ConfigError& e) {
    log << "config error: " << e.what() << '\n';
    return kExitConfig;
  }
  const fs::path dir = resolve_output_dir(s, override_dir);
  const RunResult r = run_scenario(s, dir);
  if (!r.message.empty()) log << r.message << '\n';
  for (const auto& o : r.outcomes) {
    log << to_string(o.check) << ": " << (o.asserted ? yes_no(o.passed) : "REPORTED") << "  "
        << o.summary << '\n';
  }
  if (r.exit_code == kExitOk || r.exit_code == kExitCheckFailed) {
    log << "artifacts in " << dir.string() << '\n';
  }
  return r.exit_code;
}

void write_energy_csv(std::ostream& out, const std::vector<EnergyRecord>& records) {
  full_precision(out) << kEnergyHeader << '\n';
  for (const auto& e : records) {
    out << e.t << ',' << e.E << ',' << e.psi << ',' << e.Gamma << ',' << e.sigma << ',' << e.X
        << ',' << e.u0_trace << ',' << e.u1_trace << '\n';
  }
}

void write_convergence_csv(std::ostream& out, const std::vector<ConvergenceRow>& rows) {
  full_precision(out) << "n_nodes,dt,l2_error,h1_error,l2_order,h1_order\n";
  auto order = [](const std::optional<double>& o) { return o ? fmt(*o) : std::string("n/a"); };
  for (const auto& row : rows) {
    out << row.n_nodes << ',' << row.dt << ',' << row.l2_error << ',' << row.h1_error << ','
        << order(row.l2_order) << ',' << order(row.h1_order) << '\n';
  }
}

std::vector<EnergyRecord> read_energy_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kEnergyHeader) {
    throw ConfigError("energy.csv: unexpected header");
  }
  std::vector<EnergyRecord> records;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    double v[8];
    const char* p = line.data();
    const char* end = p + line.size();
    for (int k = 0; k < 8; ++k) {
      const auto [next, ec] = std::from_chars(p, end, v[k]);
      const bool sep_ok = k < 7 ? (next < end && *next == ',') : next == end;
      if (ec != std::errc() || !sep_ok) {
        throw ConfigError("energy.csv:" + std::to_string(lineno) + ": malformed row");
      }
      p = next + 1;
    }
    records.push_back({v[0], v[1], v[2], v[3], v[4], v[5], v[6], v[7]});
  }
  return records;
}

std::vector<EnergyRecord> read_energy_csv(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path.string());
  return read_energy_csv(in);
}

void write_report(std::ostream& out, const Scenario& s, const RunResult& r) {
  full_precision(out);
  out << "# " << s.name << "\nstatus = " << r.exit_code << '\n';
  const ProblemParams& p = s.params;
  out << "h0 = " << p.h0 << "\nh1 = " << p.h1 << "\nlam0 = " << p.lam0 << "\nlam1 = " << p.lam1
      << "\nht0 = " << p.ht0 << "\nht1 = " << p.ht1 << "\nlt0 = " << p.lt0 << "\nlt1 = " << p.lt1
      << "\nK = " << p.K << "\nlam = " << p.lam << "\nn_nodes = " << s.n_nodes
      << "\nT = " << s.T << "\ndt = " << s.dt << "\nseed = " << s.seed << '\n';
  for (const auto& v : r.verdict.violations) out << "hypothesis_violated = " << v.name << '\n';

  if (r.constants) {
    const DerivedConstants& c = *r.constants;
    out << "\n# derived constants\nC0 = " << c.C0 << "\nC1 = " << c.C1
        << "\nmu_min = " << c.mu_min << "\nmu0 = " << c.mu0 << "\neps1 = " << c.eps1
        << "\neps2 = " << c.eps2 << "\ndelta = " << c.delta << "\nbeta1 = " << c.beta1
        << "\nbeta2 = " << c.beta2 << "\nhtilde_budget = " << c.htilde_budget << '\n';
  }
  if (r.decay) {
    const DecayReport& d = *r.decay;
    out << "\n# decay fit\nfitted_rate = " << d.fitted_rate
        << "\nfitted_amplitude = " << d.fitted_amplitude
        << "\ntheoretical_delta = " << d.theoretical_delta
        << "\nfit_window_start = " << d.fit_window.start
        << "\nfit_window_end = " << d.fit_window.end << "\nfit_samples = " << d.samples
        << "\nfit_residual = " << d.residual << '\n';
  }
  out << "\n# checks\n";
  if (r.sandwich) out << "sandwich_violations = " << r.sandwich->violations << '\n';
  if (r.differential) {
    out << "differential_violations = " << r.differential->violations
        << "\ndifferential_tolerance = " << r.differential->tolerance
        << "\ndifferential_worst_excess = " << r.differential->worst_excess << '\n';
  }
  if (r.ladder) out << "ladder_relative = " << r.ladder->relative << '\n';
  if (r.oracle_error) out << "oracle_relative = " << *r.oracle_error << '\n';
  for (const auto& o : r.outcomes) {
    out << "check_" << to_string(o.check) << " = "
        << (o.asserted ? yes_no(o.passed) : std::string("REPORTED")) << "  # " << o.summary
        << '\n';
  }
}

std::vector<SweepEntry> sweep(const ConfigMap& base, const std::string& name,
                              const std::string& param, const std::vector<std::string>& values,
                              const fs::path& root) {
  std::vector<std::future<SweepEntry>> jobs;
  for (const auto& value : values) {
    jobs.push_back(std::async(std::launch::async, [=] {
      SweepEntry entry;
      entry.value = value;
      entry.output_dir = root / (param + "=" + value);
      try {
        ConfigMap cfg = base;
        cfg[param] = value;
        cfg.erase("output_dir");
        const Scenario s = scenario_from_config(cfg, name + "[" + param + "=" + value + "]");
        const RunResult r = run_scenario(s, entry.output_dir);
        entry.exit_code = r.exit_code;
        entry.message = r.message;
        if (r.decay) entry.fitted_rate = r.decay->fitted_rate;
      } catch (const ConfigError& e) {
        entry.exit_code = kExitConfig;
        entry.message = e.what();
      }
      return entry;
    }));
  }
  std::vector<SweepEntry> out;
  for (auto& job : jobs) out.push_back(job.get());
  return out;
}

}  // namespace twopoint
