#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "twopoint/galerkin.hpp"
#include "twopoint/integrate.hpp"
#include "twopoint/manufactured.hpp"
#include "twopoint/params.hpp"

namespace twopoint {

/// Flat key/value scenario file.
///
/// Grammar: one `key = value` assignment per line; blank lines and anything
/// after `#` are ignored; keys are `[A-Za-z0-9_]+`; values are trimmed;
/// repeated keys are an error. Numbers are decimal reals.
using ConfigMap = std::map<std::string, std::string>;

/// Throws ConfigError with the source name and line number on malformed input.
ConfigMap parse_config(std::istream& in, const std::string& source = "<config>");
ConfigMap read_config_file(const std::filesystem::path& path);

enum class Check { sandwich, differential, decay_fit, ladder, oracle, convergence };

std::string to_string(Check c);
/// Throws ConfigError for unknown names.
Check parse_check(const std::string& name);
/// The checks that need the decay hypotheses (K > 0, lam > 0 on top of the
/// existence ones).
bool needs_decay_hypotheses(Check c);

/// Named initial profile: zero, constant (amp), cosine (amp cos(mode pi x)),
/// sine (amp sin(mode pi x)).
struct ProfileSpec {
  std::string name = "zero";
  double amp = 1.0;
  int mode = 1;
};

/// Named forcing: none, or exp_decay with
///   f = f_amp e^{-rate t} cos(pi x),  g0 = g0_amp e^{-rate t},  g1 = g1_amp e^{-rate t},
/// so sigma(t) = e^{-2 rate t} (f_amp^2 / 2 + g0_amp^2 + g1_amp^2).
struct ForcingSpec {
  std::string name = "none";
  double rate = 1.0;
  double f_amp = 0.0;
  double g0_amp = 0.0;
  double g1_amp = 0.0;
};

struct Scenario {
  std::string name = "scenario";
  ProblemParams params;
  int n_nodes = 65;
  double T = 10.0;
  double dt = 1e-3;
  /// When set, initial data and forcing come from this exact solution.
  std::optional<std::string> solution;
  double alpha = 0.5;
  ProfileSpec u0{"cosine", 1.0, 1};
  ProfileSpec u1{"zero", 1.0, 1};
  ForcingSpec forcing;
  std::vector<Check> checks;
  std::uint64_t seed = 0;
  FreeParameters free;
  int ladder_order = 1;
  int convergence_levels = 4;
  bool write_solution = false;
  int solution_stride = 100;
  std::optional<std::string> output_dir;

  bool has_check(Check c) const;
};

/// Builds a scenario from parsed keys; throws ConfigError for unknown keys,
/// malformed numbers, T <= 0, dt <= 0, n_nodes < 2, unknown generators, or
/// checks whose prerequisites are missing.
Scenario scenario_from_config(const ConfigMap& config, const std::string& name = "scenario");
Scenario load_scenario(const std::filesystem::path& path);

/// Shipped reference: h0=1, h1=0.5, lam0=lam1=1, lt0=lt1=0.1, ht0=ht1=0.01,
/// K=1, lam=1, 65 nodes, T=10, dt=1e-3, zero forcing, u0=cos(pi x), u1=0.
Scenario reference_scenario();

/// Writes a scenario back in config syntax.
std::string to_config_text(const Scenario& s);

std::optional<ManufacturedSolution> scenario_solution(const Scenario& s);
SpaceFn profile_function(const ProfileSpec& spec);
Forcing scenario_forcing(const Scenario& s);
State scenario_initial_state(const Scenario& s, const Mesh& mesh);

}  // namespace twopoint
