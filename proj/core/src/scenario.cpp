#include "twopoint/scenario.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include "twopoint/errors.hpp"

namespace twopoint {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

bool valid_key(const std::string& k) {
  return !k.empty() && std::all_of(k.begin(), k.end(), [](unsigned char c) {
    return std::isalnum(c) || c == '_';
  });
}

class Reader {
public:
  Reader(const ConfigMap& cfg, std::string name) : cfg_(cfg), name_(std::move(name)) {}

  std::optional<std::string> text(const std::string& key) {
    used_.insert(key);
    const auto it = cfg_.find(key);
    if (it == cfg_.end()) return std::nullopt;
    return it->second;
  }

  std::optional<double> real(const std::string& key) {
    const auto v = text(key);
    if (!v) return std::nullopt;
    double out = 0.0;
    const char* first = v->data();
    const char* last = first + v->size();
    const auto [ptr, ec] = std::from_chars(first, last, out);
    if (ec != std::errc() || ptr != last || !std::isfinite(out)) {
      throw ConfigError(name_ + ": key '" + key + "' expects a real number, got '" + *v + "'");
    }
    return out;
  }

  double real(const std::string& key, double fallback) { return real(key).value_or(fallback); }

  std::optional<long long> integer(const std::string& key) {
    const auto v = text(key);
    if (!v) return std::nullopt;
    long long out = 0;
    const char* first = v->data();
    const char* last = first + v->size();
    const auto [ptr, ec] = std::from_chars(first, last, out);
    if (ec != std::errc() || ptr != last) {
      throw ConfigError(name_ + ": key '" + key + "' expects an integer, got '" + *v + "'");
    }
    return out;
  }

  bool boolean(const std::string& key, bool fallback) {
    const auto v = text(key);
    if (!v) return fallback;
    if (*v == "true" || *v == "1" || *v == "yes") return true;
    if (*v == "false" || *v == "0" || *v == "no") return false;
    throw ConfigError(name_ + ": key '" + key + "' expects true/false, got '" + *v + "'");
  }

  void reject_unused() const {
    for (const auto& [k, v] : cfg_) {
      if (!used_.count(k)) throw ConfigError(name_ + ": unknown key '" + k + "'");
    }
  }

  [[noreturn]] void fail(const std::string& msg) const { throw ConfigError(name_ + ": " + msg); }

private:
  const ConfigMap& cfg_;
  std::string name_;
  std::set<std::string> used_;
};

const std::set<std::string> kProfiles = {"zero", "constant", "cosine", "sine"};
const std::set<std::string> kForcings = {"none", "exp_decay"};

ProfileSpec read_profile(Reader& r, const std::string& key, ProfileSpec spec) {
  if (auto name = r.text(key)) spec.name = *name;
  spec.amp = r.real(key + "_amp", spec.amp);
  if (auto mode = r.integer(key + "_mode")) spec.mode = static_cast<int>(*mode);
  if (!kProfiles.count(spec.name)) r.fail("unknown profile '" + spec.name + "' for " + key);
  return spec;
}

std::string number(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

}  // namespace

ConfigMap parse_config(std::istream& in, const std::string& source) {
  ConfigMap out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    const std::string where = source + ":" + std::to_string(lineno);
    if (eq == std::string::npos) throw ConfigError(where + ": expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (!valid_key(key)) throw ConfigError(where + ": invalid key '" + key + "'");
    if (value.empty()) throw ConfigError(where + ": empty value for '" + key + "'");
    if (!out.emplace(key, value).second) throw ConfigError(where + ": repeated key '" + key + "'");
  }
  return out;
}

ConfigMap read_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open scenario file " + path.string());
  return parse_config(in, path.string());
}

std::string to_string(Check c) {
  switch (c) {
    case Check::sandwich: return "sandwich";
    case Check::differential: return "differential";
    case Check::decay_fit: return "decay_fit";
    case Check::ladder: return "ladder";
    case Check::oracle: return "oracle";
    case Check::convergence: return "convergence";
  }
  return "unknown";
}

Check parse_check(const std::string& name) {
  for (Check c : {Check::sandwich, Check::differential, Check::decay_fit, Check::ladder,
                  Check::oracle, Check::convergence}) {
    if (to_string(c) == name) return c;
  }
  throw ConfigError("unknown check '" + name + "'");
}

bool needs_decay_hypotheses(Check c) {
  return c == Check::sandwich || c == Check::differential || c == Check::decay_fit;
}

bool Scenario::has_check(Check c) const {
  return std::find(checks.begin(), checks.end(), c) != checks.end();
}

Scenario scenario_from_config(const ConfigMap& config, const std::string& name) {
  Reader r(config, name);
  Scenario s;
  s.name = name;

  ProblemParams& p = s.params;
  p.h0 = r.real("h0", p.h0);
  p.h1 = r.real("h1", p.h1);
  p.lam0 = r.real("lam0", p.lam0);
  p.lam1 = r.real("lam1", p.lam1);
  p.ht0 = r.real("ht0", p.ht0);
  p.ht1 = r.real("ht1", p.ht1);
  p.lt0 = r.real("lt0", p.lt0);
  p.lt1 = r.real("lt1", p.lt1);
  p.K = r.real("K", p.K);
  p.lam = r.real("lam", p.lam);

  if (auto n = r.integer("n_nodes")) s.n_nodes = static_cast<int>(*n);
  s.T = r.real("T", s.T);
  s.dt = r.real("dt", s.dt);
  if (s.n_nodes < 2) r.fail("n_nodes must be at least 2");
  if (!(s.T > 0.0)) r.fail("T must be positive");
  if (!(s.dt > 0.0)) r.fail("dt must be positive");
  const double steps = s.T / s.dt;
  if (std::abs(steps - std::round(steps)) > 1e-9 * steps) r.fail("T must be a multiple of dt");

  s.solution = r.text("solution");
  s.alpha = r.real("alpha", s.alpha);
  if (s.solution) {
    const auto& forms = manufactured_forms();
    if (std::find(forms.begin(), forms.end(), *s.solution) == forms.end()) {
      r.fail("unknown manufactured solution '" + *s.solution + "'");
    }
    for (const char* k : {"u0", "u1", "forcing"}) {
      if (config.count(k)) r.fail(std::string("'") + k + "' conflicts with 'solution'");
    }
  }
  s.u0 = read_profile(r, "u0", s.u0);
  s.u1 = read_profile(r, "u1", s.u1);

  if (auto f = r.text("forcing")) s.forcing.name = *f;
  if (!kForcings.count(s.forcing.name)) r.fail("unknown forcing '" + s.forcing.name + "'");
  s.forcing.rate = r.real("forcing_rate", s.forcing.rate);
  s.forcing.f_amp = r.real("forcing_f_amp", s.forcing.f_amp);
  s.forcing.g0_amp = r.real("forcing_g0_amp", s.forcing.g0_amp);
  s.forcing.g1_amp = r.real("forcing_g1_amp", s.forcing.g1_amp);

  if (auto checks = r.text("checks")) {
    std::stringstream ss(*checks);
    std::string item;
    while (std::getline(ss, item, ',')) {
      item = trim(item);
      if (item.empty()) continue;
      try {
        const Check c = parse_check(item);
        if (!s.has_check(c)) s.checks.push_back(c);
      } catch (const ConfigError& e) {
        r.fail(e.what());
      }
    }
  }
  if (auto seed = r.integer("seed")) s.seed = static_cast<std::uint64_t>(*seed);

  s.free.eps1 = r.real("eps1");
  s.free.eps2 = r.real("eps2");
  s.free.delta = r.real("delta");

  if (auto k = r.integer("ladder_order")) s.ladder_order = static_cast<int>(*k);
  if (auto k = r.integer("convergence_levels")) s.convergence_levels = static_cast<int>(*k);
  s.write_solution = r.boolean("write_solution", s.write_solution);
  if (auto k = r.integer("solution_stride")) s.solution_stride = static_cast<int>(*k);
  if (s.solution_stride < 1) r.fail("solution_stride must be at least 1");
  s.output_dir = r.text("output_dir");

  if ((s.has_check(Check::ladder) || s.has_check(Check::convergence)) && !s.solution) {
    r.fail("checks 'ladder' and 'convergence' need a manufactured 'solution'");
  }
  if (s.has_check(Check::ladder) && s.ladder_order != 1 && s.ladder_order != 2) {
    r.fail("ladder_order must be 1 or 2");
  }
  if (s.has_check(Check::convergence) && s.convergence_levels < 3) {
    r.fail("convergence_levels must be at least 3");
  }
  if (s.has_check(Check::oracle) && s.n_nodes > kOracleMaxDim) {
    r.fail("check 'oracle' needs n_nodes <= " + std::to_string(kOracleMaxDim));
  }

  r.reject_unused();
  return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
  return scenario_from_config(read_config_file(path), path.stem().string());
}

Scenario reference_scenario() {
  Scenario s;
  s.name = "reference";
  s.params = {.h0 = 1.0, .h1 = 0.5, .lam0 = 1.0, .lam1 = 1.0, .ht0 = 0.01, .ht1 = 0.01,
              .lt0 = 0.1, .lt1 = 0.1, .K = 1.0, .lam = 1.0};
  s.n_nodes = 65;
  s.T = 10.0;
  s.dt = 1e-3;
  s.u0 = {"cosine", 1.0, 1};
  s.u1 = {"zero", 1.0, 1};
  s.checks = {Check::sandwich, Check::differential, Check::decay_fit};
  return s;
}

std::string to_config_text(const Scenario& s) {
  std::ostringstream os;
  const ProblemParams& p = s.params;
  os << "h0 = " << number(p.h0) << "\nh1 = " << number(p.h1) << "\nlam0 = " << number(p.lam0)
     << "\nlam1 = " << number(p.lam1) << "\nht0 = " << number(p.ht0)
     << "\nht1 = " << number(p.ht1) << "\nlt0 = " << number(p.lt0)
     << "\nlt1 = " << number(p.lt1) << "\nK = " << number(p.K) << "\nlam = " << number(p.lam)
     << "\nn_nodes = " << s.n_nodes << "\nT = " << number(s.T) << "\ndt = " << number(s.dt)
     << '\n';
  if (s.solution) {
    os << "solution = " << *s.solution << "\nalpha = " << number(s.alpha) << '\n';
  } else {
    os << "u0 = " << s.u0.name << "\nu0_amp = " << number(s.u0.amp) << "\nu0_mode = " << s.u0.mode
       << "\nu1 = " << s.u1.name << "\nu1_amp = " << number(s.u1.amp)
       << "\nu1_mode = " << s.u1.mode << "\nforcing = " << s.forcing.name
       << "\nforcing_rate = " << number(s.forcing.rate)
       << "\nforcing_f_amp = " << number(s.forcing.f_amp)
       << "\nforcing_g0_amp = " << number(s.forcing.g0_amp)
       << "\nforcing_g1_amp = " << number(s.forcing.g1_amp) << '\n';
  }
  if (!s.checks.empty()) {
    os << "checks = ";
    for (std::size_t i = 0; i < s.checks.size(); ++i) {
      os << (i ? ", " : "") << to_string(s.checks[i]);
    }
    os << '\n';
  }
  os << "seed = " << s.seed << '\n';
  if (s.free.eps1) os << "eps1 = " << number(*s.free.eps1) << '\n';
  if (s.free.eps2) os << "eps2 = " << number(*s.free.eps2) << '\n';
  if (s.free.delta) os << "delta = " << number(*s.free.delta) << '\n';
  os << "ladder_order = " << s.ladder_order << "\nconvergence_levels = " << s.convergence_levels
     << "\nwrite_solution = " << (s.write_solution ? "true" : "false")
     << "\nsolution_stride = " << s.solution_stride << '\n';
  if (s.output_dir) os << "output_dir = " << *s.output_dir << '\n';
  return os.str();
}

std::optional<ManufacturedSolution> scenario_solution(const Scenario& s) {
  if (!s.solution) return std::nullopt;
  return manufacture(*s.solution, s.params, s.alpha);
}

SpaceFn profile_function(const ProfileSpec& spec) {
  constexpr double pi = std::numbers::pi;
  const double a = spec.amp;
  const double k = spec.mode * pi;
  if (spec.name == "zero") return [](double) { return 0.0; };
  if (spec.name == "constant") return [a](double) { return a; };
  if (spec.name == "cosine") return [a, k](double x) { return a * std::cos(k * x); };
  if (spec.name == "sine") return [a, k](double x) { return a * std::sin(k * x); };
  throw UnknownFormError("unknown profile '" + spec.name + "'");
}

Forcing scenario_forcing(const Scenario& s) {
  if (auto sol = scenario_solution(s)) return sol->forcing(0);
  const ForcingSpec& f = s.forcing;
  if (f.name == "none") return Forcing::none();
  Forcing out;
  const double rate = f.rate;
  if (f.f_amp != 0.0) {
    out.f = [a = f.f_amp, rate](double x, double t) {
      return a * std::exp(-rate * t) * std::cos(std::numbers::pi * x);
    };
  }
  if (f.g0_amp != 0.0) out.g0 = [a = f.g0_amp, rate](double t) { return a * std::exp(-rate * t); };
  if (f.g1_amp != 0.0) out.g1 = [a = f.g1_amp, rate](double t) { return a * std::exp(-rate * t); };
  return out;
}

State scenario_initial_state(const Scenario& s, const Mesh& mesh) {
  if (auto sol = scenario_solution(s)) {
    return project_initial_data(mesh, sol->initial_displacement(), sol->initial_velocity());
  }
  return project_initial_data(mesh, profile_function(s.u0), profile_function(s.u1));
}

}  // namespace twopoint
