// Copyright 2026 The pinchopt Authors
// SPDX-License-Identifier: Apache-2.0

#include "pinchopt/cli.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <initializer_list>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "pinchopt/allocation.hpp"
#include "pinchopt/montecarlo.hpp"
#include "pinchopt/oracle.hpp"
#include "pinchopt/specfun.hpp"

namespace pinchopt::cli {
namespace {

using nlohmann::json;

// Stream-id namespaces under one base seed. User draws and PSO seeds are
// keyed by trial only, which is what makes sweep curves paired: the same
// trial sees the same users and the same swarm across values and methods.
constexpr std::uint64_t kUserDrawStream = 1ULL << 32;
constexpr std::uint64_t kPsoSeedStream = 2ULL << 32;
constexpr std::uint64_t kValidateStream = 3ULL << 32;

std::string fmt_double(double v) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string iso8601_utc_now() {
  const std::time_t t =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void check_keys(const json& obj,
                std::initializer_list<const char*> allowed,
                const char* where) {
  for (const auto& item : obj.items()) {
    bool known = false;
    for (const char* k : allowed)
      if (item.key() == k) {
        known = true;
        break;
      }
    if (!known)
      throw ConfigError("unknown key '" + item.key() + "' in " + where);
  }
}

double get_number(const json& obj, const char* key, double fallback,
                  const char* where) {
  if (!obj.contains(key)) return fallback;
  const auto& v = obj.at(key);
  if (!v.is_number())
    throw ConfigError(std::string("field '") + key + "' in " + where +
                      " must be a number");
  return v.get<double>();
}

long get_integer(const json& obj, const char* key, long fallback,
                 const char* where) {
  if (!obj.contains(key)) return fallback;
  const auto& v = obj.at(key);
  if (!v.is_number_integer())
    throw ConfigError(std::string("field '") + key + "' in " + where +
                      " must be an integer");
  return v.get<long>();
}

channel::Interval get_interval(const json& obj, const char* key,
                               channel::Interval fallback,
                               const char* where) {
  if (!obj.contains(key)) return fallback;
  const auto& v = obj.at(key);
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() ||
      !v[1].is_number())
    throw ConfigError(std::string("field '") + key + "' in " + where +
                      " must be a [lo, hi] number pair");
  return {v[0].get<double>(), v[1].get<double>()};
}

// Noise may be given in dBm (paper-style) or directly in watts; dBm wins
// when both appear in the same object.
double get_noise(const json& obj, double fallback, const char* where) {
  if (obj.contains("noise_dbm")) {
    const auto& v = obj.at("noise_dbm");
    if (!v.is_number())
      throw ConfigError(std::string("field 'noise_dbm' in ") + where +
                        " must be a number");
    return channel::dbm_to_watts(v.get<double>());
  }
  return get_number(obj, "noise_power_w", fallback, where);
}

channel::UserSpec parse_user(const json& obj,
                             const channel::UserSpec& defaults,
                             const char* where) {
  check_keys(obj,
             {"x_hat", "y_hat", "sigma2", "target_rate", "epsilon",
              "noise_dbm", "noise_power_w"},
             where);
  channel::UserSpec u = defaults;
  u.x_hat = get_number(obj, "x_hat", defaults.x_hat, where);
  u.y_hat = get_number(obj, "y_hat", defaults.y_hat, where);
  u.sigma2 = get_number(obj, "sigma2", defaults.sigma2, where);
  u.target_rate = get_number(obj, "target_rate", defaults.target_rate, where);
  u.epsilon = get_number(obj, "epsilon", defaults.epsilon, where);
  u.noise_power_w = get_noise(obj, defaults.noise_power_w, where);
  return u;
}

}  // namespace

Scenario default_scenario() {
  Scenario s;
  s.config.default_noise_power_w = channel::dbm_to_watts(-94.0);
  s.user_defaults.noise_power_w = s.config.default_noise_power_w;
  return s;
}

Scenario load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  json root;
  try {
    root = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config parse error in " + path + ": " + e.what());
  }
  if (!root.is_object())
    throw ConfigError("config root in " + path + " must be an object");

  Scenario s = default_scenario();
  check_keys(root,
             {"scenario", "users", "num_random_users", "user_defaults",
              "pso"},
             "config root");

  if (root.contains("scenario")) {
    const auto& sc = root.at("scenario");
    if (!sc.is_object()) throw ConfigError("'scenario' must be an object");
    check_keys(sc,
               {"waveguide_length_m", "waveguide_height_m",
                "carrier_freq_hz", "bandwidth_hz", "region_x", "region_y",
                "noise_dbm", "noise_power_w"},
               "scenario");
    auto& c = s.config;
    c.waveguide_length_m =
        get_number(sc, "waveguide_length_m", c.waveguide_length_m, "scenario");
    c.waveguide_height_m =
        get_number(sc, "waveguide_height_m", c.waveguide_height_m, "scenario");
    c.carrier_freq_hz =
        get_number(sc, "carrier_freq_hz", c.carrier_freq_hz, "scenario");
    c.bandwidth_hz = get_number(sc, "bandwidth_hz", c.bandwidth_hz, "scenario");
    c.region_x = get_interval(sc, "region_x", c.region_x, "scenario");
    c.region_y = get_interval(sc, "region_y", c.region_y, "scenario");
    c.default_noise_power_w =
        get_noise(sc, c.default_noise_power_w, "scenario");
    s.user_defaults.noise_power_w = c.default_noise_power_w;
  }

  if (root.contains("user_defaults")) {
    const auto& ud = root.at("user_defaults");
    if (!ud.is_object())
      throw ConfigError("'user_defaults' must be an object");
    s.user_defaults = parse_user(ud, s.user_defaults, "user_defaults");
  }

  if (root.contains("users")) {
    const auto& arr = root.at("users");
    if (!arr.is_array()) throw ConfigError("'users' must be an array");
    for (const auto& u : arr) {
      if (!u.is_object())
        throw ConfigError("entries of 'users' must be objects");
      s.users.push_back(parse_user(u, s.user_defaults, "users[]"));
    }
  }

  s.num_random_users = static_cast<int>(get_integer(
      root, "num_random_users", s.num_random_users, "config root"));

  if (root.contains("pso")) {
    const auto& pj = root.at("pso");
    if (!pj.is_object()) throw ConfigError("'pso' must be an object");
    check_keys(pj,
               {"swarm_size", "max_iters", "inertia", "cognitive_coeff",
                "social_coeff", "stall_tolerance_w", "stall_iters"},
               "pso");
    auto& p = s.pso;
    p.swarm_size =
        static_cast<int>(get_integer(pj, "swarm_size", p.swarm_size, "pso"));
    p.max_iters =
        static_cast<int>(get_integer(pj, "max_iters", p.max_iters, "pso"));
    p.inertia = get_number(pj, "inertia", p.inertia, "pso");
    p.cognitive_coeff =
        get_number(pj, "cognitive_coeff", p.cognitive_coeff, "pso");
    p.social_coeff = get_number(pj, "social_coeff", p.social_coeff, "pso");
    p.stall_tolerance_w =
        get_number(pj, "stall_tolerance_w", p.stall_tolerance_w, "pso");
    p.stall_iters =
        static_cast<int>(get_integer(pj, "stall_iters", p.stall_iters, "pso"));
  }

  return s;
}

std::vector<channel::UserSpec> draw_users(const Scenario& scenario,
                                          std::uint64_t seed,
                                          std::uint64_t trial) {
  if (!scenario.users.empty()) return scenario.users;
  if (scenario.num_random_users < 1)
    throw std::invalid_argument(
        "draw_users: need explicit users or num_random_users >= 1");

  montecarlo::RandomStream rng(seed, kUserDrawStream + trial);
  const auto& rx = scenario.config.region_x;
  const auto& ry = scenario.config.region_y;
  std::vector<channel::UserSpec> users;
  users.reserve(static_cast<std::size_t>(scenario.num_random_users));
  for (int i = 0; i < scenario.num_random_users; ++i) {
    channel::UserSpec u = scenario.user_defaults;
    u.x_hat = rx.lo + rng.uniform() * (rx.hi - rx.lo);
    u.y_hat = ry.lo + rng.uniform() * (ry.hi - ry.lo);
    users.push_back(u);
  }
  return users;
}

const char* sweep_variable_name(SweepVariable v) {
  switch (v) {
    case SweepVariable::target_rate:
      return "target_rate";
    case SweepVariable::epsilon:
      return "epsilon";
    case SweepVariable::sigma:
      return "sigma";
  }
  return "unknown";
}

void SweepSpec::validate() const {
  if (values.empty())
    throw std::invalid_argument("SweepSpec: values must be non-empty");
  for (std::size_t i = 0; i + 1 < values.size(); ++i)
    if (!(values[i] < values[i + 1]))
      throw std::invalid_argument(
          "SweepSpec: values must be strictly increasing");
  for (double v : values)
    if (!std::isfinite(v))
      throw std::invalid_argument("SweepSpec: values must be finite");
  if (scenario_trials < 1)
    throw std::invalid_argument("SweepSpec: scenario_trials must be >= 1");
  if (methods.empty())
    throw std::invalid_argument("SweepSpec: methods must be non-empty");
  if (!std::isfinite(grid_step_m) || grid_step_m <= 0.0)
    throw std::invalid_argument("SweepSpec: grid step must be positive");
}

namespace {

void apply_variable(SweepVariable var, double value,
                    std::vector<channel::UserSpec>& users) {
  for (auto& u : users) {
    switch (var) {
      case SweepVariable::target_rate:
        u.target_rate = value;
        break;
      case SweepVariable::epsilon:
        u.epsilon = value;
        break;
      case SweepVariable::sigma:
        u.sigma2 = value * value;
        break;
    }
  }
}

}  // namespace

std::vector<SweepRow> run_sweep_rows(const Scenario& scenario,
                                     const SweepSpec& spec) {
  spec.validate();
  scenario.config.validate();

  const int trials = spec.scenario_trials;
  std::vector<std::vector<channel::UserSpec>> trial_users;
  std::vector<std::uint64_t> pso_seeds;
  trial_users.reserve(static_cast<std::size_t>(trials));
  pso_seeds.reserve(static_cast<std::size_t>(trials));
  for (int t = 0; t < trials; ++t) {
    trial_users.push_back(
        draw_users(scenario, spec.seed, static_cast<std::uint64_t>(t)));
    pso_seeds.push_back(montecarlo::derive_stream_seed(
        spec.seed, kPsoSeedStream + static_cast<std::uint64_t>(t)));
  }

  std::vector<SweepRow> rows;
  rows.reserve(spec.values.size() * spec.methods.size());
  for (double value : spec.values) {
    for (placement::Method method : spec.methods) {
      double sum_ee = 0.0;
      double sum_power = 0.0;
      for (int t = 0; t < trials; ++t) {
        std::vector<channel::UserSpec> users = trial_users[t];
        apply_variable(spec.variable, value, users);

        placement::PlacementOutcome outcome;
        switch (method) {
          case placement::Method::pso: {
            placement::PsoConfig pso = scenario.pso;
            pso.seed = pso_seeds[t];
            outcome = placement::optimize_pso(users, scenario.config, pso);
            break;
          }
          case placement::Method::exhaustive:
            outcome = placement::optimize_exhaustive(users, scenario.config,
                                                     spec.grid_step_m);
            break;
          case placement::Method::fixed:
            outcome = placement::fixed_baseline(users, scenario.config);
            break;
        }
        sum_ee += outcome.allocation.energy_efficiency;
        sum_power += outcome.allocation.total_power_w;
      }
      rows.push_back({value, method, sum_ee / trials, sum_power / trials,
                      trials});
    }
  }
  return rows;
}

void write_sweep_csv(std::ostream& os, const SweepSpec& spec,
                     const std::vector<SweepRow>& rows, double ee_scale,
                     bool include_timestamp) {
  if (include_timestamp) os << "# generated " << iso8601_utc_now() << "\n";
  os << "variable,value,method,mean_ee,mean_total_power_w,scenario_trials,"
        "seed\n";
  for (const auto& r : rows)
    os << sweep_variable_name(spec.variable) << ',' << fmt_double(r.value)
       << ',' << placement::method_name(r.method) << ','
       << fmt_double(r.mean_ee * ee_scale) << ','
       << fmt_double(r.mean_total_power_w) << ',' << r.scenario_trials << ','
       << spec.seed << "\n";
}

int run_validate(bool full, std::uint64_t seed, bool perturb_rmin,
                 std::ostream& out) {
  const long trials = full ? 1000000 : 100000;
  bool all_pass = true;
  const auto report = [&](const char* name, bool pass,
                          const std::string& detail) {
    out << (pass ? "PASS " : "FAIL ") << name << ": " << detail << "\n";
    all_pass = all_pass && pass;
  };

  // Closed form vs quadrature of the defining integral.
  {
    const int n = full ? 20 : 8;
    double worst = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const double a = 10.0 * i / (n - 1);
        const double b = 10.0 * j / (n - 1);
        worst = std::max(worst, std::fabs(specfun::marcum_q1(a, b) -
                                          oracle::marcum_q1(a, b)));
      }
    report("marcum-q1 quadrature agreement", worst <= 1e-9,
           "max deviation " + fmt_double(worst) + " on " +
               std::to_string(n) + "x" + std::to_string(n) +
               " grid (tol 1e-9)");
  }

  // CDF identity against the same Marcum evaluations.
  {
    double worst = 0.0;
    for (int i = 0; i <= 10; ++i)
      for (int j = 0; j <= 10; ++j) {
        const double x = 10.0 * i;
        const double lam = 10.0 * j;
        const double s = specfun::noncentral_chi2_cdf_2dof(x, lam) +
                         specfun::marcum_q1(std::sqrt(lam), std::sqrt(x));
        worst = std::max(worst, std::fabs(s - 1.0));
      }
    report("noncentral-chi2 complement identity", worst <= 1e-12,
           "max |F + Q1 - 1| = " + fmt_double(worst) + " (tol 1e-12)");
  }

  // Radius inversion round trip.
  {
    montecarlo::RandomStream rng(seed, kValidateStream);
    double worst_cov = 0.0;
    double worst_q = 0.0;
    for (int i = 0; i < 50; ++i) {
      const specfun::CoverageProblem p{rng.uniform() * 120.0,
                                       0.3 + rng.uniform() * 2.7,
                                       0.001 + rng.uniform() * 0.2};
      const double r = specfun::solve_r_min(p);
      worst_cov = std::max(
          worst_cov, std::fabs(specfun::coverage_probability(p, r) -
                               (1.0 - p.epsilon)));
      worst_q = std::max(
          worst_q, std::fabs(specfun::marcum_q1(p.l / p.sigma, r / p.sigma) -
                             p.epsilon));
    }
    report("r_min inversion round trip", worst_cov <= 1e-9 && worst_q <= 1e-10,
           "max coverage deviation " + fmt_double(worst_cov) +
               ", max residual " + fmt_double(worst_q));
  }

  // Monte Carlo coverage vs the analytic circle probability.
  {
    montecarlo::RandomStream rng(seed, kValidateStream + 1);
    bool pass = true;
    double worst_z = 0.0;
    for (int i = 0; i < 5; ++i) {
      const double sigma = 0.5 + rng.uniform() * 2.5;
      const double l = rng.uniform() * 10.0 * sigma;
      const double cov_target = 0.2 + rng.uniform() * 0.78;
      const specfun::CoverageProblem p{l, sigma, 1.0 - cov_target};
      const double r = specfun::solve_r_min(p);
      const double analytic = specfun::coverage_probability(p, r);
      const double se =
          std::sqrt(analytic * (1.0 - analytic) / static_cast<double>(trials));
      const double emp = montecarlo::estimate_coverage(
          l, sigma, r, trials, montecarlo::derive_stream_seed(
                                   seed, kValidateStream + 10 + i));
      const double z = std::fabs(emp - analytic) / se;
      worst_z = std::max(worst_z, z);
      pass = pass && z <= 3.0;
    }
    report("Monte Carlo coverage agreement", pass,
           "max |z| = " + fmt_double(worst_z) + " over 5 cases (limit 3)");
  }

  // Outage calibration at the solved minimum power. The perturbation hook
  // shrinks the radius by 1% before converting to power, which must push
  // the empirical outage outside the 3-SE band.
  {
    montecarlo::RandomStream rng(seed, kValidateStream + 2);
    const Scenario scn = default_scenario();
    bool pass = true;
    double worst_z = 0.0;
    for (int i = 0; i < 3; ++i) {
      channel::UserSpec user = scn.user_defaults;
      user.x_hat = rng.uniform() * 120.0;
      user.y_hat = -10.0 + rng.uniform() * 20.0;
      const channel::AntennaPosition ant{rng.uniform() * 50.0};
      const auto alloc =
          allocation::min_power_user(user, ant, scn.config);
      const double r_used = alloc.r_min * (perturb_rmin ? 0.99 : 1.0);
      const double d = scn.config.waveguide_height_m;
      const double power = (std::exp2(user.target_rate) - 1.0) *
                           (r_used * r_used + d * d) * user.noise_power_w /
                           channel::eta(scn.config.carrier_freq_hz);
      const auto rep = montecarlo::estimate_outage(
          user, ant, power, scn.config, trials,
          montecarlo::derive_stream_seed(seed, kValidateStream + 20 + i));
      const double se = std::max(rep.standard_error, 1e-12);
      const double z = std::fabs(rep.empirical_outage - user.epsilon) / se;
      worst_z = std::max(worst_z, z);
      pass = pass && rep.pass_3se;
    }
    report("outage calibration at p_min", pass,
           "max |z| = " + fmt_double(worst_z) + " over 3 users (limit 3)" +
               (perturb_rmin ? " [r_min perturbed by 0.99]" : ""));
  }

  out << (all_pass ? "validation passed" : "validation FAILED") << "\n";
  return all_pass ? kExitOk : kExitValidationFailure;
}

namespace {

std::vector<placement::Method> parse_methods(const std::string& csv) {
  std::vector<placement::Method> methods;
  std::stringstream ss(csv);
  std::string token;
  while (std::getline(ss, token, ',')) {
    if (token == "pso")
      methods.push_back(placement::Method::pso);
    else if (token == "exhaustive")
      methods.push_back(placement::Method::exhaustive);
    else if (token == "fixed")
      methods.push_back(placement::Method::fixed);
    else
      throw ConfigError("unknown method '" + token +
                        "' (expected pso, exhaustive, fixed)");
  }
  if (methods.empty()) throw ConfigError("--methods list is empty");
  return methods;
}

std::vector<double> parse_values(const std::string& csv) {
  std::vector<double> values;
  std::stringstream ss(csv);
  std::string token;
  while (std::getline(ss, token, ',')) {
    try {
      std::size_t used = 0;
      const double v = std::stod(token, &used);
      if (used != token.size()) throw std::invalid_argument(token);
      values.push_back(v);
    } catch (const std::exception&) {
      throw ConfigError("cannot parse value '" + token + "' in --values");
    }
  }
  if (values.empty()) throw ConfigError("--values list is empty");
  return values;
}

SweepVariable parse_variable(const std::string& name) {
  if (name == "target_rate" || name == "rate")
    return SweepVariable::target_rate;
  if (name == "epsilon") return SweepVariable::epsilon;
  if (name == "sigma") return SweepVariable::sigma;
  throw ConfigError("unknown sweep variable '" + name +
                    "' (expected target_rate, epsilon, sigma)");
}

std::vector<double> default_values(SweepVariable v) {
  switch (v) {
    case SweepVariable::target_rate:
      return {2.0, 2.5, 3.0, 3.5, 4.0, 4.5, 5.0};
    case SweepVariable::epsilon:
      return {0.005, 0.01, 0.02, 0.05, 0.1};
    case SweepVariable::sigma:
      return {0.5, 1.0, 1.5, 2.0, 2.5, 3.0};
  }
  return {};
}

json outcome_to_json(const placement::PlacementOutcome& o, double ee_scale) {
  json per_user = json::array();
  for (const auto& u : o.allocation.per_user)
    per_user.push_back({{"l_m", u.l},
                        {"r_min_m", u.r_min},
                        {"p_min_w", u.p_min}});
  json j{{"x_pin_m", o.allocation.antenna.x_pin},
         {"total_power_w", o.allocation.total_power_w},
         {"effective_sum_rate", o.allocation.effective_sum_rate},
         {"evaluations", o.evaluations},
         {"converged", o.converged},
         {"per_user", per_user}};
  if (o.allocation.ee_defined)
    j["energy_efficiency"] = o.allocation.energy_efficiency * ee_scale;
  else
    j["energy_efficiency"] = nullptr;
  return j;
}

struct CommonOptions {
  std::string config_path;
  std::uint64_t seed = 1;
  std::string methods_csv = "pso,exhaustive,fixed";
  double grid_step = 0.01;
  std::string out_path;
  bool bits_per_joule = false;
};

int run_solve_cmd(const CommonOptions& opt, std::ostream& out,
                  std::ostream& err) {
  const Scenario scn = opt.config_path.empty()
                           ? default_scenario()
                           : load_config(opt.config_path);
  const auto methods = parse_methods(opt.methods_csv);
  const auto users = draw_users(scn, opt.seed, 0);
  const double ee_scale = opt.bits_per_joule ? scn.config.bandwidth_hz : 1.0;
  const char* ee_unit = opt.bits_per_joule ? "bit/J" : "(bit/s/Hz)/W";

  json record{{"seed", opt.seed}, {"ee_unit", ee_unit}};
  json methods_json;
  for (placement::Method m : methods) {
    placement::PlacementOutcome o;
    switch (m) {
      case placement::Method::pso: {
        placement::PsoConfig pso = scn.pso;
        pso.seed = montecarlo::derive_stream_seed(opt.seed, kPsoSeedStream);
        o = placement::optimize_pso(users, scn.config, pso);
        break;
      }
      case placement::Method::exhaustive:
        o = placement::optimize_exhaustive(users, scn.config, opt.grid_step);
        break;
      case placement::Method::fixed:
        o = placement::fixed_baseline(users, scn.config);
        break;
    }
    out << "method " << placement::method_name(m)
        << ": x_pin = " << fmt_double(o.allocation.antenna.x_pin)
        << " m, total power = " << fmt_double(o.allocation.total_power_w)
        << " W, EE = "
        << (o.allocation.ee_defined
                ? fmt_double(o.allocation.energy_efficiency * ee_scale)
                : std::string("undefined"))
        << ' ' << ee_unit << ", evaluations = " << o.evaluations
        << (o.converged ? "" : " (not converged)") << "\n";
    for (std::size_t i = 0; i < o.allocation.per_user.size(); ++i) {
      const auto& u = o.allocation.per_user[i];
      out << "  user " << i << ": l = " << fmt_double(u.l)
          << " m, r_min = " << fmt_double(u.r_min)
          << " m, p_min = " << fmt_double(u.p_min) << " W\n";
    }
    methods_json[placement::method_name(m)] = outcome_to_json(o, ee_scale);
  }
  record["methods"] = methods_json;

  const std::string path =
      opt.out_path.empty() ? "solve_result.json" : opt.out_path;
  std::ofstream of(path);
  if (!of) {
    err << "cannot write result record: " << path << "\n";
    return kExitConfigError;
  }
  of << record.dump(2) << "\n";
  out << "result record written to " << path << "\n";
  return kExitOk;
}

int run_sweep_cmd(const CommonOptions& opt, const std::string& variable,
                  const std::string& values_csv, long trials, bool gnuplot,
                  std::ostream& out, std::ostream& err) {
  const Scenario scn = opt.config_path.empty()
                           ? default_scenario()
                           : load_config(opt.config_path);
  SweepSpec spec;
  spec.variable = parse_variable(variable);
  spec.values = values_csv.empty() ? default_values(spec.variable)
                                   : parse_values(values_csv);
  spec.scenario_trials = static_cast<int>(trials);
  spec.seed = opt.seed;
  spec.methods = parse_methods(opt.methods_csv);
  spec.grid_step_m = opt.grid_step;

  const auto rows = run_sweep_rows(scn, spec);
  const double ee_scale = opt.bits_per_joule ? scn.config.bandwidth_hz : 1.0;

  const std::string path =
      opt.out_path.empty()
          ? std::string("sweep_") + sweep_variable_name(spec.variable) +
                ".csv"
          : opt.out_path;
  std::ofstream of(path);
  if (!of) {
    err << "cannot write sweep output: " << path << "\n";
    return kExitConfigError;
  }
  write_sweep_csv(of, spec, rows, ee_scale, true);
  out << "sweep written to " << path << " (" << rows.size() << " rows)\n";

  if (gnuplot) {
    const std::string gp_path = path + ".gp";
    std::ofstream gf(gp_path);
    if (!gf) {
      err << "cannot write gnuplot block: " << gp_path << "\n";
      return kExitConfigError;
    }
    for (placement::Method m : spec.methods) {
      gf << "# method " << placement::method_name(m) << "\n";
      for (const auto& r : rows)
        if (r.method == m)
          gf << fmt_double(r.value) << ' ' << fmt_double(r.mean_ee * ee_scale)
             << "\n";
      gf << "\n";
    }
    out << "gnuplot block written to " << gp_path << "\n";
  }
  return kExitOk;
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out,
             std::ostream& err) {
  CLI::App app{"robust power allocation and pinching-antenna placement"};
  app.require_subcommand(1);

  CommonOptions solve_opt;
  auto* solve = app.add_subcommand(
      "solve", "optimize placement and power for one scenario");
  solve->add_option("--config", solve_opt.config_path,
                    "JSON scenario config path");
  solve->add_option("--seed", solve_opt.seed, "base RNG seed");
  solve->add_option("--methods", solve_opt.methods_csv,
                    "comma list from {pso,exhaustive,fixed}");
  solve->add_option("--grid-step", solve_opt.grid_step,
                    "exhaustive grid step in meters");
  solve->add_option("--out", solve_opt.out_path,
                    "result record path (default solve_result.json)");
  solve->add_flag("--bits-per-joule", solve_opt.bits_per_joule,
                  "scale EE by the bandwidth (bit/J)");

  CommonOptions sweep_opt;
  std::string sweep_variable = "target_rate";
  std::string sweep_values;
  long sweep_trials = 100;
  bool sweep_gnuplot = false;
  auto* sweep =
      app.add_subcommand("sweep", "paired parameter sweep, CSV output");
  sweep->add_option("--config", sweep_opt.config_path,
                    "JSON scenario config path");
  sweep->add_option("--variable", sweep_variable,
                    "swept variable: target_rate (rate), epsilon, sigma");
  sweep->add_option("--values", sweep_values,
                    "comma list of sweep values (default per variable)");
  sweep->add_option("--trials", sweep_trials, "scenario trials per point");
  sweep->add_option("--seed", sweep_opt.seed, "base RNG seed");
  sweep->add_option("--methods", sweep_opt.methods_csv,
                    "comma list from {pso,exhaustive,fixed}");
  sweep->add_option("--grid-step", sweep_opt.grid_step,
                    "exhaustive grid step in meters");
  sweep->add_option("--out", sweep_opt.out_path,
                    "CSV path (default sweep_<variable>.csv)");
  sweep->add_flag("--bits-per-joule", sweep_opt.bits_per_joule,
                  "scale EE by the bandwidth (bit/J)");
  sweep->add_flag("--gnuplot", sweep_gnuplot,
                  "also emit a gnuplot-compatible data block");

  std::string validate_level = "quick";
  std::uint64_t validate_seed = 1;
  bool perturb_rmin = false;
  auto* validate =
      app.add_subcommand("validate", "run the self-consistency suite");
  validate->add_option("--level", validate_level, "quick or full")
      ->check(CLI::IsMember({"quick", "full"}));
  validate->add_option("--seed", validate_seed, "base RNG seed");
  validate->add_flag("--perturb-rmin", perturb_rmin)->group("");

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("pinchopt");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfigError;
  }

  try {
    if (solve->parsed()) return run_solve_cmd(solve_opt, out, err);
    if (sweep->parsed())
      return run_sweep_cmd(sweep_opt, sweep_variable, sweep_values,
                           sweep_trials, sweep_gnuplot, out, err);
    return run_validate(validate_level == "full", validate_seed, perturb_rmin,
                        out);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const std::invalid_argument& e) {
    err << "infeasible parameter: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const std::domain_error& e) {
    err << "infeasible parameter: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace pinchopt::cli
