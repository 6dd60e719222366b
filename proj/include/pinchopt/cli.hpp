// Copyright 2026 The pinchopt Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "pinchopt/channel.hpp"
#include "pinchopt/placement.hpp"

namespace pinchopt::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitInfeasible = 3;
inline constexpr int kExitValidationFailure = 4;

// Structural problems with a config file or flag value (unparseable JSON,
// unknown key, wrong type). Range violations surface separately as
// std::invalid_argument and map to kExitInfeasible.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A complete problem instance: either an explicit user list, or
// num_random_users drawn uniformly from the deployment region using
// user_defaults as the template.
struct Scenario {
  channel::ScenarioConfig config;
  std::vector<channel::UserSpec> users;  // empty -> draw random users
  int num_random_users = 5;
  channel::UserSpec user_defaults;
  placement::PsoConfig pso;
};

Scenario default_scenario();

// Loads a JSON scenario description, strict about keys and types. Values
// not present fall back to the defaults above.
Scenario load_config(const std::string& path);

// The user set of one scenario trial. Explicit users are returned as-is;
// random users are redrawn per trial from a (seed, trial)-derived stream,
// so a trial's draw is identical across sweep values and methods.
std::vector<channel::UserSpec> draw_users(const Scenario& scenario,
                                          std::uint64_t seed,
                                          std::uint64_t trial);

enum class SweepVariable { target_rate, epsilon, sigma };

const char* sweep_variable_name(SweepVariable v);

struct SweepSpec {
  SweepVariable variable = SweepVariable::target_rate;
  std::vector<double> values;  // non-empty, strictly increasing
  int scenario_trials = 100;
  std::uint64_t seed = 1;
  std::vector<placement::Method> methods{placement::Method::pso,
                                         placement::Method::exhaustive,
                                         placement::Method::fixed};
  double grid_step_m = 0.01;

  void validate() const;
};

struct SweepRow {
  double value = 0.0;
  placement::Method method = placement::Method::fixed;
  double mean_ee = 0.0;
  double mean_total_power_w = 0.0;
  int scenario_trials = 0;
};

// Runs the paired sweep: per-trial user draws and PSO seeds are shared
// across every (value, method) pair, so rows differ only through the swept
// variable. Row order is by value, then by method, in spec order.
std::vector<SweepRow> run_sweep_rows(const Scenario& scenario,
                                     const SweepSpec& spec);

// CSV with the fixed header
//   variable,value,method,mean_ee,mean_total_power_w,scenario_trials,seed
// preceded, when include_timestamp is set, by a "# generated ..." comment
// line that is excluded from the determinism contract. ee_scale multiplies
// mean_ee on output (bandwidth scaling for bit/J reporting).
void write_sweep_csv(std::ostream& os, const SweepSpec& spec,
                     const std::vector<SweepRow>& rows, double ee_scale,
                     bool include_timestamp);

// Self-check suite: quadrature-oracle agreement, analytic/Monte-Carlo
// coverage agreement, and outage calibration at p_min. perturb_rmin shrinks
// the calibration radius by 1% to prove the check catches miscalibration
// (test hook). Returns kExitOk or kExitValidationFailure.
int run_validate(bool full, std::uint64_t seed, bool perturb_rmin,
                 std::ostream& out);

// Entry point behind the binary: args exclude argv[0]. Exit codes: 0
// success, 2 config error, 3 infeasible parameter, 4 validation failure.
int cli_main(const std::vector<std::string>& args, std::ostream& out,
             std::ostream& err);

}  // namespace pinchopt::cli
