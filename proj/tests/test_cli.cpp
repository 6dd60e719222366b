// Copyright 2026 The pinchopt Authors
// SPDX-License-Identifier: Apache-2.0

#include "pinchopt/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <doctest.h>

#include "pinchopt/channel.hpp"
#include "pinchopt/placement.hpp"

namespace cli = pinchopt::cli;
namespace pl = pinchopt::placement;

namespace {

std::string write_temp(const char* name, const std::string& body) {
  std::string path = std::string("/tmp/pinchopt_test_") + name + ".json";
  std::ofstream of(path);
  of << body;
  return path;
}

int run_cli(const std::vector<std::string>& args, std::string* out_text = nullptr) {
  std::ostringstream out;
  std::ostringstream err;
  const int rc = cli::cli_main(args, out, err);
  if (out_text) *out_text = out.str() + err.str();
  return rc;
}

// Strips '#' comment lines, which carry the generation timestamp.
std::string csv_body(const std::string& csv) {
  std::istringstream in(csv);
  std::string line;
  std::string body;
  while (std::getline(in, line))
    if (line.empty() || line[0] != '#') body += line + "\n";
  return body;
}

}  // namespace

TEST_CASE("default scenario carries the documented baseline parameters") {
  const cli::Scenario s = cli::default_scenario();
  CHECK(s.config.waveguide_length_m == 50.0);
  CHECK(s.config.waveguide_height_m == 3.0);
  CHECK(s.config.carrier_freq_hz == 28e9);
  CHECK(s.config.bandwidth_hz == 100e6);
  CHECK(s.config.region_x.lo == 0.0);
  CHECK(s.config.region_x.hi == 120.0);
  CHECK(s.config.region_y.lo == -10.0);
  CHECK(s.config.region_y.hi == 10.0);
  CHECK(s.config.default_noise_power_w ==
        doctest::Approx(3.9810717055349725e-13).epsilon(1e-15));
  CHECK(s.users.empty());
  CHECK(s.num_random_users == 5);
  CHECK(s.user_defaults.sigma2 == 1.0);
  CHECK(s.user_defaults.target_rate == 3.0);
  CHECK(s.user_defaults.epsilon == 0.01);
  CHECK(s.user_defaults.noise_power_w == s.config.default_noise_power_w);
  CHECK(s.pso.swarm_size == 30);
  CHECK(s.pso.max_iters == 100);
  CHECK(s.pso.inertia == 0.729);
  CHECK(s.pso.cognitive_coeff == 1.49445);
  CHECK(s.pso.social_coeff == 1.49445);
}

TEST_CASE("load_config applies overrides and default inheritance") {
  const std::string path = write_temp("golden", R"({
    "scenario": {
      "waveguide_length_m": 80.0,
      "noise_dbm": -90.0,
      "region_x": [0.0, 60.0]
    },
    "user_defaults": {"target_rate": 2.5, "sigma2": 0.25},
    "users": [
      {"x_hat": 5.0, "y_hat": 1.0},
      {"x_hat": 40.0, "y_hat": -2.0, "epsilon": 0.05}
    ],
    "pso": {"swarm_size": 12, "max_iters": 40}
  })");
  const cli::Scenario s = cli::load_config(path);
  CHECK(s.config.waveguide_length_m == 80.0);
  CHECK(s.config.waveguide_height_m == 3.0);  // untouched default
  CHECK(s.config.region_x.hi == 60.0);
  CHECK(s.config.default_noise_power_w ==
        doctest::Approx(1e-12).epsilon(1e-12));  // -90 dBm
  REQUIRE(s.users.size() == 2);
  CHECK(s.users[0].x_hat == 5.0);
  CHECK(s.users[0].target_rate == 2.5);          // inherited override
  CHECK(s.users[0].sigma2 == 0.25);
  CHECK(s.users[0].epsilon == 0.01);             // untouched default
  CHECK(s.users[0].noise_power_w ==
        s.config.default_noise_power_w);         // follows scenario noise
  CHECK(s.users[1].epsilon == 0.05);
  CHECK(s.pso.swarm_size == 12);
  CHECK(s.pso.max_iters == 40);
  CHECK(s.pso.inertia == 0.729);
  std::remove(path.c_str());
}

TEST_CASE("load_config rejects structural problems") {
  CHECK_THROWS_AS((void)cli::load_config("/nonexistent/config.json"),
                  cli::ConfigError);
  const std::string bad1 = write_temp("syntax", "{ not json");
  CHECK_THROWS_AS((void)cli::load_config(bad1), cli::ConfigError);
  const std::string bad2 =
      write_temp("unknown", R"({"scenario": {"wavelength_m": 50}})");
  CHECK_THROWS_AS((void)cli::load_config(bad2), cli::ConfigError);
  const std::string bad3 =
      write_temp("type", R"({"users": [{"x_hat": "five"}]})");
  CHECK_THROWS_AS((void)cli::load_config(bad3), cli::ConfigError);
  const std::string bad4 = write_temp("users_shape", R"({"users": 3})");
  CHECK_THROWS_AS((void)cli::load_config(bad4), cli::ConfigError);
  for (const auto& p : {bad1, bad2, bad3, bad4}) std::remove(p.c_str());
}

TEST_CASE("draw_users is per-trial deterministic and respects the region") {
  const cli::Scenario s = cli::default_scenario();
  const auto u1 = cli::draw_users(s, 9, 0);
  const auto u2 = cli::draw_users(s, 9, 0);
  const auto u3 = cli::draw_users(s, 9, 1);
  REQUIRE(u1.size() == 5);
  bool differs = false;
  for (std::size_t i = 0; i < 5; ++i) {
    CHECK(u1[i].x_hat == u2[i].x_hat);
    CHECK(u1[i].y_hat == u2[i].y_hat);
    CHECK(u1[i].x_hat >= 0.0);
    CHECK(u1[i].x_hat <= 120.0);
    CHECK(u1[i].y_hat >= -10.0);
    CHECK(u1[i].y_hat <= 10.0);
    if (u1[i].x_hat != u3[i].x_hat) differs = true;
  }
  CHECK(differs);

  // Explicit users bypass the draw entirely.
  cli::Scenario fixed = s;
  pinchopt::channel::UserSpec u;
  u.x_hat = 1.5;
  fixed.users = {u};
  const auto got = cli::draw_users(fixed, 1234, 5);
  REQUIRE(got.size() == 1);
  CHECK(got[0].x_hat == 1.5);
}

TEST_CASE("sweep specs are validated") {
  cli::SweepSpec spec;
  spec.values = {};
  CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
  spec.values = {2.0, 2.0};
  CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
  spec.values = {3.0, 2.0};
  CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
  spec.values = {2.0, 3.0};
  spec.scenario_trials = 0;
  CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
  spec.scenario_trials = 1;
  spec.methods = {};
  CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
  spec.methods = {pl::Method::fixed};
  spec.grid_step_m = 0.0;
  CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
  spec.grid_step_m = 0.01;
  CHECK_NOTHROW(spec.validate());
}

TEST_CASE("sweep variable names are stable tokens") {
  CHECK(std::string(cli::sweep_variable_name(
            cli::SweepVariable::target_rate)) == "target_rate");
  CHECK(std::string(cli::sweep_variable_name(cli::SweepVariable::epsilon)) ==
        "epsilon");
  CHECK(std::string(cli::sweep_variable_name(cli::SweepVariable::sigma)) ==
        "sigma");
}

TEST_CASE("run_sweep_rows pairs trials across values and methods") {
  const cli::Scenario s = cli::default_scenario();
  cli::SweepSpec spec;
  spec.variable = cli::SweepVariable::target_rate;
  spec.values = {2.0, 4.0};
  spec.scenario_trials = 4;
  spec.seed = 17;
  spec.methods = {pl::Method::fixed};

  const auto rows = cli::run_sweep_rows(s, spec);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].value == 2.0);
  CHECK(rows[1].value == 4.0);
  CHECK(rows[0].scenario_trials == 4);

  // The fixed antenna never moves and r_min ignores the rate, so paired
  // trials make the mean power scale exactly by (2^4 - 1) / (2^2 - 1) = 5.
  CHECK(rows[1].mean_total_power_w ==
        doctest::Approx(5.0 * rows[0].mean_total_power_w).epsilon(1e-12));
}

TEST_CASE("run_sweep_rows orders rows value-major in method order") {
  const cli::Scenario s = cli::default_scenario();
  cli::SweepSpec spec;
  spec.variable = cli::SweepVariable::epsilon;
  spec.values = {0.01, 0.05};
  spec.scenario_trials = 2;
  spec.seed = 4;
  spec.methods = {pl::Method::fixed, pl::Method::exhaustive};
  spec.grid_step_m = 1.0;

  const auto rows = cli::run_sweep_rows(s, spec);
  REQUIRE(rows.size() == 4);
  CHECK(rows[0].value == 0.01);
  CHECK(rows[0].method == pl::Method::fixed);
  CHECK(rows[1].value == 0.01);
  CHECK(rows[1].method == pl::Method::exhaustive);
  CHECK(rows[2].value == 0.05);
  CHECK(rows[2].method == pl::Method::fixed);
  CHECK(rows[3].value == 0.05);
  CHECK(rows[3].method == pl::Method::exhaustive);
}

TEST_CASE("write_sweep_csv emits the pinned schema deterministically") {
  const cli::Scenario s = cli::default_scenario();
  cli::SweepSpec spec;
  spec.variable = cli::SweepVariable::sigma;
  spec.values = {0.5, 1.0};
  spec.scenario_trials = 2;
  spec.seed = 8;
  spec.methods = {pl::Method::fixed};
  const auto rows = cli::run_sweep_rows(s, spec);

  std::ostringstream a;
  cli::write_sweep_csv(a, spec, rows, 1.0, false);
  std::ostringstream b;
  cli::write_sweep_csv(b, spec, rows, 1.0, false);
  CHECK(a.str() == b.str());
  CHECK(a.str().rfind(
            "variable,value,method,mean_ee,mean_total_power_w,"
            "scenario_trials,seed\n",
            0) == 0);
  CHECK(a.str().find("sigma,0.5,fixed,") != std::string::npos);

  std::ostringstream c;
  cli::write_sweep_csv(c, spec, rows, 1.0, true);
  CHECK(c.str().rfind("# generated ", 0) == 0);
  CHECK(csv_body(c.str()) == a.str());

  // Bandwidth scaling multiplies only the EE column.
  std::ostringstream d;
  cli::write_sweep_csv(d, spec, rows, 100e6, false);
  CHECK(d.str() != a.str());
}

TEST_CASE("cli_main maps outcomes to exit codes") {
  // Help succeeds.
  std::string text;
  CHECK(run_cli({"--help"}, &text) == 0);
  CHECK(text.find("solve") != std::string::npos);

  // Missing subcommand and parse errors are config errors.
  CHECK(run_cli({}) == 2);
  CHECK(run_cli({"frobnicate"}) == 2);
  CHECK(run_cli({"sweep", "--variable", "voltage"}) == 2);
  CHECK(run_cli({"sweep", "--values", "1,oops"}) == 2);

  // Malformed and structurally bad configs exit 2.
  const std::string bad = write_temp("cli_bad", "{]");
  CHECK(run_cli({"solve", "--config", bad}) == 2);
  std::remove(bad.c_str());

  // Out-of-range domain values exit 3.
  const std::string inf = write_temp(
      "cli_inf", R"({"users": [{"x_hat": 1.0, "epsilon": 1.5}]})");
  CHECK(run_cli({"solve", "--config", inf, "--methods", "fixed"}) == 3);
  std::remove(inf.c_str());

  // A passing quick validation exits 0; the perturbation hook forces 4.
  CHECK(run_cli({"validate", "--level", "quick", "--seed", "2"}) == 0);
  CHECK(run_cli({"validate", "--level", "quick", "--seed", "2",
                 "--perturb-rmin"}) == 4);
}

TEST_CASE("solve subcommand writes a result record") {
  const std::string out_path = "/tmp/pinchopt_test_solve_record.json";
  std::string text;
  const int rc = run_cli({"solve", "--seed", "3", "--methods", "fixed",
                          "--out", out_path},
                         &text);
  CHECK(rc == 0);
  CHECK(text.find("method fixed") != std::string::npos);
  std::ifstream in(out_path);
  REQUIRE(in.good());
  std::stringstream body;
  body << in.rdbuf();
  CHECK(body.str().find("\"total_power_w\"") != std::string::npos);
  CHECK(body.str().find("\"x_pin_m\"") != std::string::npos);
  std::remove(out_path.c_str());
}

TEST_CASE("sweep subcommand round trips through the filesystem") {
  const std::string out_path = "/tmp/pinchopt_test_sweep.csv";
  const int rc =
      run_cli({"sweep", "--variable", "epsilon", "--values", "0.01,0.05",
               "--trials", "2", "--seed", "5", "--methods", "fixed",
               "--out", out_path});
  CHECK(rc == 0);
  std::ifstream in(out_path);
  REQUIRE(in.good());
  std::stringstream body;
  body << in.rdbuf();
  const std::string text = body.str();
  CHECK(text.rfind("# generated ", 0) == 0);
  CHECK(text.find("variable,value,method,mean_ee,mean_total_power_w,"
                  "scenario_trials,seed\n") != std::string::npos);
  CHECK(text.find("epsilon,0.01,fixed,") != std::string::npos);
  CHECK(text.find("epsilon,0.05,fixed,") != std::string::npos);
  std::remove(out_path.c_str());
}
