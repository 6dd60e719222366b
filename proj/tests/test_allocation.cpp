// Copyright 2026 The pinchopt Authors
// SPDX-License-Identifier: Apache-2.0

#include "pinchopt/allocation.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include <doctest.h>

#include "pinchopt/channel.hpp"
#include "pinchopt/specfun.hpp"

namespace alloc = pinchopt::allocation;
namespace ch = pinchopt::channel;

namespace {

ch::UserSpec user_at(double x, double y) {
  ch::UserSpec u;
  u.x_hat = x;
  u.y_hat = y;
  return u;
}

}  // namespace

TEST_CASE("distance_l is the planar distance to the estimate") {
  CHECK(alloc::distance_l(user_at(3.0, 4.0), {0.0}) == 5.0);
  CHECK(alloc::distance_l(user_at(0.0, 0.0), {0.0}) == 0.0);
  CHECK(alloc::distance_l(user_at(120.0, 10.0), {50.0}) ==
        doctest::Approx(70.71067811865475244).epsilon(1e-15));  // sqrt(5000)
  // Symmetric in the x offset.
  CHECK(alloc::distance_l(user_at(10.0, 2.0), {30.0}) ==
        alloc::distance_l(user_at(50.0, 2.0), {30.0}));
}

TEST_CASE("min_power_user matches the l = 0 frozen reference") {
  // sigma = 1, eps = 0.01, rate = 3, d = 3, f = 28 GHz, noise -94 dBm.
  ch::ScenarioConfig cfg;
  const auto a = alloc::min_power_user(user_at(0.0, 0.0), {0.0}, cfg);
  CHECK(a.l == 0.0);
  CHECK(a.r_min == doctest::Approx(3.0348542587702927017).epsilon(1e-9));
  CHECK(a.p_min ==
        doctest::Approx(6.9905361870939813901e-5).epsilon(1e-9));
}

TEST_CASE("zero target rate needs zero power") {
  ch::ScenarioConfig cfg;
  ch::UserSpec u = user_at(5.0, 5.0);
  u.target_rate = 0.0;
  const auto a = alloc::min_power_user(u, {0.0}, cfg);
  CHECK(a.p_min == 0.0);
  CHECK(a.r_min > 0.0);  // the coverage circle exists regardless
}

TEST_CASE("min_power_user grows with sigma, rate, and distance") {
  ch::ScenarioConfig cfg;
  double prev = 0.0;
  for (double s2 : {0.25, 1.0, 4.0, 9.0}) {
    ch::UserSpec u = user_at(20.0, 5.0);
    u.sigma2 = s2;
    const double p = alloc::min_power_user(u, {0.0}, cfg).p_min;
    CHECK(p > prev);
    prev = p;
  }
  prev = 0.0;
  for (double rate : {1.0, 2.0, 3.0, 6.0}) {
    ch::UserSpec u = user_at(20.0, 5.0);
    u.target_rate = rate;
    const double p = alloc::min_power_user(u, {0.0}, cfg).p_min;
    CHECK(p > prev);
    prev = p;
  }
  prev = 0.0;
  for (double x : {1.0, 15.0, 60.0, 118.0}) {
    const double p =
        alloc::min_power_user(user_at(x, 0.0), {0.0}, cfg).p_min;
    CHECK(p > prev);
    prev = p;
  }
}

TEST_CASE("the coverage circle radius meets the outage budget") {
  ch::ScenarioConfig cfg;
  const ch::UserSpec u = user_at(35.0, -7.0);
  const auto a = alloc::min_power_user(u, {12.0}, cfg);
  const double nu = a.l / std::sqrt(u.sigma2);
  const double q = pinchopt::specfun::marcum_q1(nu, a.r_min);
  CHECK(std::fabs(q - u.epsilon) <= 1e-10);
  // And the rate at the circle edge is exactly the target (power solves
  // the boundary equation).
  const double rate_at_edge = ch::achievable_rate(
      {12.0 + a.r_min, 0.0}, {12.0}, cfg.waveguide_height_m, a.p_min,
      u.noise_power_w, cfg.carrier_freq_hz);
  CHECK(rate_at_edge == doctest::Approx(u.target_rate).epsilon(1e-12));
}

TEST_CASE("min_power_user rejects an antenna outside the waveguide") {
  ch::ScenarioConfig cfg;
  CHECK_THROWS_AS(
      (void)alloc::min_power_user(user_at(0, 0), {-0.5}, cfg),
      std::invalid_argument);
  CHECK_THROWS_AS(
      (void)alloc::min_power_user(user_at(0, 0), {50.1}, cfg),
      std::invalid_argument);
  CHECK_NOTHROW((void)alloc::min_power_user(user_at(0, 0), {50.0}, cfg));
}

TEST_CASE("total_power decomposes into ordered per-user sums") {
  ch::ScenarioConfig cfg;
  const std::vector<ch::UserSpec> users = {
      user_at(5.0, 2.0), user_at(48.0, -9.0), user_at(100.0, 4.0)};
  const auto res = alloc::total_power(users, {25.0}, cfg);
  REQUIRE(res.per_user.size() == 3);

  double acc = 0.0;
  double eff = 0.0;
  for (std::size_t i = 0; i < users.size(); ++i) {
    const auto single = alloc::min_power_user(users[i], {25.0}, cfg);
    CHECK(res.per_user[i].l == single.l);
    CHECK(res.per_user[i].r_min == single.r_min);
    CHECK(res.per_user[i].p_min == single.p_min);
    acc += single.p_min;
    eff += (1.0 - users[i].epsilon) * users[i].target_rate;
  }
  CHECK(res.total_power_w == acc);  // same accumulation order, bit for bit
  CHECK(res.effective_sum_rate == eff);
  CHECK(res.ee_defined);
  CHECK(res.energy_efficiency == eff / acc);
  CHECK(alloc::energy_efficiency(res) == res.energy_efficiency);
}

TEST_CASE("energy efficiency is undefined at zero total power") {
  ch::ScenarioConfig cfg;
  ch::UserSpec u = user_at(10.0, 0.0);
  u.target_rate = 0.0;
  const auto res = alloc::total_power(std::vector{u, u}, {0.0}, cfg);
  CHECK(res.total_power_w == 0.0);
  CHECK_FALSE(res.ee_defined);
  CHECK(std::isnan(res.energy_efficiency));
  CHECK_THROWS_AS((void)alloc::energy_efficiency(res), std::domain_error);
}

TEST_CASE("duplicating every user leaves energy efficiency unchanged") {
  ch::ScenarioConfig cfg;
  const std::vector<ch::UserSpec> users = {user_at(9.0, 1.0),
                                           user_at(33.0, -6.0)};
  std::vector<ch::UserSpec> doubled = users;
  doubled.insert(doubled.end(), users.begin(), users.end());
  const auto res1 = alloc::total_power(users, {20.0}, cfg);
  const auto res2 = alloc::total_power(doubled, {20.0}, cfg);
  CHECK(res2.total_power_w == doctest::Approx(2.0 * res1.total_power_w)
                                  .epsilon(1e-15));
  CHECK(res2.energy_efficiency ==
        doctest::Approx(res1.energy_efficiency).epsilon(1e-15));
}

TEST_CASE("total_power rejects an empty user list") {
  ch::ScenarioConfig cfg;
  CHECK_THROWS_AS(
      (void)alloc::total_power(std::vector<ch::UserSpec>{}, {0.0}, cfg),
      std::invalid_argument);
}
