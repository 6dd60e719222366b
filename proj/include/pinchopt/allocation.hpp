// Copyright 2026 The pinchopt Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <limits>
#include <span>
#include <vector>

#include "pinchopt/channel.hpp"

namespace pinchopt::allocation {

// One user's solved outage geometry and power: p_min is the smallest power
// whose rate is at least the target everywhere inside the r_min circle,
// p_min = (2^rate - 1)(r_min^2 + d^2) noise / eta. p_min = 0 iff rate = 0.
struct UserAllocation {
  double l = 0.0;      // meters
  double r_min = 0.0;  // meters
  double p_min = 0.0;  // watts
};

struct AllocationResult {
  channel::AntennaPosition antenna{};
  std::vector<UserAllocation> per_user;
  double total_power_w = 0.0;
  double effective_sum_rate = 0.0;  // sum (1 - eps_n) rate_n, bit/s/Hz
  // NaN with ee_defined = false when total power is zero (all rates zero);
  // never a silent division by zero.
  double energy_efficiency = std::numeric_limits<double>::quiet_NaN();
  bool ee_defined = false;
};

// Horizontal distance from the antenna's ground projection to the estimated
// user location.
double distance_l(const channel::UserSpec& user,
                  const channel::AntennaPosition& ant);

// Solves the user's coverage radius and converts it to the minimum power
// meeting the outage budget at the target rate.
UserAllocation min_power_user(const channel::UserSpec& user,
                              const channel::AntennaPosition& ant,
                              const channel::ScenarioConfig& cfg);

// Per-user problems are independent under a fixed antenna position, so the
// total is the plain sum of single-user solutions, accumulated in user
// order (decomposition is bit-for-bit reproducible).
AllocationResult total_power(std::span<const channel::UserSpec> users,
                             const channel::AntennaPosition& ant,
                             const channel::ScenarioConfig& cfg);

// effective_sum_rate / total_power; throws std::domain_error when total
// power is zero.
double energy_efficiency(const AllocationResult& result);

}  // namespace pinchopt::allocation
