// Copyright 2026 The pinchopt Authors
// SPDX-License-Identifier: Apache-2.0

#include "pinchopt/allocation.hpp"

#include <cmath>
#include <stdexcept>

#include "pinchopt/specfun.hpp"

namespace pinchopt::allocation {

double distance_l(const channel::UserSpec& user,
                  const channel::AntennaPosition& ant) {
  return std::hypot(user.x_hat - ant.x_pin, user.y_hat);
}

UserAllocation min_power_user(const channel::UserSpec& user,
                              const channel::AntennaPosition& ant,
                              const channel::ScenarioConfig& cfg) {
  user.validate();
  cfg.validate();
  if (!std::isfinite(ant.x_pin) || ant.x_pin < 0.0 ||
      ant.x_pin > cfg.waveguide_length_m)
    throw std::invalid_argument(
        "min_power_user: antenna position outside [0, L]");

  const double l = distance_l(user, ant);
  const double r = specfun::solve_r_min(
      {l, std::sqrt(user.sigma2), user.epsilon});
  const double d = cfg.waveguide_height_m;
  // Rate at the circle edge equals the target exactly at this power; the
  // factor 2^rate - 1 is zero for rate 0, so idle users cost nothing.
  const double p = (std::exp2(user.target_rate) - 1.0) * (r * r + d * d) *
                   user.noise_power_w / channel::eta(cfg.carrier_freq_hz);
  return {l, r, p};
}

AllocationResult total_power(std::span<const channel::UserSpec> users,
                             const channel::AntennaPosition& ant,
                             const channel::ScenarioConfig& cfg) {
  if (users.empty())
    throw std::invalid_argument("total_power: need at least one user");

  AllocationResult out;
  out.antenna = ant;
  out.per_user.reserve(users.size());
  double total = 0.0;
  double effective = 0.0;
  for (const auto& user : users) {
    out.per_user.push_back(min_power_user(user, ant, cfg));
    total += out.per_user.back().p_min;
    effective += (1.0 - user.epsilon) * user.target_rate;
  }
  out.total_power_w = total;
  out.effective_sum_rate = effective;
  out.ee_defined = total > 0.0;
  if (out.ee_defined) out.energy_efficiency = effective / total;
  return out;
}

double energy_efficiency(const AllocationResult& result) {
  if (!(result.total_power_w > 0.0))
    throw std::domain_error(
        "energy_efficiency: undefined at zero total power");
  return result.effective_sum_rate / result.total_power_w;
}

}  // namespace pinchopt::allocation
