// Copyright 2026 The pinchopt Authors
// SPDX-License-Identifier: Apache-2.0

#include "pinchopt/placement.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "pinchopt/montecarlo.hpp"

namespace pinchopt::placement {
namespace {

// Scalar objective; same per-user accumulation order as
// allocation::total_power, without building the result record.
double power_at(std::span<const channel::UserSpec> users, double x,
                const channel::ScenarioConfig& cfg) {
  const channel::AntennaPosition ant{x};
  double total = 0.0;
  for (const auto& user : users)
    total += allocation::min_power_user(user, ant, cfg).p_min;
  return total;
}

}  // namespace

void PsoConfig::validate() const {
  if (swarm_size < 2)
    throw std::invalid_argument("PsoConfig: swarm_size must be >= 2");
  if (max_iters < 1)
    throw std::invalid_argument("PsoConfig: max_iters must be >= 1");
  if (!(inertia > 0.0) || !(cognitive_coeff > 0.0) || !(social_coeff > 0.0))
    throw std::invalid_argument("PsoConfig: coefficients must be positive");
  if (!(stall_tolerance_w >= 0.0) || stall_iters < 1)
    throw std::invalid_argument("PsoConfig: invalid stall criterion");
}

const char* method_name(Method m) {
  switch (m) {
    case Method::pso:
      return "pso";
    case Method::exhaustive:
      return "exhaustive";
    case Method::fixed:
      return "fixed";
  }
  return "unknown";
}

PlacementOutcome optimize_pso(std::span<const channel::UserSpec> users,
                              const channel::ScenarioConfig& cfg,
                              const PsoConfig& pso) {
  pso.validate();
  cfg.validate();
  if (users.empty())
    throw std::invalid_argument("optimize_pso: need at least one user");

  const double length = cfg.waveguide_length_m;
  const double vmax = 0.2 * length;
  const int n = pso.swarm_size;

  montecarlo::RandomStream rng(pso.seed, 0);
  std::vector<double> x(n), v(n, 0.0), best_x(n), best_f(n);
  long evaluations = 0;

  for (int i = 0; i < n; ++i) x[i] = rng.uniform() * length;
  for (int i = 0; i < n; ++i) {
    best_f[i] = power_at(users, x[i], cfg);
    best_x[i] = x[i];
    ++evaluations;
  }

  double gbest_x = best_x[0];
  double gbest_f = best_f[0];
  for (int i = 1; i < n; ++i)
    if (best_f[i] < gbest_f) {
      gbest_f = best_f[i];
      gbest_x = best_x[i];
    }

  bool stalled = false;
  int stall_count = 0;
  for (int iter = 0; iter < pso.max_iters; ++iter) {
    const double prev_gbest = gbest_f;

    // Synchronous update: velocities see the global best of the previous
    // iteration; evaluation happens after all positions moved.
    for (int i = 0; i < n; ++i) {
      const double r1 = rng.uniform();
      const double r2 = rng.uniform();
      v[i] = pso.inertia * v[i] +
             pso.cognitive_coeff * r1 * (best_x[i] - x[i]) +
             pso.social_coeff * r2 * (gbest_x - x[i]);
      v[i] = std::clamp(v[i], -vmax, vmax);
      x[i] += v[i];
      // Damped reflection at the walls. Zeroing the velocity instead makes
      // the wall absorbing: once every particle sits on it with pbest and
      // gbest there too, the update is identically zero and an optimum a
      // millimeter inside is never sampled again.
      if (x[i] < 0.0) {
        x[i] = 0.0;
        v[i] *= -0.5;
      } else if (x[i] > length) {
        x[i] = length;
        v[i] *= -0.5;
      }
    }
    for (int i = 0; i < n; ++i) {
      const double f = power_at(users, x[i], cfg);
      ++evaluations;
      if (f < best_f[i]) {
        best_f[i] = f;
        best_x[i] = x[i];
      }
    }
    // Ordered reduction keeps the result independent of how evaluations
    // would be scheduled in parallel.
    for (int i = 0; i < n; ++i)
      if (best_f[i] < gbest_f) {
        gbest_f = best_f[i];
        gbest_x = best_x[i];
      }

    if (prev_gbest - gbest_f < pso.stall_tolerance_w) {
      if (++stall_count >= pso.stall_iters) {
        stalled = true;
        break;
      }
    } else {
      stall_count = 0;
    }
  }

  PlacementOutcome out;
  out.method = Method::pso;
  out.allocation = allocation::total_power(users, {gbest_x}, cfg);
  out.evaluations = evaluations;
  out.converged = stalled;
  return out;
}

PlacementOutcome optimize_exhaustive(std::span<const channel::UserSpec> users,
                                     const channel::ScenarioConfig& cfg,
                                     double grid_step_m) {
  cfg.validate();
  if (users.empty())
    throw std::invalid_argument("optimize_exhaustive: need at least one user");
  if (!std::isfinite(grid_step_m) || grid_step_m <= 0.0 ||
      grid_step_m >= cfg.waveguide_length_m)
    throw std::invalid_argument(
        "optimize_exhaustive: grid step must lie in (0, L)");

  const double length = cfg.waveguide_length_m;
  double best_x = 0.0;
  double best_p = std::numeric_limits<double>::infinity();
  long evaluations = 0;
  const auto consider = [&](double x) {
    const double p = power_at(users, x, cfg);
    ++evaluations;
    if (p < best_p) {  // strict: ties keep the smaller x seen first
      best_p = p;
      best_x = x;
    }
  };
  for (long k = 0; static_cast<double>(k) * grid_step_m < length; ++k)
    consider(static_cast<double>(k) * grid_step_m);
  consider(length);

  PlacementOutcome out;
  out.method = Method::exhaustive;
  out.allocation = allocation::total_power(users, {best_x}, cfg);
  out.evaluations = evaluations;
  out.converged = true;
  return out;
}

PlacementOutcome fixed_baseline(std::span<const channel::UserSpec> users,
                                const channel::ScenarioConfig& cfg) {
  cfg.validate();
  if (users.empty())
    throw std::invalid_argument("fixed_baseline: need at least one user");
  PlacementOutcome out;
  out.method = Method::fixed;
  out.allocation = allocation::total_power(users, {0.0}, cfg);
  out.evaluations = 1;
  out.converged = true;
  return out;
}

}  // namespace pinchopt::placement
