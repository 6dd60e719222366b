// Copyright 2026 The pinchopt Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <span>

#include "pinchopt/allocation.hpp"
#include "pinchopt/channel.hpp"

namespace pinchopt::placement {

// Constriction-factor PSO defaults for a bounded scalar objective.
struct PsoConfig {
  int swarm_size = 30;
  int max_iters = 100;
  double inertia = 0.729;
  double cognitive_coeff = 1.49445;
  double social_coeff = 1.49445;
  double stall_tolerance_w = 1e-12;  // global-best improvement floor
  int stall_iters = 20;              // consecutive stalled iterations to stop
  std::uint64_t seed = 1;

  void validate() const;
};

enum class Method { pso, exhaustive, fixed };

const char* method_name(Method m);

struct PlacementOutcome {
  Method method = Method::fixed;
  allocation::AllocationResult allocation;
  long evaluations = 0;   // objective evaluations performed by the search
  bool converged = false; // PSO: stall stop reached before max_iters
};

// Minimizes total transmit power over x_pin in [0, L]. Deterministic given
// the seed; positions leaving the interval are clamped with their velocity
// damped and reversed; the global best never worsens.
PlacementOutcome optimize_pso(std::span<const channel::UserSpec> users,
                              const channel::ScenarioConfig& cfg,
                              const PsoConfig& pso);

// Scans x in {0, step, 2 step, ...} up to L, with L always included. Ties
// resolve toward smaller x. grid_step must be positive and smaller than L.
PlacementOutcome optimize_exhaustive(std::span<const channel::UserSpec> users,
                                     const channel::ScenarioConfig& cfg,
                                     double grid_step_m);

// Benchmark with the antenna pinned at x = 0; power allocation is still
// optimized per user.
PlacementOutcome fixed_baseline(std::span<const channel::UserSpec> users,
                                const channel::ScenarioConfig& cfg);

}  // namespace pinchopt::placement
