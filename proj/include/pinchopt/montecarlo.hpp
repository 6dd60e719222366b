// Copyright 2026 The pinchopt Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <random>
#include <utility>

#include "pinchopt/channel.hpp"

namespace pinchopt::montecarlo {

// Avalanche-mixes (base_seed, stream_id) into an engine seed so that named
// streams are mutually decorrelated. Sampling is organized in fixed-size
// trial blocks, one stream per block; results therefore do not depend on
// how blocks would be distributed across threads.
std::uint64_t derive_stream_seed(std::uint64_t base_seed,
                                 std::uint64_t stream_id);

// Deterministic random source. Uniforms take the top 53 bits of the engine
// output; normals come from Box-Muller on those uniforms, so the sequence
// is identical across standard libraries (std distributions are not).
class RandomStream {
 public:
  RandomStream(std::uint64_t base_seed, std::uint64_t stream_id);

  double uniform();  // [0, 1)
  double normal();   // standard normal

 private:
  std::mt19937_64 eng_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

struct OutageReport {
  long trials = 0;
  long outage_count = 0;
  double empirical_outage = 0.0;
  double standard_error = 0.0;  // sqrt(e(1-e)/trials)
  double target_epsilon = 0.0;
  bool pass_3se = false;  // |empirical - target| <= 3 SE
};

// One draw of the true user position: each coordinate is the estimate plus
// sigma times an independent standard normal (x first, then y).
std::pair<double, double> sample_true_position(const channel::UserSpec& user,
                                               RandomStream& rng);

// Draws true positions, evaluates the rate model at the given power, and
// counts events rate < target_rate. trials must be at least 10^4.
OutageReport estimate_outage(const channel::UserSpec& user,
                             const channel::AntennaPosition& ant,
                             double power_w,
                             const channel::ScenarioConfig& cfg, long trials,
                             std::uint64_t seed);

// Empirical probability that a Gaussian point centered at distance l from
// the origin (per-axis std-dev sigma) falls inside the circle of radius r.
double estimate_coverage(double l, double sigma, double r, long trials,
                         std::uint64_t seed);

}  // namespace pinchopt::montecarlo
