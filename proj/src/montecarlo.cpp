// Copyright 2026 The pinchopt Authors
// SPDX-License-Identifier: Apache-2.0

#include "pinchopt/montecarlo.hpp"

#include <cmath>
#include <stdexcept>

namespace pinchopt::montecarlo {
namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;

// Trials are consumed in fixed-size blocks, one derived stream per block,
// so a parallel implementation over blocks would reproduce these results.
constexpr long kBlockTrials = 65536;

std::uint64_t splitmix64_step(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

std::uint64_t derive_stream_seed(std::uint64_t base_seed,
                                 std::uint64_t stream_id) {
  std::uint64_t state = base_seed ^ (0x9e3779b97f4a7c15ULL * (stream_id + 1));
  std::uint64_t z = splitmix64_step(state);
  z ^= splitmix64_step(state);
  return z;
}

RandomStream::RandomStream(std::uint64_t base_seed, std::uint64_t stream_id)
    : eng_(derive_stream_seed(base_seed, stream_id)) {}

double RandomStream::uniform() {
  return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
}

double RandomStream::normal() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  // u1 shifted into (0, 1] so the log is finite.
  const double u1 = (static_cast<double>(eng_() >> 11) + 1.0) * 0x1.0p-53;
  const double u2 = static_cast<double>(eng_() >> 11) * 0x1.0p-53;
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * kPi * u2;
  spare_ = radius * std::sin(angle);
  have_spare_ = true;
  return radius * std::cos(angle);
}

std::pair<double, double> sample_true_position(const channel::UserSpec& user,
                                               RandomStream& rng) {
  const double sigma = std::sqrt(user.sigma2);
  const double x = user.x_hat + sigma * rng.normal();
  const double y = user.y_hat + sigma * rng.normal();
  return {x, y};
}

OutageReport estimate_outage(const channel::UserSpec& user,
                             const channel::AntennaPosition& ant,
                             double power_w,
                             const channel::ScenarioConfig& cfg, long trials,
                             std::uint64_t seed) {
  user.validate();
  cfg.validate();
  if (!std::isfinite(power_w) || power_w < 0.0)
    throw std::invalid_argument(
        "estimate_outage: power must be finite and nonnegative");
  if (trials < 10000)
    throw std::invalid_argument("estimate_outage: trials must be >= 10000");

  long outages = 0;
  for (long start = 0; start < trials; start += kBlockTrials) {
    RandomStream rng(seed, static_cast<std::uint64_t>(start / kBlockTrials));
    const long n = std::min(kBlockTrials, trials - start);
    for (long i = 0; i < n; ++i) {
      const auto [px, py] = sample_true_position(user, rng);
      const double rate = channel::achievable_rate(
          {px, py}, ant, cfg.waveguide_height_m, power_w, user.noise_power_w,
          cfg.carrier_freq_hz);
      if (rate < user.target_rate) ++outages;
    }
  }

  OutageReport report;
  report.trials = trials;
  report.outage_count = outages;
  report.empirical_outage =
      static_cast<double>(outages) / static_cast<double>(trials);
  report.standard_error =
      std::sqrt(report.empirical_outage * (1.0 - report.empirical_outage) /
                static_cast<double>(trials));
  report.target_epsilon = user.epsilon;
  report.pass_3se = std::fabs(report.empirical_outage - user.epsilon) <=
                    3.0 * report.standard_error;
  return report;
}

double estimate_coverage(double l, double sigma, double r, long trials,
                         std::uint64_t seed) {
  if (!std::isfinite(l) || l < 0.0)
    throw std::invalid_argument(
        "estimate_coverage: l must be finite and nonnegative");
  if (!std::isfinite(sigma) || sigma <= 0.0)
    throw std::invalid_argument("estimate_coverage: sigma must be positive");
  if (!std::isfinite(r) || r < 0.0)
    throw std::invalid_argument(
        "estimate_coverage: r must be finite and nonnegative");
  if (trials < 10000)
    throw std::invalid_argument(
        "estimate_coverage: trials must be >= 10000");

  const double r2 = r * r;
  long inside = 0;
  for (long start = 0; start < trials; start += kBlockTrials) {
    RandomStream rng(seed, static_cast<std::uint64_t>(start / kBlockTrials));
    const long n = std::min(kBlockTrials, trials - start);
    for (long i = 0; i < n; ++i) {
      const double x = l + sigma * rng.normal();
      const double y = sigma * rng.normal();
      if (x * x + y * y <= r2) ++inside;
    }
  }
  return static_cast<double>(inside) / static_cast<double>(trials);
}

}  // namespace pinchopt::montecarlo
