// Copyright 2026 The pinchopt Authors
// SPDX-License-Identifier: Apache-2.0

#include "pinchopt/channel.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace pinchopt::channel {
namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;
constexpr double kSpeedOfLight = 299792458.0;  // exact SI value

void require_positive(double v, const char* what) {
  if (!std::isfinite(v) || v <= 0.0)
    throw std::invalid_argument(std::string(what) + " must be positive");
}

}  // namespace

void ScenarioConfig::validate() const {
  require_positive(waveguide_length_m, "ScenarioConfig: waveguide length");
  require_positive(waveguide_height_m, "ScenarioConfig: waveguide height");
  require_positive(carrier_freq_hz, "ScenarioConfig: carrier frequency");
  require_positive(bandwidth_hz, "ScenarioConfig: bandwidth");
  require_positive(default_noise_power_w, "ScenarioConfig: noise power");
  if (!std::isfinite(region_x.lo) || !std::isfinite(region_x.hi) ||
      !(region_x.lo < region_x.hi))
    throw std::invalid_argument("ScenarioConfig: region_x is degenerate");
  if (!std::isfinite(region_y.lo) || !std::isfinite(region_y.hi) ||
      !(region_y.lo < region_y.hi))
    throw std::invalid_argument("ScenarioConfig: region_y is degenerate");
}

void UserSpec::validate() const {
  if (!std::isfinite(x_hat) || !std::isfinite(y_hat))
    throw std::invalid_argument("UserSpec: estimated position must be finite");
  require_positive(sigma2, "UserSpec: sigma2");
  if (!std::isfinite(target_rate) || target_rate < 0.0)
    throw std::invalid_argument(
        "UserSpec: target rate must be finite and nonnegative");
  if (!std::isfinite(epsilon) || epsilon <= 0.0 || epsilon >= 1.0)
    throw std::invalid_argument("UserSpec: epsilon must lie in (0, 1)");
  require_positive(noise_power_w, "UserSpec: noise power");
}

double eta(double carrier_freq_hz) {
  require_positive(carrier_freq_hz, "eta: carrier frequency");
  const double amp = kSpeedOfLight / (4.0 * kPi * carrier_freq_hz);
  return amp * amp;
}

double dbm_to_watts(double p_dbm) {
  if (!std::isfinite(p_dbm))
    throw std::invalid_argument("dbm_to_watts: input must be finite");
  return std::pow(10.0, (p_dbm - 30.0) / 10.0);
}

double achievable_rate(Point2 user_pos, const AntennaPosition& ant,
                       double height_d_m, double power_w,
                       double noise_power_w, double carrier_freq_hz) {
  if (!std::isfinite(power_w) || power_w < 0.0)
    throw std::invalid_argument(
        "achievable_rate: power must be finite and nonnegative");
  require_positive(noise_power_w, "achievable_rate: noise power");
  if (!std::isfinite(height_d_m) || height_d_m < 0.0)
    throw std::invalid_argument(
        "achievable_rate: height must be finite and nonnegative");
  const double dx = user_pos.x - ant.x_pin;
  const double dist2 =
      dx * dx + user_pos.y * user_pos.y + height_d_m * height_d_m;
  return std::log2(1.0 +
                   eta(carrier_freq_hz) * power_w / (dist2 * noise_power_w));
}

}  // namespace pinchopt::channel
