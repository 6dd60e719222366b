// Copyright 2026 The pinchopt Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

namespace pinchopt::channel {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

// Waveguide geometry and global deployment parameters. The waveguide runs
// along the x axis at height d above the ground plane; users live in the
// rectangle region_x x region_y on the ground.
struct ScenarioConfig {
  double waveguide_length_m = 50.0;
  double waveguide_height_m = 3.0;
  double carrier_freq_hz = 28e9;
  // Metadata only: rates are spectral efficiencies (bit/s/Hz). Output layers
  // may multiply by the bandwidth to report bit/J instead of (bit/s/Hz)/W.
  double bandwidth_hz = 100e6;
  Interval region_x{0.0, 120.0};
  Interval region_y{-10.0, 10.0};
  double default_noise_power_w = 3.9810717055349725e-13;  // -94 dBm

  void validate() const;  // throws std::invalid_argument on violation
};

// One user's estimated location and QoS contract. sigma2 is the per-axis
// variance of the isotropic Gaussian location error, in m^2.
struct UserSpec {
  double x_hat = 0.0;
  double y_hat = 0.0;
  double sigma2 = 1.0;
  double target_rate = 3.0;  // bit/s/Hz
  double epsilon = 0.01;     // outage budget, in (0,1)
  double noise_power_w = 3.9810717055349725e-13;

  void validate() const;
};

// The radiating point slides along the waveguide: feasible x_pin is [0, L].
struct AntennaPosition {
  double x_pin = 0.0;
};

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

// Free-space path-gain constant c^2 / (16 pi^2 f^2), in m^2.
double eta(double carrier_freq_hz);

double dbm_to_watts(double p_dbm);

// Spectral efficiency log2(1 + eta P / (dist^2 sigma_n^2)) where dist^2 is
// the squared 3-D distance from the antenna at (x_pin, 0, d) to the user at
// (x, y, 0). Zero power gives exactly zero rate.
double achievable_rate(Point2 user_pos, const AntennaPosition& ant,
                       double height_d_m, double power_w,
                       double noise_power_w, double carrier_freq_hz);

}  // namespace pinchopt::channel
