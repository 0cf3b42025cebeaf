#pragma once

#include <optional>

namespace orbitshare {

// Physical link parameters for one receiver chain. Values are stored
// exactly as configured (dBm for transmit power); unit conversion
// happens in the computations below.
struct LinkParams {
  double tx_power_dbm = 0.0;
  double tx_gain_dbi = 0.0;
  double rx_gain_dbi = 0.0;
  double path_loss_db = 0.0;
  double noise_temp_dbk = 0.0;
  double bandwidth_hz = 1.0;
  double carrier_freq_hz = 0.0;  // informational only
  std::optional<double> snr_override_db;
};

struct LinkBudgetResult {
  double rx_power_dbw = 0.0;   // NaN when snr_override_db is set
  double noise_power_dbw = 0.0;
  double snr_db = 0.0;
  double snr_linear = 0.0;
};

// (tx_power_dbm - 30) + tx_gain_dbi + rx_gain_dbi - path_loss_db
double received_power_dbw(const LinkParams& params);

// -228.6 + noise_temp_dbk + 10 log10(bandwidth_hz), with the Boltzmann
// constant fixed at -228.6 dBW/K/Hz.
double noise_power_dbw(const LinkParams& params);

// Full budget; honours snr_override_db (power fields become NaN).
LinkBudgetResult snr(const LinkParams& params);

}  // namespace orbitshare
