#include "orbitshare/linkbudget.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace orbitshare {

namespace {
constexpr double kBoltzmannDbw = -228.6;  // dBW/K/Hz

void check_finite(const LinkParams& p) {
  for (double v : {p.tx_power_dbm, p.tx_gain_dbi, p.rx_gain_dbi, p.path_loss_db,
                   p.noise_temp_dbk}) {
    if (!std::isfinite(v)) throw std::invalid_argument("link parameter not finite");
  }
  if (!(p.bandwidth_hz > 0.0)) throw std::invalid_argument("bandwidth_hz must be > 0");
}
}  // namespace

double received_power_dbw(const LinkParams& params) {
  check_finite(params);
  return (params.tx_power_dbm - 30.0) + params.tx_gain_dbi + params.rx_gain_dbi -
         params.path_loss_db;
}

double noise_power_dbw(const LinkParams& params) {
  check_finite(params);
  return kBoltzmannDbw + params.noise_temp_dbk + 10.0 * std::log10(params.bandwidth_hz);
}

LinkBudgetResult snr(const LinkParams& params) {
  LinkBudgetResult out;
  if (params.snr_override_db) {
    out.rx_power_dbw = std::numeric_limits<double>::quiet_NaN();
    out.noise_power_dbw = std::numeric_limits<double>::quiet_NaN();
    out.snr_db = *params.snr_override_db;
  } else {
    out.rx_power_dbw = received_power_dbw(params);
    out.noise_power_dbw = noise_power_dbw(params);
    out.snr_db = out.rx_power_dbw - out.noise_power_dbw;
  }
  out.snr_linear = std::pow(10.0, out.snr_db / 10.0);
  return out;
}

}  // namespace orbitshare
