#pragma once

#include <string>
#include <vector>

namespace isacsim {

/// Link-budget inputs for the radar equation. Defaults are the reference
/// operating point of the simulated station: 40 dBm back-off transmit power,
/// 12 dB antenna gain, 3.747 GHz carrier, 0.1 m^2 target, 256 coherently
/// integrated symbols of 33.33 us at 50% duty, 1 km, 290 K, 8 dB noise
/// figure + losses.
struct LinkParams {
  double transmit_power_w = 10.0;
  double antenna_gain_db = 12.0;
  double wavelength_m = 0.080064;
  double rcs_m2 = 0.1;
  std::size_t num_symbols = 256;
  double symbol_duration_s = 33.33e-6;
  double duty_ratio = 0.5;
  double max_range_m = 1000.0;
  double temperature_k = 290.0;
  double loss_noise_figure_db = 8.0;

  void validate() const;
};

/// Output SNR of the coherent processing chain from the radar equation,
///   SNR = Pt G^2 lambda^2 sigma N (T eta) / ((4 pi)^3 R^4 k T0 L),
/// returned in dB.
double snr_out(const LinkParams& params);

/// Single-symbol (N = 1) linear SNR; the calibration anchor used by the
/// scene simulator to scale target echo amplitudes against a unit noise
/// floor.
double single_pulse_snr_linear(const LinkParams& params, double range_m);

/// Inverts the radar equation for the range at which snr_out equals
/// required_snr_db.
double max_detectable_range(const LinkParams& params, double required_snr_db);

/// Throughput accounting from measured rates.
struct RateAccounting {
  double benchmark_rate_bps = 0.0;
  double measured_rate_bps = 0.0;

  void validate() const;
};

/// (benchmark - measured) / benchmark.
double rate_loss(const RateAccounting& accounting);

/// One row of the printable budget table.
struct BudgetRow {
  std::string parameter;
  double value = 0.0;
  std::string unit;
  double db_contribution = 0.0;  // signed contribution to SNR_out in dB
};

/// Term-by-term decomposition of the radar equation; the dB contributions
/// sum to snr_out.
std::vector<BudgetRow> budget_table(const LinkParams& params);

}  // namespace isacsim
