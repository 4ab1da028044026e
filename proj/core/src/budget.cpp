#include "isacsim/budget.hpp"

#include <cmath>

#include "isacsim/errors.hpp"
#include "isacsim/units.hpp"

namespace isacsim {

void LinkParams::validate() const {
  if (transmit_power_w <= 0 || wavelength_m <= 0 || rcs_m2 <= 0 || num_symbols == 0 ||
      symbol_duration_s <= 0 || max_range_m <= 0 || temperature_k <= 0) {
    throw ConfigError("link params: all physical quantities must be positive");
  }
  if (duty_ratio <= 0 || duty_ratio > 1) {
    throw ConfigError("link params: duty_ratio must lie in (0, 1]");
  }
}

double single_pulse_snr_linear(const LinkParams& params, double range_m) {
  const double gain = db_to_linear(params.antenna_gain_db);
  const double loss = db_to_linear(params.loss_noise_figure_db);
  const double four_pi_cubed = std::pow(4.0 * kPi, 3);
  const double numerator = params.transmit_power_w * gain * gain *
                           params.wavelength_m * params.wavelength_m * params.rcs_m2 *
                           params.symbol_duration_s * params.duty_ratio;
  const double denominator = four_pi_cubed * std::pow(range_m, 4) * kBoltzmann *
                             params.temperature_k * loss;
  return numerator / denominator;
}

double snr_out(const LinkParams& params) {
  params.validate();
  const double linear = single_pulse_snr_linear(params, params.max_range_m) *
                        static_cast<double>(params.num_symbols);
  return linear_to_db(linear);
}

double max_detectable_range(const LinkParams& params, double required_snr_db) {
  params.validate();
  const double required = db_to_linear(required_snr_db);
  const double at_unit_range = single_pulse_snr_linear(params, 1.0) *
                               static_cast<double>(params.num_symbols);
  // SNR(R) = SNR(1 m) / R^4
  return std::pow(at_unit_range / required, 0.25);
}

void RateAccounting::validate() const {
  if (benchmark_rate_bps <= 0 || measured_rate_bps <= 0) {
    throw ConfigError("rate accounting: rates must be positive");
  }
  if (measured_rate_bps > benchmark_rate_bps) {
    throw ConfigError("rate accounting: measured rate exceeds benchmark rate");
  }
}

double rate_loss(const RateAccounting& accounting) {
  accounting.validate();
  return (accounting.benchmark_rate_bps - accounting.measured_rate_bps) /
         accounting.benchmark_rate_bps;
}

std::vector<BudgetRow> budget_table(const LinkParams& params) {
  params.validate();
  std::vector<BudgetRow> rows;
  auto add = [&rows](const std::string& name, double value, const std::string& unit,
                     double db) {
    rows.push_back({name, value, unit, db});
  };
  const double four_pi_cubed = std::pow(4.0 * kPi, 3);
  add("transmit_power", params.transmit_power_w, "W",
      linear_to_db(params.transmit_power_w));
  add("antenna_gain_squared", 2.0 * params.antenna_gain_db, "dB",
      2.0 * params.antenna_gain_db);
  add("wavelength_squared", params.wavelength_m * params.wavelength_m, "m^2",
      linear_to_db(params.wavelength_m * params.wavelength_m));
  add("rcs", params.rcs_m2, "m^2", linear_to_db(params.rcs_m2));
  add("num_symbols", static_cast<double>(params.num_symbols), "",
      linear_to_db(static_cast<double>(params.num_symbols)));
  add("symbol_energy_time", params.symbol_duration_s * params.duty_ratio, "s",
      linear_to_db(params.symbol_duration_s * params.duty_ratio));
  add("spreading_(4pi)^3", four_pi_cubed, "", -linear_to_db(four_pi_cubed));
  add("range^4", std::pow(params.max_range_m, 4), "m^4",
      -linear_to_db(std::pow(params.max_range_m, 4)));
  add("boltzmann", kBoltzmann, "J/K", -linear_to_db(kBoltzmann));
  add("temperature", params.temperature_k, "K", -linear_to_db(params.temperature_k));
  add("loss_noise_figure", params.loss_noise_figure_db, "dB",
      -params.loss_noise_figure_db);
  return rows;
}

}  // namespace isacsim
