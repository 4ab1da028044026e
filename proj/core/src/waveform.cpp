#include "isacsim/waveform.hpp"

#include <cmath>
#include <sstream>

#include "isacsim/errors.hpp"
#include "isacsim/fft.hpp"
#include "isacsim/units.hpp"

namespace isacsim {

double BasebandSymbol::useful_energy() const {
  double e = 0.0;
  for (std::size_t i = cp_length; i < time_domain.size(); ++i) {
    e += std::norm(time_domain[i]);
  }
  return e;
}

BasebandSymbol synth_chirp_symbol(const Numerology& numerology, const ChirpSpec& spec) {
  numerology.validate();
  if (spec.amplitude <= 0) throw ConfigError("chirp spec: amplitude must be positive");

  const std::size_t usable = numerology.usable_subcarriers();
  std::size_t occupied = spec.occupied_subcarriers == 0 ? usable : spec.occupied_subcarriers;
  if (occupied > usable) {
    std::ostringstream os;
    os << "chirp spec: " << occupied << " subcarriers requested, " << usable << " usable";
    throw TooManySubcarriers(os.str());
  }

  const std::size_t n = numerology.fft_size;
  BasebandSymbol symbol;
  symbol.freq_domain.assign(n, {0.0, 0.0});

  // Quadratic phase across the occupied band, centered on DC. A down-chirp is
  // the exact conjugate spectrum, so its useful time sequence is the circular
  // conjugate reversal of the up-chirp.
  const double sign = (spec.sweep_direction == SweepDirection::Up) ? 1.0 : -1.0;
  const double m = static_cast<double>(occupied);
  const std::ptrdiff_t first = -static_cast<std::ptrdiff_t>(occupied / 2);
  for (std::size_t i = 0; i < occupied; ++i) {
    const std::ptrdiff_t k = first + static_cast<std::ptrdiff_t>(i);
    const double offset = static_cast<double>(i) - m / 2.0;
    const double phase = sign * kPi * offset * offset / m;
    const std::size_t bin = (k >= 0) ? static_cast<std::size_t>(k)
                                     : n - static_cast<std::size_t>(-k);
    symbol.freq_domain[bin] = std::polar(spec.amplitude, phase);
  }

  // Unitary inverse transform keeps Parseval exact between the domains.
  std::vector<std::complex<double>> useful = fft::inverse(symbol.freq_domain);
  const double scale = std::sqrt(static_cast<double>(n));
  for (auto& v : useful) v *= scale;

  symbol.cp_length = static_cast<std::size_t>(
      std::llround(numerology.cp_fraction * static_cast<double>(n)));
  symbol.time_domain.reserve(symbol.cp_length + n);
  symbol.time_domain.assign(useful.end() - static_cast<std::ptrdiff_t>(symbol.cp_length),
                            useful.end());
  symbol.time_domain.insert(symbol.time_domain.end(), useful.begin(), useful.end());
  symbol.duration_s = numerology.symbol_duration_s();
  symbol.sample_rate_hz = numerology.sample_rate_hz();
  return symbol;
}

std::vector<std::complex<double>> matched_filter_ref(const BasebandSymbol& symbol) {
  const std::size_t len = symbol.useful_length();
  if (len == 0) throw ConfigError("matched_filter_ref: empty symbol");
  const double energy = symbol.useful_energy();
  const double scale = 1.0 / std::sqrt(energy);
  std::vector<std::complex<double>> ref(len);
  for (std::size_t i = 0; i < len; ++i) {
    ref[i] = std::conj(symbol.time_domain[symbol.cp_length + len - 1 - i]) * scale;
  }
  return ref;
}

std::vector<double> pulse_times(const SensingSchedule& schedule) {
  std::vector<double> times(schedule.pulses_per_cpi);
  for (std::size_t n = 0; n < schedule.pulses_per_cpi; ++n) {
    times[n] = static_cast<double>(n) * schedule.pri_s;
  }
  return times;
}

TxTimeline assemble_tx_timeline(const Numerology& numerology, const SensingSchedule& schedule,
                                const BasebandSymbol& symbol) {
  numerology.validate();
  if (schedule.pulses_per_cpi < 1) {
    throw ConfigError("assemble_tx_timeline: schedule has no pulses");
  }
  TxTimeline timeline;
  timeline.symbol = &symbol;
  // Anchor at the first scheduled sensing instant of the period.
  const double t0 =
      static_cast<double>(schedule.sensing_slot_indices.empty()
                              ? 0
                              : schedule.sensing_slot_indices.front()) *
          numerology.slot_duration_s() +
      static_cast<double>(schedule.symbol_index_in_slot) * numerology.symbol_duration_s();
  timeline.pulse_start_times_s.resize(schedule.pulses_per_cpi);
  for (std::size_t n = 0; n < schedule.pulses_per_cpi; ++n) {
    timeline.pulse_start_times_s[n] = t0 + static_cast<double>(n) * schedule.pri_s;
  }
  return timeline;
}

}  // namespace isacsim
