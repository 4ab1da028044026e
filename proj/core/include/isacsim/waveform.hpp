#pragma once

#include <complex>
#include <vector>

#include "isacsim/frame.hpp"

namespace isacsim {

enum class SweepDirection { Up, Down };

/// Chirp spectrum carried on OFDM subcarriers. The sensing symbol stays on
/// the OFDM grid: a discretized linear-FM phase law across the occupied
/// subcarriers rather than a time-domain sampled LFM.
struct ChirpSpec {
  std::size_t occupied_subcarriers = 0;  // 0 = full occupation for the numerology
  SweepDirection sweep_direction = SweepDirection::Up;
  double amplitude = 1.0;
};

/// One OFDM sensing symbol in both domains. time_domain includes the cyclic
/// prefix; Parseval holds between freq_domain and the useful (CP-stripped)
/// part.
struct BasebandSymbol {
  std::vector<std::complex<double>> freq_domain;  // length fft_size, DC at index 0
  std::vector<std::complex<double>> time_domain;  // cp_length + fft_size samples
  std::size_t cp_length = 0;
  double duration_s = 0.0;     // (1 + cp_fraction) / scs
  double sample_rate_hz = 0.0;

  std::size_t useful_length() const { return time_domain.size() - cp_length; }
  /// Energy of the useful part, sum |x|^2.
  double useful_energy() const;
};

/// Synthesizes the chirp sensing symbol. Occupied subcarriers are centered
/// on DC with constant magnitude and quadratic phase; the rest are zero.
/// Throws TooManySubcarriers when the request exceeds the usable grid.
BasebandSymbol synth_chirp_symbol(const Numerology& numerology, const ChirpSpec& spec);

/// Conjugate time-reversed useful part (CP excluded), normalized to unit
/// energy. Correlating the symbol against this reference yields the pulse
/// compression peak sqrt(E_s) at the symbol's delay.
std::vector<std::complex<double>> matched_filter_ref(const BasebandSymbol& symbol);

/// Per-pulse transmit sequence: one identical sensing symbol per scheduled
/// instant with the start times of the frame timeline.
struct TxTimeline {
  const BasebandSymbol* symbol = nullptr;
  std::vector<double> pulse_start_times_s;
};

TxTimeline assemble_tx_timeline(const Numerology& numerology, const SensingSchedule& schedule,
                                const BasebandSymbol& symbol);

/// Start times of the pulses in one CPI, first instant at t = 0 offset.
std::vector<double> pulse_times(const SensingSchedule& schedule);

}  // namespace isacsim
