#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace isacsim {

/// OFDM numerology for the TDD carrier. Timeline arithmetic (slot/symbol
/// durations, PRI) uses the nominal cp_fraction; the discrete waveform
/// quantizes the CP to whole samples separately (see waveform module).
struct Numerology {
  double subcarrier_spacing_hz = 30e3;
  double bandwidth_hz = 100e6;
  std::size_t symbols_per_slot = 14;
  std::size_t slots_per_period = 10;
  double period_duration_s = 5e-3;
  std::size_t fft_size = 4096;
  double cp_fraction = 1.0 / 14.0;  // aggregate normal-CP approximation

  double symbol_duration_s() const;      // useful part + CP
  double useful_symbol_duration_s() const { return 1.0 / subcarrier_spacing_hz; }
  double slot_duration_s() const;
  double sample_rate_hz() const { return static_cast<double>(fft_size) * subcarrier_spacing_hz; }
  std::size_t usable_subcarriers() const;

  /// Throws ConfigError when the invariants do not hold:
  /// slots_per_period * slot duration == period_duration (1e-9 s) and
  /// fft_size * subcarrier_spacing >= bandwidth.
  void validate() const;
};

enum class SlotKind { Downlink, Special, Uplink };

/// TDD slot pattern over one period, e.g. "DDDDDDDSUU".
struct SlotPattern {
  std::vector<SlotKind> slots;

  static SlotPattern from_string(const std::string& pattern);
  std::string to_string() const;
  std::size_t downlink_count() const;
};

/// Placement of the sensing symbols on the frame timeline.
struct SensingSchedule {
  std::vector<std::size_t> sensing_slot_indices;
  std::size_t symbol_index_in_slot = 0;  // set by build_schedule (default: last)
  double pri_s = 0.0;
  std::size_t pulses_per_cpi = 0;

  double cpi_duration_s() const { return pri_s * static_cast<double>(pulses_per_cpi); }
};

/// Builds a schedule from slot indices, verifying that all indices land on
/// downlink slots and that consecutive sensing instants (with period
/// wrap-around) are uniformly spaced. PRI is computed from the timeline.
/// Throws NotDownlink / NonUniformSpacing.
SensingSchedule build_schedule(const Numerology& numerology, const SlotPattern& pattern,
                               const std::vector<std::size_t>& sensing_slots,
                               std::size_t pulses_per_cpi);

/// Fraction of all OFDM symbols per period taken by sensing.
double sensing_overhead(const Numerology& numerology, const SensingSchedule& schedule);

/// Fraction of downlink symbols per period taken by sensing.
double sensing_overhead_dl(const Numerology& numerology, const SlotPattern& pattern,
                           const SensingSchedule& schedule);

/// Physical axis metadata implied by the waveform and schedule.
struct DerivedAxes {
  double range_resolution_m = 0.0;        // c / (2 B)
  double max_unambiguous_velocity_mps = 0.0;  // lambda / (4 PRI), one-sided
  double velocity_resolution_mps = 0.0;   // lambda / (2 N PRI)
};

DerivedAxes derived_axes(const Numerology& numerology, const SensingSchedule& schedule,
                         double wavelength_m);

}  // namespace isacsim
