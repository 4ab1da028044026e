#include "isacsim/frame.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "isacsim/errors.hpp"
#include "isacsim/units.hpp"

namespace isacsim {

double Numerology::symbol_duration_s() const {
  return (1.0 + cp_fraction) / subcarrier_spacing_hz;
}

double Numerology::slot_duration_s() const {
  return static_cast<double>(symbols_per_slot) * symbol_duration_s();
}

std::size_t Numerology::usable_subcarriers() const {
  auto n = static_cast<std::size_t>(std::floor(bandwidth_hz / subcarrier_spacing_hz));
  return std::min(n, fft_size);
}

void Numerology::validate() const {
  if (subcarrier_spacing_hz <= 0 || bandwidth_hz <= 0 || symbols_per_slot == 0 ||
      slots_per_period == 0 || period_duration_s <= 0 || fft_size == 0) {
    throw ConfigError("numerology: all fields must be positive");
  }
  if (cp_fraction < 0 || cp_fraction >= 1) {
    throw ConfigError("numerology: cp_fraction must lie in [0, 1)");
  }
  const double period = static_cast<double>(slots_per_period) * slot_duration_s();
  if (std::abs(period - period_duration_s) > 1e-9) {
    std::ostringstream os;
    os << "numerology: slots_per_period * slot duration = " << period
       << " s does not match period_duration = " << period_duration_s << " s";
    throw ConfigError(os.str());
  }
  if (static_cast<double>(fft_size) * subcarrier_spacing_hz < bandwidth_hz) {
    throw ConfigError("numerology: fft_size * subcarrier_spacing must cover the bandwidth");
  }
}

SlotPattern SlotPattern::from_string(const std::string& pattern) {
  SlotPattern out;
  out.slots.reserve(pattern.size());
  for (char c : pattern) {
    switch (c) {
      case 'D': case 'd': out.slots.push_back(SlotKind::Downlink); break;
      case 'S': case 's': out.slots.push_back(SlotKind::Special); break;
      case 'U': case 'u': out.slots.push_back(SlotKind::Uplink); break;
      default:
        throw ConfigError(std::string("slot pattern: unknown slot kind '") + c + "'");
    }
  }
  if (out.downlink_count() == 0) {
    throw ConfigError("slot pattern: at least one downlink slot required");
  }
  return out;
}

std::string SlotPattern::to_string() const {
  std::string s;
  s.reserve(slots.size());
  for (SlotKind k : slots) {
    s += (k == SlotKind::Downlink) ? 'D' : (k == SlotKind::Special) ? 'S' : 'U';
  }
  return s;
}

std::size_t SlotPattern::downlink_count() const {
  return static_cast<std::size_t>(
      std::count(slots.begin(), slots.end(), SlotKind::Downlink));
}

SensingSchedule build_schedule(const Numerology& numerology, const SlotPattern& pattern,
                               const std::vector<std::size_t>& sensing_slots,
                               std::size_t pulses_per_cpi) {
  numerology.validate();
  if (pattern.slots.size() != numerology.slots_per_period) {
    throw ConfigError("slot pattern length must equal slots_per_period");
  }
  if (sensing_slots.empty()) {
    throw ConfigError("build_schedule: sensing slot list is empty");
  }
  if (pulses_per_cpi < 2) {
    throw ConfigError("build_schedule: pulses_per_cpi must be >= 2");
  }

  std::vector<std::size_t> slots = sensing_slots;
  std::sort(slots.begin(), slots.end());
  for (std::size_t idx : slots) {
    if (idx >= pattern.slots.size()) {
      throw ConfigError("build_schedule: sensing slot index out of range");
    }
    if (pattern.slots[idx] != SlotKind::Downlink) {
      std::ostringstream os;
      os << "build_schedule: slot " << idx << " is not a downlink slot";
      throw NotDownlink(os.str());
    }
  }

  // Sensing instants across two periods; the wrap-around gap between the last
  // slot of one period and the first of the next must equal the others.
  const double slot_dur = numerology.slot_duration_s();
  const std::size_t symbol_index = numerology.symbols_per_slot - 1;  // last symbol
  std::vector<double> instants;
  for (std::size_t period = 0; period < 2; ++period) {
    for (std::size_t idx : slots) {
      double t = static_cast<double>(period) * numerology.period_duration_s +
                 static_cast<double>(idx) * slot_dur +
                 static_cast<double>(symbol_index) * numerology.symbol_duration_s();
      instants.push_back(t);
    }
  }

  double min_gap = instants[1] - instants[0];
  double max_gap = min_gap;
  for (std::size_t i = 1; i + 1 < instants.size(); ++i) {
    double gap = instants[i + 1] - instants[i];
    min_gap = std::min(min_gap, gap);
    max_gap = std::max(max_gap, gap);
  }
  if (slots.size() > 1 && max_gap - min_gap > 1e-12) {
    std::ostringstream os;
    os << "build_schedule: non-uniform sensing spacing, gaps range from "
       << min_gap << " to " << max_gap << " s";
    throw NonUniformSpacing(os.str());
  }

  SensingSchedule schedule;
  schedule.sensing_slot_indices = slots;
  schedule.symbol_index_in_slot = symbol_index;
  schedule.pri_s = (slots.size() > 1)
                       ? (instants[1] - instants[0])
                       : numerology.period_duration_s;
  schedule.pulses_per_cpi = pulses_per_cpi;
  return schedule;
}

double sensing_overhead(const Numerology& numerology, const SensingSchedule& schedule) {
  const double total = static_cast<double>(numerology.slots_per_period) *
                       static_cast<double>(numerology.symbols_per_slot);
  return static_cast<double>(schedule.sensing_slot_indices.size()) / total;
}

double sensing_overhead_dl(const Numerology& numerology, const SlotPattern& pattern,
                           const SensingSchedule& schedule) {
  const double dl = static_cast<double>(pattern.downlink_count()) *
                    static_cast<double>(numerology.symbols_per_slot);
  if (dl == 0) return 0.0;
  return static_cast<double>(schedule.sensing_slot_indices.size()) / dl;
}

DerivedAxes derived_axes(const Numerology& numerology, const SensingSchedule& schedule,
                         double wavelength_m) {
  DerivedAxes axes;
  axes.range_resolution_m = kSpeedOfLight / (2.0 * numerology.bandwidth_hz);
  axes.max_unambiguous_velocity_mps = wavelength_m / (4.0 * schedule.pri_s);
  axes.velocity_resolution_mps =
      wavelength_m / (2.0 * static_cast<double>(schedule.pulses_per_cpi) * schedule.pri_s);
  return axes;
}

}  // namespace isacsim
