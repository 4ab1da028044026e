#include "isacsim/pulse_matrix.hpp"

#include "isacsim/errors.hpp"
#include "isacsim/units.hpp"

namespace isacsim {

PulseMatrix::PulseMatrix(std::size_t fast, std::size_t slow, std::size_t channels)
    : fast_(fast), slow_(slow), channels_(channels),
      samples_(fast * slow * channels, std::complex<double>{0.0, 0.0}) {
  if (fast == 0 || slow == 0 || channels == 0) {
    throw ConfigError("pulse matrix: all dimensions must be nonzero");
  }
}

double PulseMatrix::pri_s() const {
  if (pulse_times_s.size() < 2) return 0.0;
  return (pulse_times_s.back() - pulse_times_s.front()) /
         static_cast<double>(pulse_times_s.size() - 1);
}

double PulseMatrix::range_bin_m() const {
  return kSpeedOfLight / (2.0 * sample_rate_hz);
}

}  // namespace isacsim
