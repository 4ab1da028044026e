#pragma once

#include <cmath>

namespace isacsim {

inline constexpr double kSpeedOfLight = 299792458.0;        // m/s
inline constexpr double kBoltzmann = 1.380649e-23;          // J/K
inline constexpr double kPi = 3.141592653589793238462643;

/// Power ratio dB <-> linear.
inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double lin) { return 10.0 * std::log10(lin); }

/// Amplitude ratio dB <-> linear.
inline double db_to_amplitude(double db) { return std::pow(10.0, db / 20.0); }
inline double amplitude_to_db(double amp) { return 20.0 * std::log10(amp); }

inline double deg_to_rad(double deg) { return deg * kPi / 180.0; }
inline double rad_to_deg(double rad) { return rad * 180.0 / kPi; }

}  // namespace isacsim
