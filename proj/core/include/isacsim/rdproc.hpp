#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "isacsim/pulse_matrix.hpp"

namespace isacsim {

enum class WindowKind { Rectangular, Hann, Hamming };

/// Periodic taper of length n.
std::vector<double> make_window(WindowKind kind, std::size_t n);

/// Magnitude-squared map with physical axes. Doppler is centered: the DC bin
/// sits at doppler_size()/2 after the shift.
struct RangeDopplerMap {
  std::vector<double> power;          // row-major [range][doppler], linear power
  std::vector<double> range_axis_m;   // per range bin
  std::vector<double> velocity_axis_mps;  // per doppler bin, closing positive
  std::string channel = "combined";

  std::size_t range_size() const { return range_axis_m.size(); }
  std::size_t doppler_size() const { return velocity_axis_mps.size(); }
  std::size_t dc_bin() const { return doppler_size() / 2; }
  double& at(std::size_t r, std::size_t d) { return power[r * doppler_size() + d]; }
  double at(std::size_t r, std::size_t d) const { return power[r * doppler_size() + d]; }
};

/// Correlates every pulse with the matched-filter reference (circular, FFT
/// based). For an echo at delay d samples the compression peak lands in
/// fast-time bin d with amplitude sqrt(E_s) per unit echo amplitude.
/// Requires origin == Raw.
PulseMatrix pulse_compress(const PulseMatrix& matrix,
                           const std::vector<std::complex<double>>& reference);

/// Slow-time DFT per range bin and channel with the requested taper,
/// producing a centered power map. Channels are combined by noncoherent sum
/// unless a single channel index is requested. Requires origin Compressed or
/// Cancelled.
RangeDopplerMap doppler_process(const PulseMatrix& matrix, WindowKind window,
                                double wavelength_m,
                                std::optional<std::size_t> channel = std::nullopt);

/// Peak power over mean noise power in dB. Noise cells exclude a box of
/// +-exclusion_radius cells around the peak and the +-zero-doppler guard
/// band (residual clutter would bias the estimate). Throws TooFewNoiseCells
/// when fewer than 100 noise cells remain.
double snr_estimate(const RangeDopplerMap& map, std::size_t peak_range_bin,
                    std::size_t peak_doppler_bin, std::size_t exclusion_radius,
                    std::size_t zero_doppler_guard = 2);

/// Location of the strongest map cell.
struct PeakCell {
  std::size_t range_bin = 0;
  std::size_t doppler_bin = 0;
  double power = 0.0;
};
PeakCell find_peak(const RangeDopplerMap& map);

}  // namespace isacsim
