#include "isacsim/rdproc.hpp"

#include <cmath>

#include "isacsim/errors.hpp"
#include "isacsim/fft.hpp"
#include "isacsim/units.hpp"

namespace isacsim {

std::vector<double> make_window(WindowKind kind, std::size_t n) {
  std::vector<double> w(n, 1.0);
  switch (kind) {
    case WindowKind::Rectangular:
      break;
    case WindowKind::Hann:
      for (std::size_t i = 0; i < n; ++i) {
        w[i] = 0.5 - 0.5 * std::cos(2.0 * kPi * static_cast<double>(i) / static_cast<double>(n));
      }
      break;
    case WindowKind::Hamming:
      for (std::size_t i = 0; i < n; ++i) {
        w[i] = 0.54 - 0.46 * std::cos(2.0 * kPi * static_cast<double>(i) / static_cast<double>(n));
      }
      break;
  }
  return w;
}

PulseMatrix pulse_compress(const PulseMatrix& matrix,
                           const std::vector<std::complex<double>>& reference) {
  if (matrix.origin != MatrixOrigin::Raw) {
    throw WrongOrigin("pulse_compress: input matrix must be raw");
  }
  const std::size_t window = matrix.fast_size();
  const std::size_t ref_len = reference.size();
  if (ref_len == 0 || ref_len > window) {
    throw ConfigError("pulse_compress: reference length must be in (0, fast window]");
  }

  // Circular correlation via the reference's spectrum. The reference is the
  // conjugate time-reversed symbol, so convolving and rotating by ref_len-1
  // puts the peak at the echo delay bin.
  std::vector<std::complex<double>> ref_spec(window, {0.0, 0.0});
  std::copy(reference.begin(), reference.end(), ref_spec.begin());
  fft::forward_inplace(ref_spec.data(), window);

  PulseMatrix out(window, matrix.slow_size(), matrix.channel_count());
  out.sample_rate_hz = matrix.sample_rate_hz;
  out.pulse_times_s = matrix.pulse_times_s;
  out.origin = MatrixOrigin::Compressed;
  out.invalid_prefix = matrix.invalid_prefix;

  std::vector<std::complex<double>> buf(window);
  const std::size_t shift = ref_len - 1;
  for (std::size_t c = 0; c < matrix.channel_count(); ++c) {
    for (std::size_t n = 0; n < matrix.slow_size(); ++n) {
      const std::complex<double>* src = matrix.pulse_data(c, n);
      std::copy(src, src + window, buf.begin());
      fft::forward_inplace(buf.data(), window);
      for (std::size_t k = 0; k < window; ++k) buf[k] *= ref_spec[k];
      fft::inverse_inplace(buf.data(), window);
      std::complex<double>* dst = out.pulse_data(c, n);
      for (std::size_t k = 0; k < window; ++k) {
        dst[k] = buf[(k + shift) % window];
      }
    }
  }
  return out;
}

RangeDopplerMap doppler_process(const PulseMatrix& matrix, WindowKind window,
                                double wavelength_m, std::optional<std::size_t> channel) {
  if (matrix.origin == MatrixOrigin::Raw) {
    throw WrongOrigin("doppler_process: input matrix must be compressed or cancelled");
  }
  if (channel && *channel >= matrix.channel_count()) {
    throw ConfigError("doppler_process: channel index out of range");
  }
  const std::size_t pulses = matrix.slow_size();
  const std::size_t ranges = matrix.fast_size();
  const std::vector<double> taper = make_window(window, pulses);

  RangeDopplerMap map;
  map.power.assign(ranges * pulses, 0.0);
  map.range_axis_m.resize(ranges);
  for (std::size_t r = 0; r < ranges; ++r) {
    map.range_axis_m[r] = static_cast<double>(r) * matrix.range_bin_m();
  }
  const double pri = matrix.pri_s();
  map.velocity_axis_mps.resize(pulses);
  const std::ptrdiff_t dc = static_cast<std::ptrdiff_t>(pulses / 2);
  for (std::size_t d = 0; d < pulses; ++d) {
    const double bin_offset = static_cast<double>(static_cast<std::ptrdiff_t>(d) - dc);
    map.velocity_axis_mps[d] =
        bin_offset * wavelength_m / (2.0 * static_cast<double>(pulses) * pri);
  }
  map.channel = channel ? std::to_string(*channel) : "combined";

  const std::size_t c_begin = channel ? *channel : 0;
  const std::size_t c_end = channel ? *channel + 1 : matrix.channel_count();
  std::vector<std::complex<double>> slow(pulses);
  for (std::size_t c = c_begin; c < c_end; ++c) {
    for (std::size_t r = 0; r < ranges; ++r) {
      for (std::size_t n = 0; n < pulses; ++n) {
        slow[n] = matrix.at(c, n, r) * taper[n];
      }
      fft::forward_inplace(slow.data(), pulses);
      // fftshift: FFT bin k maps to centered bin (k + N/2) mod N.
      for (std::size_t k = 0; k < pulses; ++k) {
        std::size_t d = (k + pulses / 2) % pulses;
        map.at(r, d) += std::norm(slow[k]);
      }
    }
  }
  return map;
}

double snr_estimate(const RangeDopplerMap& map, std::size_t peak_range_bin,
                    std::size_t peak_doppler_bin, std::size_t exclusion_radius,
                    std::size_t zero_doppler_guard) {
  const std::size_t nr = map.range_size();
  const std::size_t nd = map.doppler_size();
  if (peak_range_bin >= nr || peak_doppler_bin >= nd) {
    throw ConfigError("snr_estimate: peak cell out of range");
  }
  const double peak = map.at(peak_range_bin, peak_doppler_bin);
  const std::size_t dc = map.dc_bin();

  double noise_sum = 0.0;
  std::size_t noise_cells = 0;
  for (std::size_t r = 0; r < nr; ++r) {
    for (std::size_t d = 0; d < nd; ++d) {
      const auto dr = static_cast<std::ptrdiff_t>(r) - static_cast<std::ptrdiff_t>(peak_range_bin);
      const auto dd = static_cast<std::ptrdiff_t>(d) - static_cast<std::ptrdiff_t>(peak_doppler_bin);
      if (std::abs(dr) <= static_cast<std::ptrdiff_t>(exclusion_radius) &&
          std::abs(dd) <= static_cast<std::ptrdiff_t>(exclusion_radius)) {
        continue;
      }
      const auto from_dc = std::abs(static_cast<std::ptrdiff_t>(d) - static_cast<std::ptrdiff_t>(dc));
      if (from_dc <= static_cast<std::ptrdiff_t>(zero_doppler_guard)) continue;
      noise_sum += map.at(r, d);
      ++noise_cells;
    }
  }
  if (noise_cells < 100) {
    throw TooFewNoiseCells("snr_estimate: fewer than 100 noise cells remain");
  }
  return linear_to_db(peak / (noise_sum / static_cast<double>(noise_cells)));
}

PeakCell find_peak(const RangeDopplerMap& map) {
  PeakCell best;
  for (std::size_t r = 0; r < map.range_size(); ++r) {
    for (std::size_t d = 0; d < map.doppler_size(); ++d) {
      if (map.at(r, d) > best.power) {
        best = {r, d, map.at(r, d)};
      }
    }
  }
  return best;
}

}  // namespace isacsim
