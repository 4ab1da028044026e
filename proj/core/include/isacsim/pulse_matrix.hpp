#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace isacsim {

enum class MatrixOrigin { Raw, Compressed, Cancelled };

/// Complex baseband samples organized fast-time x slow-time x Rx channel;
/// the lingua franca of the receive chain. Fast time is contiguous in
/// memory (layout [channel][pulse][fast]).
class PulseMatrix {
 public:
  PulseMatrix() = default;
  PulseMatrix(std::size_t fast, std::size_t slow, std::size_t channels);

  std::size_t fast_size() const { return fast_; }
  std::size_t slow_size() const { return slow_; }
  std::size_t channel_count() const { return channels_; }

  std::complex<double>& at(std::size_t channel, std::size_t pulse, std::size_t sample) {
    return samples_[(channel * slow_ + pulse) * fast_ + sample];
  }
  const std::complex<double>& at(std::size_t channel, std::size_t pulse,
                                 std::size_t sample) const {
    return samples_[(channel * slow_ + pulse) * fast_ + sample];
  }

  /// Pointer to one pulse's fast-time window.
  std::complex<double>* pulse_data(std::size_t channel, std::size_t pulse) {
    return samples_.data() + (channel * slow_ + pulse) * fast_;
  }
  const std::complex<double>* pulse_data(std::size_t channel, std::size_t pulse) const {
    return samples_.data() + (channel * slow_ + pulse) * fast_;
  }

  std::vector<std::complex<double>>& storage() { return samples_; }
  const std::vector<std::complex<double>>& storage() const { return samples_; }

  double sample_rate_hz = 0.0;
  std::vector<double> pulse_times_s;      // strictly increasing
  MatrixOrigin origin = MatrixOrigin::Raw;
  std::size_t invalid_prefix = 0;         // leading pulses zeroed by cancellation

  /// Mean PRI from the timestamps.
  double pri_s() const;
  /// Range represented by a fast-time bin, c / (2 fs) per bin.
  double range_bin_m() const;

 private:
  std::size_t fast_ = 0;
  std::size_t slow_ = 0;
  std::size_t channels_ = 0;
  std::vector<std::complex<double>> samples_;
};

}  // namespace isacsim
