#pragma once

#include <complex>
#include <vector>

#include "isacsim/pulse_matrix.hpp"
#include "isacsim/rdproc.hpp"

namespace isacsim {

/// Normalized LMS one-step predictor over slow time. The reference is the
/// cell's own history (predictor-canceller), so anything slowly varying --
/// DC clutter and its jitter sidelobes -- is predictable and cancelled,
/// while fast target tones are not.
struct NlmsConfig {
  std::size_t filter_order = 4;
  double step_size = 0.5;        // mu in (0, 2)
  double regularization = 1e-6;  // epsilon
  std::size_t training_pulses = 64;

  void validate() const;
};

/// Steady-state coefficients per (channel, range cell) after training.
struct NlmsState {
  std::size_t filter_order = 0;
  std::size_t channels = 0;
  std::size_t ranges = 0;
  std::vector<std::complex<double>> coefficients;  // [channel][range][tap]
  std::vector<double> residual_power_history;      // mean |e|^2 per training step
  bool converged = false;

  std::complex<double>* cell(std::size_t channel, std::size_t range) {
    return coefficients.data() + (channel * ranges + range) * filter_order;
  }
  const std::complex<double>* cell(std::size_t channel, std::size_t range) const {
    return coefficients.data() + (channel * ranges + range) * filter_order;
  }
};

/// Adapts the predictor on the first training_pulses of each range cell and
/// returns the final (steady state) coefficients. Throws Diverged when the
/// residual power grows by more than 10 dB over training.
NlmsState nlms_train(const PulseMatrix& matrix, const NlmsConfig& cfg);

/// Applies the frozen steady-state predictor: e_n = x_n - w^T [x_{n-1}..
/// x_{n-L}] per cell. The first L pulses are zeroed and flagged via
/// invalid_prefix. Coefficients stay frozen so a target entering later is
/// not adaptively nulled.
PulseMatrix nlms_apply(const PulseMatrix& matrix, const NlmsState& state);

/// Order-fold binomial slow-time differencing (order 1: y_n = x_n - x_{n-1});
/// the slow-time length shrinks by `order`. Gain on a tone at Doppler f is
/// |2 sin(pi f PRI)|^order.
PulseMatrix mti_cancel(const PulseMatrix& matrix, std::size_t order);

/// Per-range-cell clutter-to-noise estimate from a map: mean power within
/// +-clutter_band bins of DC over mean power outside, in dB.
std::vector<double> cnr_estimate(const RangeDopplerMap& map, std::size_t clutter_band);

/// Drops the zeroed leading pulses a canceller flagged, so downstream
/// differencing does not see the zero-to-signal step.
PulseMatrix trim_invalid_prefix(const PulseMatrix& matrix);

}  // namespace isacsim
