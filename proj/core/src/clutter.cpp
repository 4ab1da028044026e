#include "isacsim/clutter.hpp"

#include <algorithm>
#include <cmath>

#include "isacsim/errors.hpp"
#include "isacsim/units.hpp"

namespace isacsim {

void NlmsConfig::validate() const {
  if (filter_order == 0) throw ConfigError("nlms: filter_order must be >= 1");
  if (step_size <= 0 || step_size >= 2) {
    throw ConfigError("nlms: step_size must lie in (0, 2)");
  }
  if (regularization <= 0) throw ConfigError("nlms: regularization must be positive");
  if (training_pulses < filter_order + 1) {
    throw ConfigError("nlms: training_pulses must be >= filter_order + 1");
  }
}

NlmsState nlms_train(const PulseMatrix& matrix, const NlmsConfig& cfg) {
  cfg.validate();
  if (matrix.origin != MatrixOrigin::Compressed) {
    throw WrongOrigin("nlms_train: input matrix must be compressed");
  }
  if (matrix.slow_size() < cfg.training_pulses) {
    throw ConfigError("nlms_train: slow-time length shorter than training_pulses");
  }

  const std::size_t L = cfg.filter_order;
  const std::size_t channels = matrix.channel_count();
  const std::size_t ranges = matrix.fast_size();

  NlmsState state;
  state.filter_order = L;
  state.channels = channels;
  state.ranges = ranges;
  state.coefficients.assign(channels * ranges * L, {0.0, 0.0});
  const std::size_t steps = cfg.training_pulses - L;
  state.residual_power_history.assign(steps, 0.0);

  std::vector<std::complex<double>> regress(L);
  for (std::size_t c = 0; c < channels; ++c) {
    for (std::size_t r = 0; r < ranges; ++r) {
      std::complex<double>* w = state.cell(c, r);
      for (std::size_t n = L; n < cfg.training_pulses; ++n) {
        double energy = 0.0;
        for (std::size_t k = 0; k < L; ++k) {
          regress[k] = matrix.at(c, n - 1 - k, r);
          energy += std::norm(regress[k]);
        }
        std::complex<double> prediction{0.0, 0.0};
        for (std::size_t k = 0; k < L; ++k) prediction += w[k] * regress[k];
        const std::complex<double> err = matrix.at(c, n, r) - prediction;
        const double gain = cfg.step_size / (cfg.regularization + energy);
        for (std::size_t k = 0; k < L; ++k) {
          w[k] += gain * std::conj(regress[k]) * err;
        }
        state.residual_power_history[n - L] += std::norm(err);
      }
    }
  }
  const double cells = static_cast<double>(channels * ranges);
  for (auto& v : state.residual_power_history) v /= cells;

  // Divergence check: late-vs-early mean residual power.
  if (steps >= 8) {
    const std::size_t quarter = std::max<std::size_t>(1, steps / 4);
    double early = 0.0, late = 0.0;
    for (std::size_t i = 0; i < quarter; ++i) early += state.residual_power_history[i];
    for (std::size_t i = steps - quarter; i < steps; ++i) {
      late += state.residual_power_history[i];
    }
    if (early > 0 && late / early > 10.0) {
      throw Diverged("nlms_train: residual power grew by more than 10 dB over training");
    }
  }
  state.converged = true;
  return state;
}

PulseMatrix nlms_apply(const PulseMatrix& matrix, const NlmsState& state) {
  if (state.channels != matrix.channel_count() || state.ranges != matrix.fast_size()) {
    throw DimensionMismatch("nlms_apply: state trained on different dimensions");
  }
  const std::size_t L = state.filter_order;
  if (matrix.slow_size() <= L) {
    throw TooFewPulses("nlms_apply: slow-time length must exceed the filter order");
  }

  PulseMatrix out(matrix.fast_size(), matrix.slow_size(), matrix.channel_count());
  out.sample_rate_hz = matrix.sample_rate_hz;
  out.pulse_times_s = matrix.pulse_times_s;
  out.origin = MatrixOrigin::Cancelled;
  out.invalid_prefix = L;

  for (std::size_t c = 0; c < matrix.channel_count(); ++c) {
    for (std::size_t r = 0; r < matrix.fast_size(); ++r) {
      const std::complex<double>* w = state.cell(c, r);
      for (std::size_t n = L; n < matrix.slow_size(); ++n) {
        std::complex<double> prediction{0.0, 0.0};
        for (std::size_t k = 0; k < L; ++k) {
          prediction += w[k] * matrix.at(c, n - 1 - k, r);
        }
        out.at(c, n, r) = matrix.at(c, n, r) - prediction;
      }
    }
  }
  return out;
}

PulseMatrix mti_cancel(const PulseMatrix& matrix, std::size_t order) {
  if (order == 0) throw ConfigError("mti_cancel: order must be >= 1");
  if (matrix.slow_size() <= order) {
    throw TooFewPulses("mti_cancel: slow-time length must exceed the order");
  }

  // Binomial weights (-1)^i C(order, i).
  std::vector<double> weights(order + 1);
  weights[0] = 1.0;
  for (std::size_t i = 1; i <= order; ++i) {
    weights[i] = -weights[i - 1] * static_cast<double>(order - i + 1) / static_cast<double>(i);
  }

  const std::size_t out_pulses = matrix.slow_size() - order;
  PulseMatrix out(matrix.fast_size(), out_pulses, matrix.channel_count());
  out.sample_rate_hz = matrix.sample_rate_hz;
  out.pulse_times_s.assign(matrix.pulse_times_s.begin() + static_cast<std::ptrdiff_t>(order),
                           matrix.pulse_times_s.end());
  out.origin = MatrixOrigin::Cancelled;
  // An output pulse touching any zeroed input pulse is itself invalid.
  out.invalid_prefix = std::min(matrix.invalid_prefix, out_pulses);

  for (std::size_t c = 0; c < matrix.channel_count(); ++c) {
    for (std::size_t n = 0; n < out_pulses; ++n) {
      std::complex<double>* dst = out.pulse_data(c, n);
      for (std::size_t i = 0; i <= order; ++i) {
        const std::complex<double>* src = matrix.pulse_data(c, n + order - i);
        const double wgt = weights[i];
        for (std::size_t k = 0; k < matrix.fast_size(); ++k) dst[k] += wgt * src[k];
      }
    }
  }
  return out;
}

PulseMatrix trim_invalid_prefix(const PulseMatrix& matrix) {
  const std::size_t skip = matrix.invalid_prefix;
  if (skip == 0) return matrix;
  if (skip >= matrix.slow_size()) {
    throw TooFewPulses("trim_invalid_prefix: nothing left after the prefix");
  }
  const std::size_t pulses = matrix.slow_size() - skip;
  PulseMatrix out(matrix.fast_size(), pulses, matrix.channel_count());
  out.sample_rate_hz = matrix.sample_rate_hz;
  out.pulse_times_s.assign(matrix.pulse_times_s.begin() + static_cast<std::ptrdiff_t>(skip),
                           matrix.pulse_times_s.end());
  out.origin = matrix.origin;
  out.invalid_prefix = 0;
  for (std::size_t c = 0; c < matrix.channel_count(); ++c) {
    for (std::size_t n = 0; n < pulses; ++n) {
      const std::complex<double>* src = matrix.pulse_data(c, n + skip);
      std::copy(src, src + matrix.fast_size(), out.pulse_data(c, n));
    }
  }
  return out;
}

std::vector<double> cnr_estimate(const RangeDopplerMap& map, std::size_t clutter_band) {
  const std::size_t nd = map.doppler_size();
  const std::size_t dc = map.dc_bin();
  std::vector<double> out(map.range_size(), 0.0);
  for (std::size_t r = 0; r < map.range_size(); ++r) {
    double inside = 0.0, outside = 0.0;
    std::size_t n_in = 0, n_out = 0;
    for (std::size_t d = 0; d < nd; ++d) {
      const auto dist = std::abs(static_cast<std::ptrdiff_t>(d) - static_cast<std::ptrdiff_t>(dc));
      if (dist <= static_cast<std::ptrdiff_t>(clutter_band)) {
        inside += map.at(r, d);
        ++n_in;
      } else {
        outside += map.at(r, d);
        ++n_out;
      }
    }
    if (n_in == 0 || n_out == 0 || outside == 0.0) {
      out[r] = 0.0;
      continue;
    }
    out[r] = linear_to_db((inside / static_cast<double>(n_in)) /
                          (outside / static_cast<double>(n_out)));
  }
  return out;
}

}  // namespace isacsim
