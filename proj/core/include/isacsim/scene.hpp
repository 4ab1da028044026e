#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "isacsim/budget.hpp"
#include "isacsim/frame.hpp"
#include "isacsim/pulse_matrix.hpp"
#include "isacsim/waveform.hpp"

namespace isacsim {

/// A point target. radial_velocity is the closing speed: positive values
/// approach the station and produce positive Doppler (f_d = 2 v / lambda).
struct TargetSpec {
  double range_m = 0.0;
  double radial_velocity_mps = 0.0;
  double rcs_m2 = 0.1;
  double azimuth_deg = 0.0;

  void validate() const;
};

/// A static strong reflector, specified by its per-pulse clutter-to-noise
/// ratio at the receiver before any processing (time-averaged over the
/// symbol). Radial velocity is identically zero.
struct ClutterScatterer {
  double range_m = 0.0;
  double cnr_db = 0.0;
  double azimuth_deg = 0.0;

  void validate() const;
};

/// Transceiver imperfections. Phase/amplitude jitter are per-pulse
/// multiplicative sequences exp(j theta_n) (1 + a_n) with first-order
/// autoregressive correlation, so sidelobe energy concentrates near the
/// carrier the way real oscillators behave. Saturation is a tanh soft
/// limiter referenced to the RMS of the strongest clutter return;
/// +infinity disables it.
struct ImpairmentConfig {
  double phase_jitter_std_rad = 0.0;
  double amplitude_jitter_std = 0.0;
  double saturation_level_db = std::numeric_limits<double>::infinity();
  double jitter_correlation = 0.9;

  bool saturation_enabled() const {
    return saturation_level_db != std::numeric_limits<double>::infinity();
  }
  void validate() const;
};

/// Uniform linear Rx array along the y axis; boresight is +x and azimuth is
/// measured from boresight toward +y. Channel c carries the steering phase
/// exp(-j 2 pi d c sin(az)) with d in wavelengths.
struct RxArray {
  std::size_t num_channels = 4;
  double element_spacing_wl = 0.5;

  void validate() const;
};

struct SceneConfig {
  std::vector<TargetSpec> targets;
  std::vector<ClutterScatterer> clutter;
  ImpairmentConfig impairments;
  double noise_floor = 1.0;   // per-sample complex noise power E|n|^2
  double receive_window_m = 0.0;  // 0 = size the window to the scene
  std::uint64_t seed = 1;

  void validate() const;
};

/// Simulates one CPI of received echoes. Echo amplitudes are calibrated so
/// that against the configured noise floor the matched-filter/Doppler chain
/// reproduces the radar-equation SNR for targets and the configured CNR for
/// clutter. Deterministic for a given seed; the noise and jitter streams
/// are decoupled from scene content so echoes superpose linearly.
PulseMatrix simulate_cpi(const SceneConfig& scene, const Numerology& numerology,
                         const SensingSchedule& schedule, const BasebandSymbol& symbol,
                         const LinkParams& link, const RxArray& array);

/// tanh soft limiter: |y| = level * tanh(|x| / level), phase preserved.
std::vector<std::complex<double>> apply_saturation(
    const std::vector<std::complex<double>>& samples, double level);

/// Adds the zero-delay, zero-Doppler transmit copy attenuated by
/// isolation_db below the tx reference level (tx_ref_db over the unit noise
/// floor, default matched to it). A +infinity isolation leaves the matrix
/// untouched.
PulseMatrix inject_direct_path(PulseMatrix matrix, const BasebandSymbol& symbol,
                               double isolation_db, double tx_ref_db = 0.0,
                               double noise_floor = 1.0);

/// Clutter CNR implied by an RCS through the link budget, for configuring
/// scatterers from physical descriptions.
double rcs_to_cnr_db(const LinkParams& link, double range_m, double rcs_m2,
                     double useful_symbol_samples);

}  // namespace isacsim
