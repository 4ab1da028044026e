#include "isacsim/scene.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "isacsim/errors.hpp"
#include "isacsim/fft.hpp"
#include "isacsim/rng.hpp"
#include "isacsim/units.hpp"

namespace isacsim {
namespace {

constexpr std::uint64_t kNoiseStreamBase = 0x100;
constexpr std::uint64_t kJitterStream = 0x200;

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

/// Normalized Doppler in turns per pulse, reduced mod 1 before any phase is
/// formed. Reducing here makes aliased velocities (v and v + 2 v_unamb)
/// numerically indistinguishable, which is exactly how a pulsed sampler
/// behaves.
double normalized_doppler(double velocity_mps, double pri_s, double wavelength_m) {
  double nu = std::fmod(2.0 * velocity_mps * pri_s / wavelength_m, 1.0);
  if (nu < 0) nu += 1.0;
  return nu;
}

struct Entity {
  double range_m;
  double amplitude;        // per-sample echo amplitude scale
  double doppler_turns;    // normalized Doppler, [0, 1)
  double azimuth_rad;
  std::complex<double> carrier_phase;  // exp(-j 4 pi R / lambda)
};

}  // namespace

void TargetSpec::validate() const {
  if (range_m <= 0) throw ConfigError("target: range must be positive");
  if (rcs_m2 <= 0) throw ConfigError("target: rcs must be positive");
}

void ClutterScatterer::validate() const {
  if (range_m <= 0) throw ConfigError("clutter: range must be positive");
  if (!std::isfinite(cnr_db)) throw ConfigError("clutter: cnr_db must be finite");
}

void ImpairmentConfig::validate() const {
  if (phase_jitter_std_rad < 0 || amplitude_jitter_std < 0) {
    throw ConfigError("impairments: jitter stds must be >= 0");
  }
  if (jitter_correlation < 0 || jitter_correlation >= 1) {
    throw ConfigError("impairments: jitter_correlation must lie in [0, 1)");
  }
  if (saturation_enabled() && saturation_level_db != saturation_level_db) {
    throw ConfigError("impairments: saturation level must be a number or +inf");
  }
}

void RxArray::validate() const {
  if (num_channels < 1) throw ConfigError("rx array: at least one channel required");
  if (element_spacing_wl <= 0) throw ConfigError("rx array: spacing must be positive");
}

void SceneConfig::validate() const {
  for (const auto& t : targets) t.validate();
  for (const auto& c : clutter) c.validate();
  impairments.validate();
  if (noise_floor <= 0) throw ConfigError("scene: noise_floor must be positive");
  if (receive_window_m < 0) throw ConfigError("scene: receive_window_m must be >= 0");
}

std::vector<std::complex<double>> apply_saturation(
    const std::vector<std::complex<double>>& samples, double level) {
  if (level <= 0) throw ConfigError("apply_saturation: level must be positive");
  std::vector<std::complex<double>> out(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    double mag = std::abs(samples[i]);
    if (mag == 0.0) {
      out[i] = samples[i];
    } else {
      out[i] = samples[i] * (level * std::tanh(mag / level) / mag);
    }
  }
  return out;
}

double rcs_to_cnr_db(const LinkParams& link, double range_m, double rcs_m2,
                     double useful_symbol_samples) {
  LinkParams p = link;
  p.rcs_m2 = rcs_m2;
  // Per-sample echo power over the symbol extent vs the unit noise floor.
  double snr1 = single_pulse_snr_linear(p, range_m);
  return linear_to_db(snr1 / useful_symbol_samples);
}

PulseMatrix simulate_cpi(const SceneConfig& scene, const Numerology& numerology,
                         const SensingSchedule& schedule, const BasebandSymbol& symbol,
                         const LinkParams& link, const RxArray& array) {
  scene.validate();
  array.validate();
  if (schedule.pulses_per_cpi < 2) {
    throw ConfigError("simulate_cpi: pulses_per_cpi must be >= 2");
  }

  const double fs = symbol.sample_rate_hz;
  const std::size_t useful_len = symbol.useful_length();
  const double symbol_energy = symbol.useful_energy();
  const double lambda = link.wavelength_m;
  const double pri = schedule.pri_s;
  const std::size_t pulses = schedule.pulses_per_cpi;

  // Receive window: either sized to cover the configured extent or to the
  // farthest scatterer in the scene.
  double max_range = scene.receive_window_m;
  if (max_range == 0.0) {
    for (const auto& t : scene.targets) max_range = std::max(max_range, t.range_m);
    for (const auto& c : scene.clutter) max_range = std::max(max_range, c.range_m);
  }
  const double max_delay_samples = 2.0 * max_range / kSpeedOfLight * fs;
  const std::size_t window =
      next_pow2(useful_len + static_cast<std::size_t>(std::ceil(max_delay_samples)) + 8);

  // Collect targets and clutter into a common echo description.
  std::vector<Entity> entities;
  auto carrier = [lambda](double range) {
    double turns = std::fmod(-2.0 * range / lambda, 1.0);
    return std::polar(1.0, 2.0 * kPi * turns);
  };
  for (const auto& t : scene.targets) {
    LinkParams p = link;
    p.rcs_m2 = t.rcs_m2;
    double snr1 = single_pulse_snr_linear(p, t.range_m);
    double amp = std::sqrt(snr1 * scene.noise_floor / symbol_energy);
    entities.push_back({t.range_m, amp, normalized_doppler(t.radial_velocity_mps, pri, lambda),
                        deg_to_rad(t.azimuth_deg), carrier(t.range_m)});
  }
  double strongest_rms = 0.0;
  for (const auto& c : scene.clutter) {
    double per_sample = db_to_linear(c.cnr_db) * scene.noise_floor;
    double amp = std::sqrt(per_sample * static_cast<double>(useful_len) / symbol_energy);
    strongest_rms = std::max(strongest_rms, std::sqrt(per_sample));
    entities.push_back({c.range_m, amp, 0.0, deg_to_rad(c.azimuth_deg), carrier(c.range_m)});
  }
  if (strongest_rms == 0.0) {
    // no clutter: reference the limiter to the strongest target instead
    for (const auto& e : entities) {
      strongest_rms = std::max(
          strongest_rms, e.amplitude * std::sqrt(symbol_energy / static_cast<double>(useful_len)));
    }
  }

  // Base spectrum of the useful symbol part padded to the window; per-entity
  // fractional delay is a linear phase ramp on signed frequencies.
  std::vector<std::complex<double>> base(window, {0.0, 0.0});
  std::copy(symbol.time_domain.begin() + static_cast<std::ptrdiff_t>(symbol.cp_length),
            symbol.time_domain.end(), base.begin());
  fft::forward_inplace(base.data(), window);

  std::vector<std::vector<std::complex<double>>> delayed(entities.size());
  const std::size_t half = window / 2;
  for (std::size_t e = 0; e < entities.size(); ++e) {
    double delay = 2.0 * entities[e].range_m / kSpeedOfLight * fs;
    if (delay + static_cast<double>(useful_len) > static_cast<double>(window)) {
      std::ostringstream os;
      os << "simulate_cpi: scatterer at " << entities[e].range_m
         << " m exceeds the receive window";
      throw RangeBeyondWindow(os.str());
    }
    std::vector<std::complex<double>> spec(window);
    for (std::size_t k = 0; k < window; ++k) {
      double freq = (k <= half) ? static_cast<double>(k)
                                : static_cast<double>(k) - static_cast<double>(window);
      double turns = std::fmod(-freq * delay / static_cast<double>(window), 1.0);
      spec[k] = base[k] * std::polar(1.0, 2.0 * kPi * turns);
    }
    fft::inverse_inplace(spec.data(), window);
    delayed[e] = std::move(spec);
  }

  // Per-pulse jitter sequence, common to all channels/entities: AR(1) phase
  // and amplitude with stationary stds from the config.
  const auto& imp = scene.impairments;
  std::vector<std::complex<double>> jitter(pulses, {1.0, 0.0});
  if (imp.phase_jitter_std_rad > 0 || imp.amplitude_jitter_std > 0) {
    Rng jrng = Rng::derive(scene.seed, kJitterStream);
    const double rho = imp.jitter_correlation;
    const double innov = std::sqrt(1.0 - rho * rho);
    double theta = imp.phase_jitter_std_rad * jrng.gaussian();
    double a = imp.amplitude_jitter_std * jrng.gaussian();
    for (std::size_t n = 0; n < pulses; ++n) {
      if (n > 0) {
        theta = rho * theta + imp.phase_jitter_std_rad * innov * jrng.gaussian();
        a = rho * a + imp.amplitude_jitter_std * innov * jrng.gaussian();
      }
      jitter[n] = std::polar(1.0 + a, theta);
    }
  }

  PulseMatrix matrix(window, pulses, array.num_channels);
  matrix.sample_rate_hz = fs;
  matrix.pulse_times_s = pulse_times(schedule);
  matrix.origin = MatrixOrigin::Raw;

  for (std::size_t e = 0; e < entities.size(); ++e) {
    const Entity& ent = entities[e];
    const std::complex<double> base_coef = ent.amplitude * ent.carrier_phase;
    const double sin_az = std::sin(ent.azimuth_rad);
    for (std::size_t c = 0; c < array.num_channels; ++c) {
      double steer_turns = std::fmod(
          -array.element_spacing_wl * static_cast<double>(c) * sin_az, 1.0);
      const std::complex<double> steer = std::polar(1.0, 2.0 * kPi * steer_turns);
      for (std::size_t n = 0; n < pulses; ++n) {
        double turns = std::fmod(ent.doppler_turns * static_cast<double>(n), 1.0);
        std::complex<double> coef =
            base_coef * steer * std::polar(1.0, 2.0 * kPi * turns) * jitter[n];
        std::complex<double>* dst = matrix.pulse_data(c, n);
        const std::complex<double>* src = delayed[e].data();
        for (std::size_t k = 0; k < window; ++k) dst[k] += coef * src[k];
      }
    }
  }

  if (imp.saturation_enabled() && strongest_rms > 0.0) {
    const double level = strongest_rms * db_to_amplitude(imp.saturation_level_db);
    for (auto& v : matrix.storage()) {
      double mag = std::abs(v);
      if (mag > 0.0) v *= level * std::tanh(mag / level) / mag;
    }
  }

  const double sigma = std::sqrt(scene.noise_floor);
  for (std::size_t c = 0; c < array.num_channels; ++c) {
    Rng nrng = Rng::derive(scene.seed, kNoiseStreamBase + c);
    for (std::size_t n = 0; n < pulses; ++n) {
      std::complex<double>* dst = matrix.pulse_data(c, n);
      for (std::size_t k = 0; k < window; ++k) dst[k] += sigma * nrng.cgaussian();
    }
  }
  return matrix;
}

PulseMatrix inject_direct_path(PulseMatrix matrix, const BasebandSymbol& symbol,
                               double isolation_db, double tx_ref_db, double noise_floor) {
  if (isolation_db == std::numeric_limits<double>::infinity()) return matrix;
  if (!std::isfinite(isolation_db)) {
    throw ConfigError("inject_direct_path: isolation must be finite or +inf");
  }
  const std::size_t useful_len = symbol.useful_length();
  const double symbol_energy = symbol.useful_energy();
  // Per-sample leakage power sits (tx_ref_db - isolation_db) relative to the
  // noise floor.
  const double per_sample = noise_floor * db_to_linear(tx_ref_db - isolation_db);
  const double amp = std::sqrt(per_sample * static_cast<double>(useful_len) / symbol_energy);
  const std::size_t span = std::min(useful_len, matrix.fast_size());
  for (std::size_t c = 0; c < matrix.channel_count(); ++c) {
    for (std::size_t n = 0; n < matrix.slow_size(); ++n) {
      std::complex<double>* dst = matrix.pulse_data(c, n);
      for (std::size_t k = 0; k < span; ++k) {
        dst[k] += amp * symbol.time_domain[symbol.cp_length + k];
      }
    }
  }
  return matrix;
}

}  // namespace isacsim
