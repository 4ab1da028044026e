#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "isacsim/budget.hpp"
#include "isacsim/clutter.hpp"
#include "isacsim/detect.hpp"
#include "isacsim/frame.hpp"
#include "isacsim/scene.hpp"
#include "isacsim/track.hpp"
#include "isacsim/waveform.hpp"

namespace isacsim {

/// Optional per-CPI override of a target's kinematics; between waypoints the
/// target closes radially at its current velocity.
struct TargetWaypoint {
  std::size_t cpi = 0;
  double range_m = 0.0;
  double velocity_mps = 0.0;
  double azimuth_deg = 0.0;
};

struct ScenarioTarget {
  TargetSpec spec;
  std::vector<TargetWaypoint> waypoints;
};

struct NlmsSection {
  bool enabled = true;
  NlmsConfig config;
  bool retrain_each_cpi = false;
};

struct MtiSection {
  bool enabled = true;
  std::size_t order = 1;
};

struct CfpsSection {
  bool enabled = true;
  double pfa = 0.01;
  double concavity = 16.0;
  std::size_t smoothing_window = 3;
  std::size_t poly_order = 2;
  std::size_t fit_halfwidth = 4;
  double zero_doppler_guard_hz = 0.0;  // 0 = one Doppler bin
  std::size_t training_cpis = 4;
  std::size_t max_training_features = 4000;
  RegionMode mode = RegionMode::AllFeatures;
  std::string region_file;  // non-empty: load instead of training
};

struct TrackingSection {
  bool enabled = true;
  std::string source = "cfps";  // cfps | ca_cfar | both
  double gate_mahalanobis_sq = 16.0;
  double self_transition = 0.95;
  double range_std_m = 0.0;       // 0 = half a range bin
  double velocity_std_mps = 0.0;  // 0 = half a velocity bin
  double azimuth_std_deg = 2.0;
};

struct ProcessingSection {
  WindowKind doppler_window = WindowKind::Hann;
  NlmsSection nlms;
  MtiSection mti;
  CfarConfig cfar;
  CfpsSection cfps;
  TrackingSection tracking;
  std::optional<std::size_t> combine_channel;  // empty = noncoherent sum
};

/// Parsed scenario: frame + scene + link + processing + run controls.
struct Scenario {
  Numerology numerology;
  SlotPattern pattern;
  std::vector<std::size_t> sensing_slots;
  std::size_t pulses_per_cpi = 256;
  std::optional<double> pri_override_s;

  std::vector<ScenarioTarget> targets;
  std::vector<ClutterScatterer> clutter;
  ImpairmentConfig impairments;
  double noise_floor = 1.0;
  double receive_window_m = 0.0;
  ChirpSpec chirp;
  std::optional<double> direct_path_isolation_db;

  LinkParams link;
  RxArray array;
  ProcessingSection processing;
  RateAccounting rates{800.79e6, 791.18e6};

  std::size_t num_cpis = 1;
  std::uint64_t seed = 1;

  /// Schedule built from the frame sections (PRI override applied last).
  SensingSchedule schedule() const;
};

/// Strict parser: unknown keys anywhere in the document are errors, as are
/// missing required fields. Units are part of key names (range_m, pri_ms...).
Scenario parse_scenario(const std::string& json_text);
Scenario load_scenario(const std::string& path);

/// FNV-1a hash of the canonical (sorted-key) form of the scenario document;
/// any field change alters it.
std::string scenario_hash(const std::string& json_text);

}  // namespace isacsim
