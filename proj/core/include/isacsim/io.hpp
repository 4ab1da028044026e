#pragma once

#include <string>
#include <vector>

#include "isacsim/detect.hpp"
#include "isacsim/pulse_matrix.hpp"
#include "isacsim/rdproc.hpp"
#include "isacsim/waveform.hpp"

namespace isacsim {

/// Pulse matrix as little-endian float32 interleaved (I,Q) at <base>.iq with
/// a JSON sidecar <base>.iqh describing dimensions, sample rate and pulse
/// times. Sample order matches memory layout: channel, pulse, fast time.
void write_iq(const std::string& base_path, const PulseMatrix& matrix);
PulseMatrix read_iq(const std::string& base_path);

/// Symbol I/Q export (same float32 interleaved layout, no sidecar).
void write_symbol_iq(const std::string& path, const BasebandSymbol& symbol);

/// Map exports: CSV with axis header rows, and float32 binary + sidecar.
void write_map_csv(const std::string& path, const RangeDopplerMap& map);
void write_map_binary(const std::string& base_path, const RangeDopplerMap& map);

void write_detections_csv(const std::string& path, const std::vector<Detection>& detections);

/// One tracker output row per (scan, track).
struct TrackRow {
  double timestamp_s = 0.0;
  int id = 0;
  double x_m = 0.0, y_m = 0.0;
  double vx_mps = 0.0, vy_mps = 0.0;
  std::string dominant_model;
  std::vector<double> model_probabilities;
};
void write_tracks_csv(const std::string& path, const std::vector<TrackRow>& rows);

void write_residual_history_csv(const std::string& path, const std::vector<double>& history);

}  // namespace isacsim
