#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "isacsim/rdproc.hpp"

namespace isacsim {

// ---------------------------------------------------------------------------
// 2D cell-averaging CFAR
// ---------------------------------------------------------------------------

struct CfarConfig {
  std::size_t guard_range = 2;
  std::size_t guard_doppler = 2;
  std::size_t train_range = 8;
  std::size_t train_doppler = 4;
  double pfa = 1e-3;

  std::size_t training_cell_count() const;
  void validate() const;
};

enum class DetectorKind { CaCfar, CfpsCfar };

struct Detection {
  std::size_t range_bin = 0;
  std::size_t doppler_bin = 0;
  double range_m = 0.0;
  double velocity_mps = 0.0;
  double score = 0.0;  // test-statistic value
  DetectorKind detector = DetectorKind::CaCfar;
};

/// Cell-averaging CFAR with the exact exponential-background threshold
/// alpha = N (pfa^(-1/N) - 1). The Doppler axis is treated circularly, range
/// edges without a full window are skipped. Threshold crossings that have a
/// stronger crossing 8-neighbor are suppressed so clusters collapse to local
/// maxima. Throws WindowTooLarge when the map cannot hold the window.
std::vector<Detection> ca_cfar_2d(const RangeDopplerMap& map, const CfarConfig& cfg);

// ---------------------------------------------------------------------------
// Doppler-spectrum peak decomposition (feature branch)
// ---------------------------------------------------------------------------

/// Features of one fitted spectral peak.
struct PeakFeatures {
  double amplitude = 0.0;    // fitted apex, linear power
  double location_hz = 0.0;  // signed Doppler frequency of the apex
  double width_hz = 0.0;     // -3 dB width of the fitted peak
};

struct PeakExtractionConfig {
  std::size_t smoothing_window = 3;  // moving-average length before differencing
  std::size_t poly_order = 2;        // local fit order, on log power
  std::size_t fit_halfwidth = 4;     // bins each side of a candidate
  std::size_t dc_bin = 0;            // index of zero Doppler in the spectrum
  double hz_per_bin = 1.0;
  std::size_t separation_rounds = 1; // dominant-peak subtraction rounds
  std::size_t max_peaks = 8;

  void validate() const;
};

/// Smooths the spectrum, finds candidate peaks at sign changes of the first
/// difference (second difference negative), fits a local polynomial on log
/// power per candidate, and separates overlapping peaks by subtracting the
/// dominant fitted peak and re-searching. Throws NoPeaksFound when the
/// spectrum has no local maxima (e.g. constant input).
std::vector<PeakFeatures> extract_peak_features(const std::vector<double>& spectrum,
                                                const PeakExtractionConfig& cfg);

// ---------------------------------------------------------------------------
// Clutter-region learning and the CFPS decision
// ---------------------------------------------------------------------------

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

/// Andrew monotone-chain convex hull, counterclockwise without the closing
/// vertex. Collinear input throws DegenerateGeometry.
std::vector<Point2> convex_hull(std::vector<Point2> points);

/// k-nearest-neighbor concave hull (chi-shape style). Grows k until the
/// polygon is simple and encloses every input point; falls back to the
/// convex hull when k reaches the point count.
std::vector<Point2> knn_concave_hull(const std::vector<Point2>& points, std::size_t k);

/// Point-in-polygon with boundary counted as inside.
bool polygon_contains(const std::vector<Point2>& polygon, const Point2& p,
                      double eps = 1e-12);

enum class RegionMode { AllFeatures, LocationOnly };

/// Learned clutter decision region. Geometry lives in the normalized
/// (location, log-power amplitude) plane as a simple polygon, with the
/// width feature constrained to its retained interval; location remains the
/// primary statistic. The per-axis affine normalization is stored so the
/// region can be serialized for offline training / online detection.
struct ClutterRegion {
  std::vector<Point2> hull;      // normalized (location, log amplitude) polygon
  double width_min = 0.0;        // normalized width interval
  double width_max = 0.0;
  double location_extent_min = 0.0;  // normalized hull extent along location
  double location_extent_max = 0.0;
  double concavity = 0.0;        // k used for the hull; 0 = convex
  double trained_pfa = 0.0;
  RegionMode mode = RegionMode::AllFeatures;
  // Affine normalization per feature: normalized = (value - offset) * scale.
  double loc_offset = 0.0, loc_scale = 1.0;
  double amp_offset = 0.0, amp_scale = 1.0;  // applied to 10 log10(amplitude)
  double width_offset = 0.0, width_scale = 1.0;

  /// True when the feature vector is inside the clutter region (a normal,
  /// clutter-like peak).
  bool contains(const PeakFeatures& f) const;

  void serialize(std::ostream& os) const;
  static ClutterRegion deserialize(std::istream& is);
  void save(const std::string& path) const;
  static ClutterRegion load(const std::string& path);
};

/// Learns the clutter region from clutter-only training features: per-axis
/// affine normalization, trimming of the pfa fraction of points farthest
/// from the centroid, then the concave hull over the retained points.
/// concavity = 0 selects the plain convex hull. Throws TooFewSamples
/// (< 200) and DegenerateGeometry (collinear points).
ClutterRegion learn_clutter_region(const std::vector<PeakFeatures>& training_features,
                                   double pfa, double concavity,
                                   RegionMode mode = RegionMode::AllFeatures);

/// Per-cell CFPS decision: returns the indices of peaks that are anomalous,
/// i.e. outside the clutter region (or, as the primary location statistic,
/// beyond the region's location extent) and outside the +-zero_doppler_guard
/// band.
std::vector<std::size_t> cfps_classify(const std::vector<PeakFeatures>& features,
                                       const ClutterRegion& region,
                                       double zero_doppler_guard_hz);

/// Map-level CFPS detection: feature extraction per range cell followed by
/// the per-cell decision, reported as detections with physical coordinates.
std::vector<Detection> cfps_detect(const RangeDopplerMap& map,
                                   const PeakExtractionConfig& extraction,
                                   const ClutterRegion& region,
                                   double zero_doppler_guard_hz);

}  // namespace isacsim
