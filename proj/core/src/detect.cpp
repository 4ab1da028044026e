#include "isacsim/detect.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>

#include "isacsim/errors.hpp"
#include "isacsim/units.hpp"

namespace isacsim {

// ---------------------------------------------------------------------------
// CA-CFAR
// ---------------------------------------------------------------------------

std::size_t CfarConfig::training_cell_count() const {
  const std::size_t outer =
      (2 * (guard_range + train_range) + 1) * (2 * (guard_doppler + train_doppler) + 1);
  const std::size_t inner = (2 * guard_range + 1) * (2 * guard_doppler + 1);
  return outer - inner;
}

void CfarConfig::validate() const {
  if (pfa <= 0 || pfa >= 1) throw ConfigError("cfar: pfa must lie in (0, 1)");
  if (train_range == 0 && train_doppler == 0) {
    throw ConfigError("cfar: at least one training dimension required");
  }
  if (training_cell_count() < 8) {
    throw ConfigError("cfar: training cell count must be >= 8");
  }
}

std::vector<Detection> ca_cfar_2d(const RangeDopplerMap& map, const CfarConfig& cfg) {
  cfg.validate();
  const std::size_t nr = map.range_size();
  const std::size_t nd = map.doppler_size();
  const std::size_t wr = cfg.guard_range + cfg.train_range;
  const std::size_t wd = cfg.guard_doppler + cfg.train_doppler;
  if (nr <= 2 * wr || nd < 2 * wd + 1) {
    throw WindowTooLarge("ca_cfar_2d: map smaller than the CFAR window");
  }

  const double n_train = static_cast<double>(cfg.training_cell_count());
  const double alpha = n_train * (std::pow(cfg.pfa, -1.0 / n_train) - 1.0);

  // Summed-area table over the map with the Doppler axis circularly padded
  // by wd columns on both sides, so every window read is three adds.
  const std::size_t pw = nd + 2 * wd;
  std::vector<double> sat((nr + 1) * (pw + 1), 0.0);
  auto sat_at = [&sat, pw](std::size_t i, std::size_t j) -> double& {
    return sat[i * (pw + 1) + j];
  };
  for (std::size_t i = 0; i < nr; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < pw; ++j) {
      const std::size_t d = (j + nd - (wd % nd)) % nd;
      row += map.at(i, d);
      sat_at(i + 1, j + 1) = sat_at(i, j + 1) + row;
    }
  }
  auto box_sum = [&sat_at](std::size_t r0, std::size_t r1, std::size_t c0, std::size_t c1) {
    // inclusive box in map/padded coordinates
    return sat_at(r1 + 1, c1 + 1) - sat_at(r0, c1 + 1) - sat_at(r1 + 1, c0) + sat_at(r0, c0);
  };

  std::vector<double> score(nr * nd, 0.0);
  std::vector<char> crossing(nr * nd, 0);
  for (std::size_t r = wr; r + wr < nr; ++r) {
    for (std::size_t d = 0; d < nd; ++d) {
      const std::size_t pc = d + wd;  // padded column of the CUT
      const double outer = box_sum(r - wr, r + wr, pc - wd, pc + wd);
      const double inner = box_sum(r - cfg.guard_range, r + cfg.guard_range,
                                   pc - cfg.guard_doppler, pc + cfg.guard_doppler);
      const double mean = (outer - inner) / n_train;
      const double cut = map.at(r, d);
      if (mean > 0 && cut > alpha * mean) {
        crossing[r * nd + d] = 1;
        score[r * nd + d] = cut / mean;
      } else if (mean == 0 && cut > 0) {
        crossing[r * nd + d] = 1;
        score[r * nd + d] = std::numeric_limits<double>::infinity();
      }
    }
  }

  // Cluster consolidation: keep a crossing only if no crossing 8-neighbor is
  // strictly stronger (ties broken towards the lexicographically first cell).
  std::vector<Detection> detections;
  for (std::size_t r = wr; r + wr < nr; ++r) {
    for (std::size_t d = 0; d < nd; ++d) {
      if (!crossing[r * nd + d]) continue;
      const double p = map.at(r, d);
      bool is_max = true;
      for (int dr = -1; dr <= 1 && is_max; ++dr) {
        for (int dd = -1; dd <= 1; ++dd) {
          if (dr == 0 && dd == 0) continue;
          const std::ptrdiff_t rr = static_cast<std::ptrdiff_t>(r) + dr;
          if (rr < 0 || rr >= static_cast<std::ptrdiff_t>(nr)) continue;
          const std::size_t ddw = (d + nd + static_cast<std::size_t>(dd + static_cast<int>(nd))) % nd;
          if (!crossing[static_cast<std::size_t>(rr) * nd + ddw]) continue;
          const double q = map.at(static_cast<std::size_t>(rr), ddw);
          if (q > p || (q == p && (static_cast<std::size_t>(rr) < r ||
                                   (static_cast<std::size_t>(rr) == r && ddw < d)))) {
            is_max = false;
            break;
          }
        }
      }
      if (!is_max) continue;
      Detection det;
      det.range_bin = r;
      det.doppler_bin = d;
      det.range_m = map.range_axis_m[r];
      det.velocity_mps = map.velocity_axis_mps[d];
      det.score = score[r * nd + d];
      det.detector = DetectorKind::CaCfar;
      detections.push_back(det);
    }
  }
  return detections;
}

// ---------------------------------------------------------------------------
// Peak feature extraction
// ---------------------------------------------------------------------------

void PeakExtractionConfig::validate() const {
  if (smoothing_window == 0) throw ConfigError("peak extraction: smoothing_window >= 1");
  if (poly_order < 2) throw ConfigError("peak extraction: poly_order must be >= 2");
  if (fit_halfwidth < 1) throw ConfigError("peak extraction: fit_halfwidth must be >= 1");
  if (hz_per_bin <= 0) throw ConfigError("peak extraction: hz_per_bin must be positive");
  if (max_peaks == 0) throw ConfigError("peak extraction: max_peaks must be >= 1");
}

namespace {

constexpr double kLogFloor = 1e-300;

std::vector<double> smooth_circular(const std::vector<double>& s, std::size_t window) {
  const std::size_t n = s.size();
  const std::size_t h = window / 2;
  if (h == 0) return s;
  std::vector<double> out(n, 0.0);
  const double inv = 1.0 / static_cast<double>(2 * h + 1);
  for (std::size_t i = 0; i < n; ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j <= 2 * h; ++j) {
      acc += s[(i + n + j - h) % n];
    }
    out[i] = acc * inv;
  }
  return out;
}

/// Local maxima by sign change of the first difference with a negative
/// second difference, circular indexing.
std::vector<std::size_t> find_candidates(const std::vector<double>& s) {
  const std::size_t n = s.size();
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < n; ++i) {
    const double prev = s[(i + n - 1) % n];
    const double next = s[(i + 1) % n];
    const double d_prev = s[i] - prev;
    const double d_next = next - s[i];
    const double second = next - 2.0 * s[i] + prev;
    if (d_prev > 0 && d_next <= 0 && second < 0) out.push_back(i);
  }
  return out;
}

struct FittedPeak {
  bool ok = false;
  double apex_bin = 0.0;   // absolute (possibly fractional) spectrum bin
  double amplitude = 0.0;  // linear power at the apex
  double width_bins = 0.0;
  double quad_a = 0.0;     // curvature of the log fit (order-2 model)
};

FittedPeak fit_candidate(const std::vector<double>& s, std::size_t i0,
                         const PeakExtractionConfig& cfg) {
  const std::size_t n = s.size();
  const std::size_t h = cfg.fit_halfwidth;
  const std::size_t m = 2 * h + 1;
  const std::size_t order = std::min<std::size_t>(cfg.poly_order, m - 1);

  Eigen::MatrixXd vand(m, order + 1);
  Eigen::VectorXd y(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double x = static_cast<double>(i) - static_cast<double>(h);
    double v = 1.0;
    for (std::size_t p = 0; p <= order; ++p) {
      vand(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(p)) = v;
      v *= x;
    }
    const std::size_t bin = (i0 + n + i - h) % n;
    y(static_cast<Eigen::Index>(i)) = std::log(std::max(s[bin], kLogFloor));
  }
  Eigen::VectorXd coef = vand.colPivHouseholderQr().solve(y);

  FittedPeak peak;
  auto poly = [&coef](double x) {
    double v = 0.0;
    for (Eigen::Index p = coef.size() - 1; p >= 0; --p) v = v * x + coef(p);
    return v;
  };

  double apex_x;
  if (order == 2) {
    const double a = coef(2), b = coef(1);
    if (!(a < -1e-12)) return peak;  // not concave at the candidate
    apex_x = -b / (2.0 * a);
    peak.quad_a = a;
  } else {
    // General order: coarse grid max then quadratic refinement.
    double best_x = 0.0, best_v = -std::numeric_limits<double>::infinity();
    const int grid = 64;
    for (int g = -grid; g <= grid; ++g) {
      const double x = static_cast<double>(g) * static_cast<double>(h) / grid;
      const double v = poly(x);
      if (v > best_v) { best_v = v; best_x = x; }
    }
    const double dx = static_cast<double>(h) / grid;
    const double vm = poly(best_x - dx), vp = poly(best_x + dx);
    const double denom = vm - 2.0 * best_v + vp;
    apex_x = best_x + ((denom < 0) ? 0.5 * dx * (vm - vp) / denom : 0.0);
    peak.quad_a = denom / (dx * dx) * 0.5;
    if (!(peak.quad_a < 0)) return peak;
  }
  apex_x = std::clamp(apex_x, -static_cast<double>(h), static_cast<double>(h));

  const double apex_log = poly(apex_x);
  peak.amplitude = std::exp(apex_log);
  if (order == 2) {
    peak.width_bins = 2.0 * std::sqrt(std::log(2.0) / -peak.quad_a);
  } else {
    // Scan outwards for the half-power crossings of the fitted curve.
    const double target = apex_log - std::log(2.0);
    auto crossing = [&](double dir) {
      double x = apex_x;
      const double step = 0.01 * static_cast<double>(h);
      for (int i = 0; i < 300; ++i) {
        const double nx = x + dir * step;
        if (std::abs(nx) > static_cast<double>(h)) break;
        if (poly(nx) <= target) {
          return std::abs(nx - apex_x);
        }
        x = nx;
      }
      return static_cast<double>(h);
    };
    peak.width_bins = crossing(+1.0) + crossing(-1.0);
  }
  if (!(peak.width_bins > 0) || !std::isfinite(peak.amplitude)) return peak;
  peak.apex_bin = static_cast<double>(i0) + apex_x;
  peak.ok = true;
  return peak;
}

double wrap_to_signed(double bin, std::size_t n) {
  const double nn = static_cast<double>(n);
  double v = std::fmod(bin, nn);
  if (v < 0) v += nn;
  if (v >= nn / 2.0) v -= nn;
  return v;
}

}  // namespace

std::vector<PeakFeatures> extract_peak_features(const std::vector<double>& spectrum,
                                                const PeakExtractionConfig& cfg) {
  cfg.validate();
  const std::size_t n = spectrum.size();
  if (n < 16) throw ConfigError("extract_peak_features: spectrum length must be >= 16");

  std::vector<double> smoothed = smooth_circular(spectrum, cfg.smoothing_window);
  std::vector<std::size_t> candidates = find_candidates(smoothed);
  if (candidates.empty()) {
    throw NoPeaksFound("extract_peak_features: spectrum has no local maxima");
  }

  std::vector<FittedPeak> fitted;
  for (std::size_t c : candidates) {
    FittedPeak p = fit_candidate(smoothed, c, cfg);
    if (p.ok) fitted.push_back(p);
  }

  // One (or more) separation rounds: subtract the strongest fitted peak in
  // the linear domain and search the residual for peaks it was masking.
  std::vector<double> residual = smoothed;
  const double floor_value =
      1e-12 * std::max(kLogFloor, *std::max_element(smoothed.begin(), smoothed.end()));
  for (std::size_t round = 0; round < cfg.separation_rounds && !fitted.empty(); ++round) {
    const auto dominant = std::max_element(
        fitted.begin(), fitted.end(),
        [](const FittedPeak& a, const FittedPeak& b) { return a.amplitude < b.amplitude; });
    if (!(dominant->quad_a < 0)) break;
    for (std::size_t i = 0; i < n; ++i) {
      // circular distance from the fitted apex
      const double dist =
          std::remainder(static_cast<double>(i) - dominant->apex_bin, static_cast<double>(n));
      const double model = dominant->amplitude * std::exp(dominant->quad_a * dist * dist);
      residual[i] = std::max(residual[i] - model, floor_value);
    }
    for (std::size_t c : find_candidates(residual)) {
      FittedPeak p = fit_candidate(residual, c, cfg);
      if (!p.ok) continue;
      bool duplicate = false;
      for (const auto& existing : fitted) {
        if (std::abs(std::remainder(existing.apex_bin - p.apex_bin,
                                    static_cast<double>(n))) < 1.0) {
          duplicate = true;
          break;
        }
      }
      if (!duplicate) fitted.push_back(p);
    }
  }

  if (fitted.empty()) {
    throw NoPeaksFound("extract_peak_features: no candidate survived the local fit");
  }
  std::sort(fitted.begin(), fitted.end(),
            [](const FittedPeak& a, const FittedPeak& b) { return a.amplitude > b.amplitude; });
  if (fitted.size() > cfg.max_peaks) fitted.resize(cfg.max_peaks);

  std::vector<PeakFeatures> out;
  out.reserve(fitted.size());
  for (const auto& p : fitted) {
    PeakFeatures f;
    f.amplitude = p.amplitude;
    f.location_hz =
        wrap_to_signed(p.apex_bin - static_cast<double>(cfg.dc_bin), n) * cfg.hz_per_bin;
    f.width_hz = p.width_bins * cfg.hz_per_bin;
    out.push_back(f);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Hull geometry
// ---------------------------------------------------------------------------

namespace {

double cross(const Point2& o, const Point2& a, const Point2& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

double dist2(const Point2& a, const Point2& b) {
  const double dx = a.x - b.x, dy = a.y - b.y;
  return dx * dx + dy * dy;
}

std::vector<Point2> dedupe(std::vector<Point2> pts) {
  std::sort(pts.begin(), pts.end(), [](const Point2& a, const Point2& b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  });
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](const Point2& a, const Point2& b) {
                          return std::abs(a.x - b.x) < 1e-12 && std::abs(a.y - b.y) < 1e-12;
                        }),
            pts.end());
  return pts;
}

/// Proper segment intersection, shared endpoints not counted.
bool segments_intersect(const Point2& a, const Point2& b, const Point2& c, const Point2& d) {
  const double d1 = cross(c, d, a);
  const double d2 = cross(c, d, b);
  const double d3 = cross(a, b, c);
  const double d4 = cross(a, b, d);
  if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) &&
      ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0))) {
    return true;
  }
  return false;
}

double point_segment_dist2(const Point2& p, const Point2& a, const Point2& b) {
  const double vx = b.x - a.x, vy = b.y - a.y;
  const double len2 = vx * vx + vy * vy;
  double t = 0.0;
  if (len2 > 0) t = std::clamp(((p.x - a.x) * vx + (p.y - a.y) * vy) / len2, 0.0, 1.0);
  const Point2 proj{a.x + t * vx, a.y + t * vy};
  return dist2(p, proj);
}

}  // namespace

std::vector<Point2> convex_hull(std::vector<Point2> points) {
  points = dedupe(std::move(points));
  const std::size_t n = points.size();
  if (n < 3) throw DegenerateGeometry("convex_hull: fewer than 3 distinct points");
  std::vector<Point2> hull(2 * n);
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {  // lower
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], points[i]) <= 0) --k;
    hull[k++] = points[i];
  }
  for (std::size_t i = n - 1, t = k + 1; i-- > 0;) {  // upper
    while (k >= t && cross(hull[k - 2], hull[k - 1], points[i]) <= 0) --k;
    hull[k++] = points[i];
  }
  hull.resize(k - 1);
  if (hull.size() < 3) throw DegenerateGeometry("convex_hull: all points collinear");
  return hull;
}

bool polygon_contains(const std::vector<Point2>& polygon, const Point2& p, double eps) {
  const std::size_t n = polygon.size();
  if (n < 3) return false;
  for (std::size_t i = 0; i < n; ++i) {
    if (point_segment_dist2(p, polygon[i], polygon[(i + 1) % n]) <= eps * eps) return true;
  }
  bool inside = false;
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Point2& a = polygon[i];
    const Point2& b = polygon[j];
    if ((a.y > p.y) != (b.y > p.y)) {
      const double x = (b.x - a.x) * (p.y - a.y) / (b.y - a.y) + a.x;
      if (p.x < x) inside = !inside;
    }
  }
  return inside;
}

namespace {

/// One attempt of the chi-shape walk with a fixed neighbor count.
bool try_knn_hull(const std::vector<Point2>& points, std::size_t k,
                  std::vector<Point2>& hull_out) {
  const std::size_t n = points.size();
  std::size_t first = 0;
  for (std::size_t i = 1; i < n; ++i) {
    if (points[i].y < points[first].y ||
        (points[i].y == points[first].y && points[i].x < points[first].x)) {
      first = i;
    }
  }

  std::vector<char> used(n, 0);
  std::vector<Point2> hull{points[first]};
  used[first] = 1;
  Point2 current = points[first];
  double prev_angle = 0.0;  // direction from current back to the previous vertex
  std::size_t step = 2;

  std::vector<std::size_t> candidates;
  while (true) {
    if (step == 5) used[first] = 0;  // allow closing the loop
    candidates.clear();
    for (std::size_t i = 0; i < n; ++i) {
      if (!used[i]) candidates.push_back(i);
    }
    if (candidates.empty()) return false;
    std::sort(candidates.begin(), candidates.end(), [&](std::size_t a, std::size_t b) {
      return dist2(points[a], current) < dist2(points[b], current);
    });
    if (candidates.size() > k) candidates.resize(k);

    // Largest clockwise turn from the previous edge first.
    std::sort(candidates.begin(), candidates.end(), [&](std::size_t a, std::size_t b) {
      const double aa = std::atan2(points[a].y - current.y, points[a].x - current.x);
      const double ab = std::atan2(points[b].y - current.y, points[b].x - current.x);
      double da = std::fmod(prev_angle - aa + 4.0 * kPi, 2.0 * kPi);
      double db = std::fmod(prev_angle - ab + 4.0 * kPi, 2.0 * kPi);
      if (da == 0.0) da = 2.0 * kPi;
      if (db == 0.0) db = 2.0 * kPi;
      return da > db;
    });

    std::size_t chosen = n;
    for (std::size_t cand : candidates) {
      const Point2& next = points[cand];
      // Only proper crossings count, so edges sharing an endpoint with the
      // proposed segment are safe to test as well.
      bool intersects = false;
      for (std::size_t e = 0; e + 1 < hull.size(); ++e) {
        if (segments_intersect(current, next, hull[e], hull[e + 1])) {
          intersects = true;
          break;
        }
      }
      if (!intersects) {
        chosen = cand;
        break;
      }
    }
    if (chosen == n) return false;

    if (chosen == first && step > 2) break;  // closed
    hull.push_back(points[chosen]);
    used[chosen] = 1;
    prev_angle = std::atan2(current.y - points[chosen].y, current.x - points[chosen].x);
    current = points[chosen];
    ++step;
    if (step > 4 * n + 8) return false;  // safety stop
  }

  if (hull.size() < 3) return false;
  // Every input point must lie inside or on the walked polygon.
  for (const auto& p : points) {
    if (!polygon_contains(hull, p, 1e-9)) return false;
  }
  hull_out = hull;
  return true;
}

}  // namespace

std::vector<Point2> knn_concave_hull(const std::vector<Point2>& points, std::size_t k) {
  std::vector<Point2> pts = dedupe(points);
  if (pts.size() < 3) throw DegenerateGeometry("knn_concave_hull: fewer than 3 distinct points");
  // Quick collinearity check.
  bool collinear = true;
  for (std::size_t i = 2; i < pts.size() && collinear; ++i) {
    if (std::abs(cross(pts[0], pts[1], pts[i])) > 1e-12) collinear = false;
  }
  if (collinear) throw DegenerateGeometry("knn_concave_hull: all points collinear");

  std::size_t kk = std::clamp<std::size_t>(k, 3, pts.size() - 1);
  for (; kk < pts.size(); ++kk) {
    std::vector<Point2> hull;
    if (try_knn_hull(pts, kk, hull)) return hull;
  }
  return convex_hull(pts);
}

// ---------------------------------------------------------------------------
// Clutter region
// ---------------------------------------------------------------------------

namespace {

double amplitude_db_of(const PeakFeatures& f) {
  return linear_to_db(std::max(f.amplitude, kLogFloor));
}

struct Affine {
  double offset = 0.0;
  double scale = 1.0;
};

Affine fit_affine(double lo, double hi) {
  Affine a;
  a.offset = lo;
  a.scale = (hi > lo) ? 1.0 / (hi - lo) : 1.0;
  return a;
}

}  // namespace

bool ClutterRegion::contains(const PeakFeatures& f) const {
  const double lx = (f.location_hz - loc_offset) * loc_scale;
  if (mode == RegionMode::LocationOnly) {
    return lx >= location_extent_min - 1e-12 && lx <= location_extent_max + 1e-12;
  }
  const double ly = (amplitude_db_of(f) - amp_offset) * amp_scale;
  const double lw = (f.width_hz - width_offset) * width_scale;
  if (lw < width_min - 1e-12 || lw > width_max + 1e-12) return false;
  return polygon_contains(hull, {lx, ly}, 1e-9);
}

ClutterRegion learn_clutter_region(const std::vector<PeakFeatures>& training_features,
                                   double pfa, double concavity, RegionMode mode) {
  if (training_features.size() < 200) {
    throw TooFewSamples("learn_clutter_region: at least 200 training samples required");
  }
  if (pfa < 0 || pfa >= 1) throw ConfigError("learn_clutter_region: pfa must lie in [0, 1)");
  if (concavity < 0) throw ConfigError("learn_clutter_region: concavity must be >= 0");

  const std::size_t m = training_features.size();
  std::vector<double> loc(m), amp(m), wid(m);
  for (std::size_t i = 0; i < m; ++i) {
    loc[i] = training_features[i].location_hz;
    amp[i] = amplitude_db_of(training_features[i]);
    wid[i] = training_features[i].width_hz;
  }
  auto minmax = [](const std::vector<double>& v) {
    auto [lo, hi] = std::minmax_element(v.begin(), v.end());
    return std::make_pair(*lo, *hi);
  };
  const auto [loc_lo, loc_hi] = minmax(loc);
  const auto [amp_lo, amp_hi] = minmax(amp);
  const auto [wid_lo, wid_hi] = minmax(wid);

  ClutterRegion region;
  region.mode = mode;
  region.trained_pfa = pfa;
  region.concavity = concavity;
  const Affine la = fit_affine(loc_lo, loc_hi);
  const Affine aa = fit_affine(amp_lo, amp_hi);
  const Affine wa = fit_affine(wid_lo, wid_hi);
  region.loc_offset = la.offset;
  region.loc_scale = la.scale;
  region.amp_offset = aa.offset;
  region.amp_scale = aa.scale;
  region.width_offset = wa.offset;
  region.width_scale = wa.scale;

  struct Norm3 {
    double x, y, w;
  };
  std::vector<Norm3> normalized(m);
  for (std::size_t i = 0; i < m; ++i) {
    normalized[i] = {(loc[i] - la.offset) * la.scale, (amp[i] - aa.offset) * aa.scale,
                     (wid[i] - wa.offset) * wa.scale};
  }

  // Trim the pfa fraction farthest from the centroid (in normalized space).
  Norm3 centroid{0, 0, 0};
  for (const auto& p : normalized) {
    centroid.x += p.x;
    centroid.y += p.y;
    centroid.w += p.w;
  }
  centroid.x /= static_cast<double>(m);
  centroid.y /= static_cast<double>(m);
  centroid.w /= static_cast<double>(m);
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), 0);
  auto dist_to_centroid = [&](std::size_t i) {
    const double dx = normalized[i].x - centroid.x;
    const double dy = normalized[i].y - centroid.y;
    const double dw = normalized[i].w - centroid.w;
    return dx * dx + dy * dy + dw * dw;
  };
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return dist_to_centroid(a) < dist_to_centroid(b); });
  const std::size_t trim = static_cast<std::size_t>(std::floor(pfa * static_cast<double>(m)));
  const std::size_t keep = m - trim;

  std::vector<Point2> plane;
  plane.reserve(keep);
  double wmin = std::numeric_limits<double>::infinity();
  double wmax = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < keep; ++i) {
    const auto& p = normalized[order[i]];
    plane.push_back({p.x, p.y});
    wmin = std::min(wmin, p.w);
    wmax = std::max(wmax, p.w);
  }
  region.width_min = wmin;
  region.width_max = wmax;

  region.hull = (concavity == 0.0)
                    ? convex_hull(plane)
                    : knn_concave_hull(plane, static_cast<std::size_t>(std::lround(concavity)));

  double xmin = std::numeric_limits<double>::infinity();
  double xmax = -std::numeric_limits<double>::infinity();
  for (const auto& v : region.hull) {
    xmin = std::min(xmin, v.x);
    xmax = std::max(xmax, v.x);
  }
  region.location_extent_min = xmin;
  region.location_extent_max = xmax;
  return region;
}

std::vector<std::size_t> cfps_classify(const std::vector<PeakFeatures>& features,
                                       const ClutterRegion& region,
                                       double zero_doppler_guard_hz) {
  std::vector<std::size_t> anomalous;
  for (std::size_t i = 0; i < features.size(); ++i) {
    const PeakFeatures& f = features[i];
    if (std::abs(f.location_hz) <= zero_doppler_guard_hz) continue;
    const double lx = (f.location_hz - region.loc_offset) * region.loc_scale;
    const bool beyond_extent =
        lx < region.location_extent_min - 1e-12 || lx > region.location_extent_max + 1e-12;
    if (beyond_extent || !region.contains(f)) anomalous.push_back(i);
  }
  return anomalous;
}

std::vector<Detection> cfps_detect(const RangeDopplerMap& map,
                                   const PeakExtractionConfig& extraction,
                                   const ClutterRegion& region,
                                   double zero_doppler_guard_hz) {
  const std::size_t nd = map.doppler_size();
  PeakExtractionConfig cfg = extraction;
  cfg.dc_bin = map.dc_bin();

  std::vector<Detection> detections;
  std::vector<double> spectrum(nd);
  for (std::size_t r = 0; r < map.range_size(); ++r) {
    for (std::size_t d = 0; d < nd; ++d) spectrum[d] = map.at(r, d);
    std::vector<PeakFeatures> features;
    try {
      features = extract_peak_features(spectrum, cfg);
    } catch (const NoPeaksFound&) {
      continue;
    }
    for (std::size_t idx : cfps_classify(features, region, zero_doppler_guard_hz)) {
      const PeakFeatures& f = features[idx];
      Detection det;
      det.range_bin = r;
      const double bin_offset = f.location_hz / cfg.hz_per_bin;
      const auto doppler = static_cast<std::ptrdiff_t>(std::llround(bin_offset)) +
                           static_cast<std::ptrdiff_t>(cfg.dc_bin);
      det.doppler_bin = static_cast<std::size_t>(
          ((doppler % static_cast<std::ptrdiff_t>(nd)) + static_cast<std::ptrdiff_t>(nd)) %
          static_cast<std::ptrdiff_t>(nd));
      det.range_m = map.range_axis_m[r];
      det.velocity_mps = map.velocity_axis_mps[det.doppler_bin];
      det.score = std::abs(f.location_hz);
      det.detector = DetectorKind::CfpsCfar;
      detections.push_back(det);
    }
  }
  return detections;
}

// ---------------------------------------------------------------------------
// Region serialization (versioned text format)
// ---------------------------------------------------------------------------

void ClutterRegion::serialize(std::ostream& os) const {
  os << std::setprecision(17);
  os << "isacsim-clutter-region v1\n";
  os << "mode " << (mode == RegionMode::AllFeatures ? "all" : "location") << "\n";
  os << "pfa " << trained_pfa << "\n";
  os << "concavity " << concavity << "\n";
  os << "norm_location " << loc_offset << " " << loc_scale << "\n";
  os << "norm_amplitude_db " << amp_offset << " " << amp_scale << "\n";
  os << "norm_width " << width_offset << " " << width_scale << "\n";
  os << "width_interval " << width_min << " " << width_max << "\n";
  os << "location_extent " << location_extent_min << " " << location_extent_max << "\n";
  os << "hull " << hull.size() << "\n";
  for (const auto& v : hull) os << v.x << " " << v.y << "\n";
}

ClutterRegion ClutterRegion::deserialize(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != "isacsim-clutter-region v1") {
    throw ConfigError("clutter region: unknown format or version");
  }
  ClutterRegion region;
  std::string key;
  auto expect = [&is, &key](const std::string& want) {
    if (!(is >> key) || key != want) {
      throw ConfigError("clutter region: expected field '" + want + "'");
    }
  };
  std::string mode_word;
  expect("mode");
  is >> mode_word;
  region.mode = (mode_word == "all") ? RegionMode::AllFeatures : RegionMode::LocationOnly;
  expect("pfa");
  is >> region.trained_pfa;
  expect("concavity");
  is >> region.concavity;
  expect("norm_location");
  is >> region.loc_offset >> region.loc_scale;
  expect("norm_amplitude_db");
  is >> region.amp_offset >> region.amp_scale;
  expect("norm_width");
  is >> region.width_offset >> region.width_scale;
  expect("width_interval");
  is >> region.width_min >> region.width_max;
  expect("location_extent");
  is >> region.location_extent_min >> region.location_extent_max;
  expect("hull");
  std::size_t count = 0;
  is >> count;
  region.hull.resize(count);
  for (auto& v : region.hull) is >> v.x >> v.y;
  if (!is) throw ConfigError("clutter region: truncated file");
  return region;
}

void ClutterRegion::save(const std::string& path) const {
  std::ofstream os(path);
  if (!os) throw ConfigError("clutter region: cannot open " + path + " for writing");
  serialize(os);
}

ClutterRegion ClutterRegion::load(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("clutter region: cannot open " + path);
  return ClutterRegion::deserialize(is);
}

}  // namespace isacsim
