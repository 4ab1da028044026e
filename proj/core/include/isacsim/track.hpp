#pragma once

#include <Eigen/Dense>

#include <optional>
#include <vector>

#include "isacsim/pulse_matrix.hpp"
#include "isacsim/scene.hpp"

namespace isacsim {

/// Polar measurement of one detection. radial_velocity is the closing
/// speed (positive = approaching), matching the scene and Doppler sign
/// convention.
struct Measurement {
  double range_m = 0.0;
  double radial_velocity_mps = 0.0;
  double azimuth_deg = 0.0;
  Eigen::Matrix3d noise_cov = Eigen::Matrix3d::Identity();
  double timestamp_s = 0.0;
};

enum class MotionModelKind { ConstantVelocity, ConstantAcceleration, CoordinatedTurn };

struct MotionModel {
  MotionModelKind kind = MotionModelKind::ConstantVelocity;
  double process_noise = 1.0;  // white-noise spectral density
  double turn_rate_rps = 0.0;  // CT only

  std::size_t state_dim() const {
    return kind == MotionModelKind::ConstantAcceleration ? 6 : 4;
  }
};

enum class TrackStatus { Tentative, Confirmed, Coasting, Dropped };

/// IMM track: bank of model-conditioned Kalman states plus the mixing
/// machinery. CV/CT run 4 states (x, y, vx, vy), CA runs 6; mixing happens
/// in the padded 6-state space with inflated acceleration variance.
struct TrackState {
  std::vector<MotionModel> models;
  std::vector<Eigen::VectorXd> model_states;
  std::vector<Eigen::MatrixXd> model_covs;
  Eigen::VectorXd model_probabilities;  // simplex
  Eigen::MatrixXd transition_matrix;    // row-stochastic
  int id = 0;
  TrackStatus status = TrackStatus::Tentative;
  int hits = 0;
  int misses = 0;
  int age = 0;
  double last_update_s = 0.0;

  /// Moment-matched combination in the common 6-state space
  /// (x, y, vx, vy, ax, ay).
  Eigen::VectorXd combined_state() const;
  Eigen::MatrixXd combined_covariance() const;

  Eigen::Vector2d position() const;
  Eigen::Vector2d velocity() const;
  std::size_t dominant_model() const;
};

/// Uniformly weakly-sticky transition matrix: `self` on the diagonal,
/// uniform off-diagonal.
Eigen::MatrixXd default_transition_matrix(std::size_t n_models, double self = 0.95);

/// Creates a track from the first measurement: position from range/azimuth,
/// velocity seeded with the radial component, tangential velocity unknown
/// (inflated variance).
TrackState init_track(const Measurement& meas, const std::vector<MotionModel>& models,
                      const Eigen::MatrixXd& transition, int id);

/// One IMM cycle: mixing, per-model EKF predict, per-model update against
/// the nonlinear (range, closing velocity, azimuth) measurement map when a
/// measurement is present, likelihood-based probability update, and status
/// bookkeeping on a miss. Throws NonPsdCovariance on numerical breakdown
/// (after one symmetrization retry).
TrackState imm_step(const TrackState& track, const std::optional<Measurement>& measurement,
                    double dt);

/// Azimuth from the least-squares slope of the unwrapped inter-channel
/// phase at one range-Doppler cell. quality is the cell's mean per-channel
/// power in dB (an SNR-derived weight for downstream fusion).
struct AzimuthEstimate {
  double azimuth_deg = 0.0;
  double quality_db = 0.0;
};
AzimuthEstimate estimate_azimuth(const PulseMatrix& matrix, std::size_t range_bin,
                                 std::size_t doppler_bin_centered, const RxArray& array);

/// Global-nearest-neighbor association result.
struct Association {
  std::vector<std::pair<std::size_t, std::size_t>> assignments;  // (track, measurement)
  std::vector<std::size_t> unassigned_tracks;
  std::vector<std::size_t> unassigned_measurements;
};

/// Assigns measurements to (already predicted) tracks by minimizing the
/// summed squared Mahalanobis distance in measurement space; pairs beyond
/// the gate stay unassigned.
Association associate(const std::vector<Measurement>& measurements,
                      const std::vector<TrackState>& tracks, double gate_mahalanobis_sq);

/// Track-level bookkeeping: gating + GNN association, IMM updates, M-of-N
/// confirmation (2-of-3) and drop after 5 consecutive misses.
struct TrackerConfig {
  std::vector<MotionModel> models;
  double self_transition = 0.95;
  double gate_mahalanobis_sq = 16.0;
  int confirm_hits = 2;
  int drop_after_misses = 5;

  static TrackerConfig standard();
};

class TrackManager {
 public:
  explicit TrackManager(TrackerConfig config);

  /// Advances all tracks by dt and fuses the scan's measurements.
  void step(const std::vector<Measurement>& measurements, double dt);

  const std::vector<TrackState>& tracks() const { return tracks_; }

 private:
  TrackerConfig config_;
  Eigen::MatrixXd transition_;
  std::vector<TrackState> tracks_;
  int next_id_ = 1;
};

}  // namespace isacsim
