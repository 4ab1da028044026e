#include "isacsim/track.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "isacsim/errors.hpp"
#include "isacsim/units.hpp"

namespace isacsim {
namespace {

constexpr double kAccelPadVariance = 100.0;   // (m/s^2)^2 for 4->6 padding
constexpr double kInitTangentialVelVar = 100.0;  // (m/s)^2

Eigen::VectorXd pad6(const Eigen::VectorXd& x) {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(6);
  out.head(x.size()) = x;
  return out;
}

Eigen::MatrixXd pad6(const Eigen::MatrixXd& p) {
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(6, 6);
  out.topLeftCorner(p.rows(), p.cols()) = p;
  for (Eigen::Index i = p.rows(); i < 6; ++i) out(i, i) = kAccelPadVariance;
  return out;
}

Eigen::MatrixXd transition_for(const MotionModel& model, double dt) {
  switch (model.kind) {
    case MotionModelKind::ConstantVelocity: {
      Eigen::Matrix4d f = Eigen::Matrix4d::Identity();
      f(0, 2) = dt;
      f(1, 3) = dt;
      return f;
    }
    case MotionModelKind::ConstantAcceleration: {
      Eigen::MatrixXd f = Eigen::MatrixXd::Identity(6, 6);
      const double h = 0.5 * dt * dt;
      f(0, 2) = dt; f(1, 3) = dt;
      f(0, 4) = h;  f(1, 5) = h;
      f(2, 4) = dt; f(3, 5) = dt;
      return f;
    }
    case MotionModelKind::CoordinatedTurn: {
      const double w = model.turn_rate_rps;
      Eigen::Matrix4d f = Eigen::Matrix4d::Identity();
      if (std::abs(w) < 1e-9) {
        f(0, 2) = dt;
        f(1, 3) = dt;
        return f;
      }
      const double s = std::sin(w * dt), c = std::cos(w * dt);
      f(0, 2) = s / w;        f(0, 3) = -(1.0 - c) / w;
      f(1, 2) = (1.0 - c) / w; f(1, 3) = s / w;
      f(2, 2) = c;  f(2, 3) = -s;
      f(3, 2) = s;  f(3, 3) = c;
      return f;
    }
  }
  return Eigen::Matrix4d::Identity();
}

Eigen::MatrixXd process_noise_for(const MotionModel& model, double dt) {
  const double q = model.process_noise;
  if (model.kind == MotionModelKind::ConstantAcceleration) {
    // white-jerk blocks per axis on (pos, vel, acc)
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(6, 6);
    const double d2 = dt * dt, d3 = d2 * dt, d4 = d3 * dt, d5 = d4 * dt;
    const double b[3][3] = {{d5 / 20.0, d4 / 8.0, d3 / 6.0},
                            {d4 / 8.0, d3 / 3.0, d2 / 2.0},
                            {d3 / 6.0, d2 / 2.0, dt}};
    const int idx[3] = {0, 2, 4};  // x, vx, ax column offsets per axis
    for (int axis = 0; axis < 2; ++axis) {
      for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
          out(idx[i] + axis, idx[j] + axis) = q * b[i][j];
        }
      }
    }
    return out;
  }
  // white-acceleration blocks per axis on (pos, vel)
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(4, 4);
  const double d2 = dt * dt, d3 = d2 * dt;
  const double b[2][2] = {{d3 / 3.0, d2 / 2.0}, {d2 / 2.0, dt}};
  const int idx[2] = {0, 2};
  for (int axis = 0; axis < 2; ++axis) {
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        out(idx[i] + axis, idx[j] + axis) = q * b[i][j];
      }
    }
  }
  return out;
}

/// h(state) = (range, closing velocity, azimuth in degrees).
Eigen::Vector3d measure(const Eigen::VectorXd& x) {
  const double px = x(0), py = x(1), vx = x(2), vy = x(3);
  const double r = std::hypot(px, py);
  Eigen::Vector3d z;
  z(0) = r;
  z(1) = (r > 0) ? -(px * vx + py * vy) / r : 0.0;
  z(2) = rad_to_deg(std::atan2(py, px));
  return z;
}

Eigen::MatrixXd measure_jacobian(const Eigen::VectorXd& x) {
  const double px = x(0), py = x(1), vx = x(2), vy = x(3);
  const double r = std::hypot(px, py);
  const double r2 = r * r, r3 = r2 * r;
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(3, x.size());
  h(0, 0) = px / r;
  h(0, 1) = py / r;
  const double rdot_num = px * vx + py * vy;
  h(1, 0) = -vx / r + rdot_num * px / r3;
  h(1, 1) = -vy / r + rdot_num * py / r3;
  h(1, 2) = -px / r;
  h(1, 3) = -py / r;
  const double deg = 180.0 / kPi;
  h(2, 0) = -py / r2 * deg;
  h(2, 1) = px / r2 * deg;
  return h;
}

double wrap_degrees(double deg) {
  double w = std::fmod(deg + 180.0, 360.0);
  if (w < 0) w += 360.0;
  return w - 180.0;
}

void enforce_psd(Eigen::MatrixXd& p) {
  p = 0.5 * (p + p.transpose()).eval();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(p);
  if (es.eigenvalues().minCoeff() > 0) return;
  // one symmetrization-plus-jitter retry before giving up
  p += 1e-9 * Eigen::MatrixXd::Identity(p.rows(), p.cols());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es2(p);
  if (es2.eigenvalues().minCoeff() <= 0) {
    throw NonPsdCovariance("imm_step: covariance lost positive definiteness");
  }
}

}  // namespace

Eigen::VectorXd TrackState::combined_state() const {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(6);
  for (std::size_t i = 0; i < models.size(); ++i) {
    out += model_probabilities(static_cast<Eigen::Index>(i)) * pad6(model_states[i]);
  }
  return out;
}

Eigen::MatrixXd TrackState::combined_covariance() const {
  const Eigen::VectorXd mean = combined_state();
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(6, 6);
  for (std::size_t i = 0; i < models.size(); ++i) {
    const Eigen::VectorXd d = pad6(model_states[i]) - mean;
    out += model_probabilities(static_cast<Eigen::Index>(i)) *
           (pad6(model_covs[i]) + d * d.transpose());
  }
  return out;
}

Eigen::Vector2d TrackState::position() const { return combined_state().head<2>(); }
Eigen::Vector2d TrackState::velocity() const { return combined_state().segment<2>(2); }

std::size_t TrackState::dominant_model() const {
  Eigen::Index idx = 0;
  model_probabilities.maxCoeff(&idx);
  return static_cast<std::size_t>(idx);
}

Eigen::MatrixXd default_transition_matrix(std::size_t n_models, double self) {
  const auto n = static_cast<Eigen::Index>(n_models);
  if (n == 1) return Eigen::MatrixXd::Ones(1, 1);
  const double off = (1.0 - self) / static_cast<double>(n - 1);
  Eigen::MatrixXd t = Eigen::MatrixXd::Constant(n, n, off);
  t.diagonal().setConstant(self);
  return t;
}

TrackState init_track(const Measurement& meas, const std::vector<MotionModel>& models,
                      const Eigen::MatrixXd& transition, int id) {
  if (models.empty()) throw ConfigError("init_track: at least one motion model required");
  const double az = deg_to_rad(meas.azimuth_deg);
  const double cx = std::cos(az), sy = std::sin(az);
  const double px = meas.range_m * cx;
  const double py = meas.range_m * sy;
  // closing speed > 0 means the radial velocity component points at the origin
  const double vx = -meas.radial_velocity_mps * cx;
  const double vy = -meas.radial_velocity_mps * sy;

  // First-order propagation of the polar measurement noise to x/y.
  const double var_r = meas.noise_cov(0, 0);
  const double var_az_rad = meas.noise_cov(2, 2) * std::pow(kPi / 180.0, 2);
  const double var_cross = meas.range_m * meas.range_m * var_az_rad;
  Eigen::Matrix2d pos_cov;
  pos_cov << var_r * cx * cx + var_cross * sy * sy, (var_r - var_cross) * cx * sy,
      (var_r - var_cross) * cx * sy, var_r * sy * sy + var_cross * cx * cx;

  TrackState track;
  track.models = models;
  track.transition_matrix = transition;
  track.model_probabilities =
      Eigen::VectorXd::Constant(static_cast<Eigen::Index>(models.size()),
                                1.0 / static_cast<double>(models.size()));
  track.id = id;
  track.last_update_s = meas.timestamp_s;
  track.hits = 1;
  track.age = 1;
  for (const auto& model : models) {
    const auto dim = static_cast<Eigen::Index>(model.state_dim());
    Eigen::VectorXd x = Eigen::VectorXd::Zero(dim);
    x(0) = px; x(1) = py; x(2) = vx; x(3) = vy;
    Eigen::MatrixXd p = Eigen::MatrixXd::Zero(dim, dim);
    p.topLeftCorner<2, 2>() = pos_cov;
    p(2, 2) = meas.noise_cov(1, 1) + kInitTangentialVelVar;
    p(3, 3) = meas.noise_cov(1, 1) + kInitTangentialVelVar;
    for (Eigen::Index i = 4; i < dim; ++i) p(i, i) = kAccelPadVariance;
    track.model_states.push_back(std::move(x));
    track.model_covs.push_back(std::move(p));
  }
  return track;
}

TrackState imm_step(const TrackState& track, const std::optional<Measurement>& measurement,
                    double dt) {
  if (dt <= 0) throw ConfigError("imm_step: dt must be positive");
  const std::size_t n = track.models.size();
  TrackState out = track;
  out.age += 1;

  // 1. Mixing in the padded common space.
  const Eigen::VectorXd& mu = track.model_probabilities;
  const Eigen::MatrixXd& pt = track.transition_matrix;
  Eigen::VectorXd c_pred = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      c_pred(static_cast<Eigen::Index>(j)) +=
          pt(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) *
          mu(static_cast<Eigen::Index>(i));
    }
  }
  std::vector<Eigen::VectorXd> mixed_states(n);
  std::vector<Eigen::MatrixXd> mixed_covs(n);
  for (std::size_t j = 0; j < n; ++j) {
    Eigen::VectorXd x0 = Eigen::VectorXd::Zero(6);
    for (std::size_t i = 0; i < n; ++i) {
      const double w = pt(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) *
                       mu(static_cast<Eigen::Index>(i)) /
                       std::max(c_pred(static_cast<Eigen::Index>(j)), 1e-300);
      x0 += w * pad6(track.model_states[i]);
    }
    Eigen::MatrixXd p0 = Eigen::MatrixXd::Zero(6, 6);
    for (std::size_t i = 0; i < n; ++i) {
      const double w = pt(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) *
                       mu(static_cast<Eigen::Index>(i)) /
                       std::max(c_pred(static_cast<Eigen::Index>(j)), 1e-300);
      const Eigen::VectorXd d = pad6(track.model_states[i]) - x0;
      p0 += w * (pad6(track.model_covs[i]) + d * d.transpose());
    }
    const auto dim = static_cast<Eigen::Index>(track.models[j].state_dim());
    mixed_states[j] = x0.head(dim);
    mixed_covs[j] = p0.topLeftCorner(dim, dim);
  }

  // 2./3. Per-model predict and (optionally) update with likelihoods.
  Eigen::VectorXd likelihood = Eigen::VectorXd::Ones(static_cast<Eigen::Index>(n));
  for (std::size_t j = 0; j < n; ++j) {
    const MotionModel& model = track.models[j];
    const Eigen::MatrixXd f = transition_for(model, dt);
    const Eigen::MatrixXd q = process_noise_for(model, dt);
    Eigen::VectorXd x = f * mixed_states[j];
    Eigen::MatrixXd p = f * mixed_covs[j] * f.transpose() + q;

    if (measurement) {
      const Eigen::Vector3d z(measurement->range_m, measurement->radial_velocity_mps,
                              measurement->azimuth_deg);
      const Eigen::MatrixXd h = measure_jacobian(x);
      Eigen::Vector3d innovation = z - measure(x);
      innovation(2) = wrap_degrees(innovation(2));
      const Eigen::Matrix3d s =
          (h * p * h.transpose() + measurement->noise_cov).eval();
      const Eigen::Matrix3d s_inv = s.inverse();
      const Eigen::MatrixXd k = p * h.transpose() * s_inv;
      x += k * innovation;
      const Eigen::MatrixXd ikh =
          Eigen::MatrixXd::Identity(p.rows(), p.cols()) - k * h;
      p = (ikh * p * ikh.transpose() + k * measurement->noise_cov * k.transpose()).eval();

      const double maha = innovation.dot(s_inv * innovation);
      const double det = s.determinant();
      likelihood(static_cast<Eigen::Index>(j)) =
          std::exp(-0.5 * maha) /
          std::sqrt(std::pow(2.0 * kPi, 3) * std::max(det, 1e-300));
    }
    enforce_psd(p);
    out.model_states[j] = std::move(x);
    out.model_covs[j] = std::move(p);
  }

  // 4. Model probability update (prediction only reweights by the mixing).
  Eigen::VectorXd mu_new(static_cast<Eigen::Index>(n));
  for (std::size_t j = 0; j < n; ++j) {
    mu_new(static_cast<Eigen::Index>(j)) =
        likelihood(static_cast<Eigen::Index>(j)) * c_pred(static_cast<Eigen::Index>(j));
  }
  const double total = mu_new.sum();
  if (total > 0) {
    mu_new /= total;
  } else {
    mu_new.setConstant(1.0 / static_cast<double>(n));
  }
  out.model_probabilities = mu_new;

  if (measurement) {
    out.hits += 1;
    out.misses = 0;
    out.last_update_s = measurement->timestamp_s;
  } else {
    out.misses += 1;
    if (out.status == TrackStatus::Confirmed) out.status = TrackStatus::Coasting;
  }
  return out;
}

AzimuthEstimate estimate_azimuth(const PulseMatrix& matrix, std::size_t range_bin,
                                 std::size_t doppler_bin_centered, const RxArray& array) {
  if (array.num_channels < 2 || matrix.channel_count() < 2) {
    throw InvalidArray("estimate_azimuth: at least 2 Rx channels required");
  }
  if (array.element_spacing_wl > 0.5 + 1e-12) {
    throw AmbiguousAngle("estimate_azimuth: element spacing beyond lambda/2 causes grating lobes");
  }
  if (range_bin >= matrix.fast_size()) {
    throw ConfigError("estimate_azimuth: range bin out of range");
  }
  const std::size_t pulses = matrix.slow_size();
  const std::size_t channels = matrix.channel_count();
  if (doppler_bin_centered >= pulses) {
    throw ConfigError("estimate_azimuth: doppler bin out of range");
  }
  // centered bin -> FFT bin
  const std::size_t k = (doppler_bin_centered + pulses - pulses / 2) % pulses;

  std::vector<std::complex<double>> coef(channels, {0.0, 0.0});
  for (std::size_t c = 0; c < channels; ++c) {
    std::complex<double> acc{0.0, 0.0};
    for (std::size_t nidx = 0; nidx < pulses; ++nidx) {
      const double turns =
          -static_cast<double>(k) * static_cast<double>(nidx) / static_cast<double>(pulses);
      acc += matrix.at(c, nidx, range_bin) *
             std::polar(1.0, 2.0 * kPi * std::fmod(turns, 1.0));
    }
    coef[c] = acc;
  }

  // Unwrapped inter-channel phase, least-squares slope.
  std::vector<double> phase(channels);
  phase[0] = std::arg(coef[0]);
  for (std::size_t c = 1; c < channels; ++c) {
    double p = std::arg(coef[c]);
    while (p - phase[c - 1] > kPi) p -= 2.0 * kPi;
    while (p - phase[c - 1] < -kPi) p += 2.0 * kPi;
    phase[c] = p;
  }
  const double cbar = 0.5 * static_cast<double>(channels - 1);
  double num = 0.0, den = 0.0, pbar = 0.0;
  for (std::size_t c = 0; c < channels; ++c) pbar += phase[c];
  pbar /= static_cast<double>(channels);
  for (std::size_t c = 0; c < channels; ++c) {
    const double dc = static_cast<double>(c) - cbar;
    num += dc * (phase[c] - pbar);
    den += dc * dc;
  }
  const double slope = num / den;
  double sin_az = -slope / (2.0 * kPi * array.element_spacing_wl);
  sin_az = std::clamp(sin_az, -1.0, 1.0);

  double power = 0.0;
  for (const auto& z : coef) power += std::norm(z);
  power /= static_cast<double>(channels);

  AzimuthEstimate est;
  est.azimuth_deg = rad_to_deg(std::asin(sin_az));
  est.quality_db = linear_to_db(std::max(power, 1e-300));
  return est;
}

namespace {

/// Hungarian algorithm (potentials form) on a rows x cols cost matrix,
/// rows <= cols. Returns per-row assigned column.
std::vector<std::size_t> hungarian(const Eigen::MatrixXd& cost) {
  const auto nr = static_cast<std::size_t>(cost.rows());
  const auto nc = static_cast<std::size_t>(cost.cols());
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(nr + 1, 0.0), v(nc + 1, 0.0);
  std::vector<std::size_t> way(nc + 1, 0), match(nc + 1, 0);
  for (std::size_t i = 1; i <= nr; ++i) {
    match[0] = i;
    std::size_t j0 = 0;
    std::vector<double> minv(nc + 1, inf);
    std::vector<char> used(nc + 1, 0);
    do {
      used[j0] = 1;
      const std::size_t i0 = match[j0];
      double delta = inf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= nc; ++j) {
        if (used[j]) continue;
        const double cur = cost(static_cast<Eigen::Index>(i0 - 1),
                                static_cast<Eigen::Index>(j - 1)) -
                           u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= nc; ++j) {
        if (used[j]) {
          u[match[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (match[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      match[j0] = match[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<std::size_t> row_to_col(nr, nc);
  for (std::size_t j = 1; j <= nc; ++j) {
    if (match[j] != 0) row_to_col[match[j] - 1] = j - 1;
  }
  return row_to_col;
}

}  // namespace

Association associate(const std::vector<Measurement>& measurements,
                      const std::vector<TrackState>& tracks, double gate_mahalanobis_sq) {
  Association result;
  const std::size_t nt = tracks.size();
  const std::size_t nm = measurements.size();
  if (nt == 0) {
    for (std::size_t m = 0; m < nm; ++m) result.unassigned_measurements.push_back(m);
    return result;
  }
  if (nm == 0) {
    for (std::size_t t = 0; t < nt; ++t) result.unassigned_tracks.push_back(t);
    return result;
  }

  // Squared Mahalanobis distances in measurement space, using each track's
  // combined state and innovation covariance.
  const double kBlocked = 1e12;
  Eigen::MatrixXd cost(static_cast<Eigen::Index>(nt), static_cast<Eigen::Index>(nm));
  for (std::size_t t = 0; t < nt; ++t) {
    const Eigen::VectorXd x = tracks[t].combined_state().head(4);
    const Eigen::MatrixXd p = tracks[t].combined_covariance().topLeftCorner(4, 4);
    const Eigen::MatrixXd h = measure_jacobian(x);
    const Eigen::Vector3d predicted = measure(x);
    for (std::size_t m = 0; m < nm; ++m) {
      const Eigen::Vector3d z(measurements[m].range_m, measurements[m].radial_velocity_mps,
                              measurements[m].azimuth_deg);
      Eigen::Vector3d innovation = z - predicted;
      innovation(2) = wrap_degrees(innovation(2));
      const Eigen::Matrix3d s = h * p * h.transpose() + measurements[m].noise_cov;
      const double d2 = innovation.dot(s.inverse() * innovation);
      cost(static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(m)) =
          (d2 <= gate_mahalanobis_sq) ? d2 : kBlocked;
    }
  }

  // Hungarian wants rows <= cols; transpose when tracks outnumber measurements.
  std::vector<char> track_assigned(nt, 0), meas_assigned(nm, 0);
  if (nt <= nm) {
    const auto row_to_col = hungarian(cost);
    for (std::size_t t = 0; t < nt; ++t) {
      const std::size_t m = row_to_col[t];
      if (m < nm && cost(static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(m)) < kBlocked) {
        result.assignments.emplace_back(t, m);
        track_assigned[t] = 1;
        meas_assigned[m] = 1;
      }
    }
  } else {
    const auto row_to_col = hungarian(cost.transpose());
    for (std::size_t m = 0; m < nm; ++m) {
      const std::size_t t = row_to_col[m];
      if (t < nt && cost(static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(m)) < kBlocked) {
        result.assignments.emplace_back(t, m);
        track_assigned[t] = 1;
        meas_assigned[m] = 1;
      }
    }
  }
  for (std::size_t t = 0; t < nt; ++t) {
    if (!track_assigned[t]) result.unassigned_tracks.push_back(t);
  }
  for (std::size_t m = 0; m < nm; ++m) {
    if (!meas_assigned[m]) result.unassigned_measurements.push_back(m);
  }
  return result;
}

TrackerConfig TrackerConfig::standard() {
  TrackerConfig cfg;
  cfg.models = {
      {MotionModelKind::ConstantVelocity, 1.0, 0.0},
      {MotionModelKind::ConstantAcceleration, 1.0, 0.0},
      {MotionModelKind::CoordinatedTurn, 1.0, 0.15},
  };
  return cfg;
}

TrackManager::TrackManager(TrackerConfig config) : config_(std::move(config)) {
  if (config_.models.empty()) config_ = TrackerConfig::standard();
  transition_ = default_transition_matrix(config_.models.size(), config_.self_transition);
}

void TrackManager::step(const std::vector<Measurement>& measurements, double dt) {
  // Predict all live tracks to the scan time, then associate.
  std::vector<TrackState> predicted;
  predicted.reserve(tracks_.size());
  for (const auto& track : tracks_) {
    predicted.push_back(imm_step(track, std::nullopt, dt));
  }
  const Association assoc = associate(measurements, predicted, config_.gate_mahalanobis_sq);

  std::vector<TrackState> next;
  std::vector<char> handled(tracks_.size(), 0);
  for (const auto& [t, m] : assoc.assignments) {
    TrackState updated = imm_step(tracks_[t], measurements[m], dt);
    if (updated.status == TrackStatus::Tentative && updated.hits >= config_.confirm_hits) {
      updated.status = TrackStatus::Confirmed;
    } else if (updated.status == TrackStatus::Coasting) {
      updated.status = TrackStatus::Confirmed;
    }
    next.push_back(std::move(updated));
    handled[t] = 1;
  }
  for (std::size_t t = 0; t < tracks_.size(); ++t) {
    if (handled[t]) continue;
    TrackState coasted = predicted[t];
    coasted.misses = tracks_[t].misses + 1;
    coasted.hits = tracks_[t].hits;
    coasted.age = tracks_[t].age + 1;
    if (coasted.misses >= config_.drop_after_misses ||
        (tracks_[t].status == TrackStatus::Tentative && coasted.misses >= 2)) {
      continue;  // dropped
    }
    if (tracks_[t].status == TrackStatus::Confirmed) coasted.status = TrackStatus::Coasting;
    next.push_back(std::move(coasted));
  }
  for (std::size_t m : assoc.unassigned_measurements) {
    next.push_back(init_track(measurements[m], config_.models, transition_, next_id_++));
  }
  tracks_ = std::move(next);
}

}  // namespace isacsim
