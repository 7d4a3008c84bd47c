#include "vigilsim/pose_gaze.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace vigilsim::pose {

namespace {

using Mat6 = Eigen::Matrix<double, 6, 6>;
using Mat36 = Eigen::Matrix<double, 3, 6>;

Eigen::Vector3d to_vec(const Angles& a) {
    return {a.pan_deg, a.tilt_deg, a.roll_deg};
}

Angles to_angles(const Eigen::Vector3d& v) {
    return {v(0), v(1), v(2)};
}

}  // namespace

PoseState kf_predict(const PoseState& state, double dt, double accel_noise) {
    if (dt <= 0.0) {
        throw std::invalid_argument("prediction step must have dt > 0");
    }
    Mat6 F = Mat6::Identity();
    F.block<3, 3>(0, 3) = dt * Eigen::Matrix3d::Identity();

    // White-acceleration model per axis.
    const double q = accel_noise;
    Mat6 Q = Mat6::Zero();
    Q.block<3, 3>(0, 0) = (q * dt * dt * dt * dt / 4.0) * Eigen::Matrix3d::Identity();
    Q.block<3, 3>(0, 3) = (q * dt * dt * dt / 2.0) * Eigen::Matrix3d::Identity();
    Q.block<3, 3>(3, 0) = Q.block<3, 3>(0, 3);
    Q.block<3, 3>(3, 3) = (q * dt * dt) * Eigen::Matrix3d::Identity();

    PoseState out;
    out.angles = state.angles + dt * state.rates;
    out.rates = state.rates;
    out.cov = F * state.cov * F.transpose() + Q;
    out.cov = 0.5 * (out.cov + out.cov.transpose().eval());
    return out;
}

UpdateResult kf_update(const PoseState& predicted, const PoseMeasurement& meas) {
    if (meas.noise_std_deg <= 0.0) {
        throw std::invalid_argument("measurement noise must be positive");
    }
    Mat36 H = Mat36::Zero();
    H.block<3, 3>(0, 0) = Eigen::Matrix3d::Identity();
    const Eigen::Matrix3d R =
        meas.noise_std_deg * meas.noise_std_deg * Eigen::Matrix3d::Identity();

    const Eigen::Vector3d innovation = to_vec(meas.angles) - predicted.angles;
    const Eigen::Matrix3d S = H * predicted.cov * H.transpose() + R;
    Eigen::FullPivLU<Eigen::Matrix3d> lu(S);
    if (!lu.isInvertible()) {
        throw std::runtime_error("singular innovation covariance");
    }
    const Eigen::Matrix<double, 6, 3> K = predicted.cov * H.transpose() * lu.inverse();

    Eigen::Matrix<double, 6, 1> x;
    x << predicted.angles, predicted.rates;
    x += K * innovation;

    // Joseph form keeps the covariance symmetric PSD.
    const Mat6 IKH = Mat6::Identity() - K * H;
    Mat6 P = IKH * predicted.cov * IKH.transpose() + K * R * K.transpose();
    P = 0.5 * (P + P.transpose().eval());

    UpdateResult out;
    out.state.angles = x.head<3>();
    out.state.rates = x.tail<3>();
    out.state.cov = P;
    out.innovation_deg = innovation.norm();
    return out;
}

Angles eye_motion_predict(const PoseState& prev, Vec2 pupil_shift_px, double gain_deg_per_px) {
    Angles out;
    out.pan_deg = prev.angles(0) + gain_deg_per_px * pupil_shift_px.x;
    out.tilt_deg = prev.angles(1) + gain_deg_per_px * pupil_shift_px.y;
    out.roll_deg = prev.angles(2);
    return out;
}

Angles fuse_predictions(const Angles& kf, const Angles& eye, double innovation_deg,
                        double switch_threshold_deg) {
    const double w = std::clamp(innovation_deg / switch_threshold_deg, 0.0, 1.0);
    Angles out;
    out.pan_deg = (1.0 - w) * kf.pan_deg + w * eye.pan_deg;
    out.tilt_deg = (1.0 - w) * kf.tilt_deg + w * eye.tilt_deg;
    out.roll_deg = (1.0 - w) * kf.roll_deg + w * eye.roll_deg;
    return out;
}

PoseTracker::StepResult PoseTracker::step(const PoseMeasurement& meas,
                                          std::optional<Vec2> pupil_shift_px) {
    if (!initialized_) {
        state_.angles = Eigen::Vector3d(meas.angles.pan_deg, meas.angles.tilt_deg,
                                        meas.angles.roll_deg);
        state_.rates.setZero();
        state_.cov.setZero();
        state_.cov.block<3, 3>(0, 0) = cfg_.initial_angle_var * Eigen::Matrix3d::Identity();
        state_.cov.block<3, 3>(3, 3) = cfg_.initial_rate_var * Eigen::Matrix3d::Identity();
        last_t_ = meas.t;
        last_innovation_deg_ = 0.0;
        initialized_ = true;
        const Angles a = to_angles(state_.angles);
        return {a, a, a};
    }

    const double dt = meas.t - last_t_;
    const PoseState predicted = kf_predict(state_, dt, cfg_.accel_noise);
    const Angles kf_pred = to_angles(predicted.angles);

    // Without a trackable pupil shift the eye path has nothing to add.
    const Angles eye_pred = pupil_shift_px
                                ? eye_motion_predict(state_, *pupil_shift_px,
                                                     cfg_.eye_gain_deg_per_px)
                                : kf_pred;
    Angles fused = fuse_predictions(kf_pred, eye_pred, last_innovation_deg_,
                                    cfg_.switch_threshold_deg);
    // Eye motion says nothing about roll; keep the filter's roll prediction.
    fused.roll_deg = kf_pred.roll_deg;

    const UpdateResult upd = kf_update(predicted, meas);
    state_ = upd.state;
    last_innovation_deg_ = upd.innovation_deg;
    last_t_ = meas.t;

    return {kf_pred, fused, to_angles(state_.angles)};
}

PoseMetrics pose_metrics(std::span<const PoseSample> window, double window_span_s,
                         double frontal_cone_deg, double tilt_threshold_deg) {
    if (window.empty()) {
        throw std::invalid_argument("pose metrics over an empty window");
    }
    PoseMetrics m;
    m.window_span_s = window_span_s;

    int excursions = 0;
    bool in_excursion = false;
    for (std::size_t i = 0; i < window.size(); ++i) {
        const Angles& a = window[i].angles;
        if (i + 1 < window.size()) {
            const double dt = window[i + 1].t - window[i].t;
            if (std::max(std::abs(a.pan_deg), std::abs(a.tilt_deg)) > frontal_cone_deg) {
                m.off_frontal_s += dt;
            }
        }
        const double tilt_mag = std::max(std::abs(a.tilt_deg), std::abs(a.roll_deg));
        if (!in_excursion && tilt_mag > tilt_threshold_deg) {
            ++excursions;
            in_excursion = true;
        } else if (in_excursion && tilt_mag <= frontal_cone_deg) {
            in_excursion = false;
        }
    }
    m.off_frontal_s = std::min(m.off_frontal_s, window_span_s);
    m.tilt_rate_per_min = window_span_s > 0.0 ? excursions / (window_span_s / 60.0) : 0.0;
    return m;
}

GazeAngles local_gaze(Vec2 pupil_px, Vec2 glint_px, double gain_deg_per_px) {
    return {gain_deg_per_px * (pupil_px.x - glint_px.x),
            gain_deg_per_px * (pupil_px.y - glint_px.y)};
}

GazeSample overall_gaze(double t, const Angles& face, const GazeAngles& local) {
    return {t, face.pan_deg + local.pan_deg, face.tilt_deg + local.tilt_deg};
}

double gaze_narrowness(std::span<const GazeSample> window) {
    if (window.size() < 2) {
        throw std::invalid_argument("gaze dispersion needs at least 2 samples");
    }
    double mean_pan = 0.0, mean_tilt = 0.0;
    for (const auto& s : window) {
        mean_pan += s.pan_deg;
        mean_tilt += s.tilt_deg;
    }
    mean_pan /= double(window.size());
    mean_tilt /= double(window.size());

    double ss = 0.0;
    for (const auto& s : window) {
        const double dp = s.pan_deg - mean_pan;
        const double dt = s.tilt_deg - mean_tilt;
        ss += dp * dp + dt * dt;
    }
    return std::sqrt(ss / double(window.size()));
}

std::optional<Vec2> find_glint(const GrayImage& even_field, Vec2 near_px,
                               double search_radius_px, int min_intensity) {
    const int x0 = std::max(0, int(std::floor(near_px.x - search_radius_px)));
    const int x1 = std::min(even_field.width - 1, int(std::ceil(near_px.x + search_radius_px)));
    const int y0 = std::max(0, int(std::floor(near_px.y - search_radius_px)));
    const int y1 = std::min(even_field.height - 1, int(std::ceil(near_px.y + search_radius_px)));
    const double r2 = search_radius_px * search_radius_px;

    double wsum = 0.0, wx = 0.0, wy = 0.0;
    for (int y = y0; y <= y1; ++y) {
        for (int x = x0; x <= x1; ++x) {
            const double dx = x - near_px.x;
            const double dy = y - near_px.y;
            if (dx * dx + dy * dy > r2) continue;
            const int v = even_field.at(x, y);
            if (v >= min_intensity) {
                wsum += v;
                wx += double(v) * x;
                wy += double(v) * y;
            }
        }
    }
    if (wsum <= 0.0) return std::nullopt;
    return Vec2{wx / wsum, wy / wsum};
}

}  // namespace vigilsim::pose
