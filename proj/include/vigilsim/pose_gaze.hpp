#pragma once

#include <Eigen/Dense>
#include <optional>
#include <span>

#include "vigilsim/geometry.hpp"
#include "vigilsim/image.hpp"

namespace vigilsim::pose {

struct Angles {
    double pan_deg = 0.0;
    double tilt_deg = 0.0;
    double roll_deg = 0.0;
};

// Constant-velocity face-orientation state: [pan tilt roll | rates] with a
// full 6x6 covariance. Angles in degrees, rates in deg/s.
struct PoseState {
    Eigen::Vector3d angles = Eigen::Vector3d::Zero();
    Eigen::Vector3d rates = Eigen::Vector3d::Zero();
    Eigen::Matrix<double, 6, 6> cov = Eigen::Matrix<double, 6, 6>::Identity();
};

struct PoseMeasurement {
    double t = 0.0;
    Angles angles;
    double noise_std_deg = 0.5;
};

struct PoseMetrics {
    double tilt_rate_per_min = 0.0;
    double off_frontal_s = 0.0;
    double window_span_s = 0.0;
};

struct PoseSample {
    double t = 0.0;
    Angles angles;
};

struct GazeAngles {
    double pan_deg = 0.0;
    double tilt_deg = 0.0;
};

struct GazeSample {
    double t = 0.0;
    double pan_deg = 0.0;
    double tilt_deg = 0.0;
};

// Constant-velocity propagation over dt; covariance inflated by a
// white-acceleration process noise of spectral density accel_noise
// ((deg/s^2)^2 * s). Throws std::invalid_argument for dt <= 0.
PoseState kf_predict(const PoseState& state, double dt, double accel_noise);

struct UpdateResult {
    PoseState state;
    double innovation_deg = 0.0;  // norm of the angle innovation
};

// Linear measurement update on the three angles (Joseph form). Throws
// std::invalid_argument when the measurement noise is nonpositive.
UpdateResult kf_update(const PoseState& predicted, const PoseMeasurement& meas);

// Small-angle map from inter-frame pupil motion to predicted pan/tilt;
// roll carries over unchanged. gain in deg/px.
Angles eye_motion_predict(const PoseState& prev, Vec2 pupil_shift_px, double gain_deg_per_px);

// Convex blend per angle with weight min(1, innovation / switch_threshold):
// small innovation trusts the filter, large innovation trusts the eyes.
Angles fuse_predictions(const Angles& kf, const Angles& eye, double innovation_deg,
                        double switch_threshold_deg);

struct TrackerConfig {
    double accel_noise = 400.0;        // process noise spectral density
    double eye_gain_deg_per_px = 0.5;
    double switch_threshold_deg = 5.0;
    double initial_angle_var = 25.0;
    double initial_rate_var = 400.0;
};

// Single-owner face pose tracker. Per step: constant-velocity prediction,
// eye-motion prediction when pupils moved trackably, fusion weighted by the
// previous innovation, then the measurement update.
class PoseTracker {
public:
    explicit PoseTracker(TrackerConfig cfg = {}) : cfg_(cfg) {}

    struct StepResult {
        Angles kf_prediction;
        Angles fused_prediction;
        Angles posterior;
    };

    StepResult step(const PoseMeasurement& meas, std::optional<Vec2> pupil_shift_px);

    bool initialized() const { return initialized_; }
    const PoseState& state() const { return state_; }
    double last_innovation_deg() const { return last_innovation_deg_; }

private:
    TrackerConfig cfg_;
    PoseState state_;
    double last_t_ = 0.0;
    double last_innovation_deg_ = 0.0;
    bool initialized_ = false;
};

// off_frontal: time with max(|pan|,|tilt|) beyond the frontal cone.
// tilt_rate: distinct excursions of |tilt| or |roll| above tilt_threshold
// per minute of window span. Sample i covers the interval to sample i+1.
// Throws std::invalid_argument on an empty window.
PoseMetrics pose_metrics(std::span<const PoseSample> window, double window_span_s,
                         double frontal_cone_deg, double tilt_threshold_deg);

// gain * (pupil - glint), componentwise, in degrees.
GazeAngles local_gaze(Vec2 pupil_px, Vec2 glint_px, double gain_deg_per_px);

// Small-angle composition: face pose plus local eye gaze.
GazeSample overall_gaze(double t, const Angles& face, const GazeAngles& local);

// RMS deviation of gaze from the window mean, combined over pan and tilt.
// Throws std::invalid_argument for fewer than 2 samples.
double gaze_narrowness(std::span<const GazeSample> window);

// Intensity-weighted centroid of saturated pixels near a detected pupil in
// the bright-pupil field; absent when no pixel reaches min_intensity.
std::optional<Vec2> find_glint(const GrayImage& even_field, Vec2 near_px,
                               double search_radius_px, int min_intensity = 250);

}  // namespace vigilsim::pose
