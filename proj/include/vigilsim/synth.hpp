#pragma once

#include <cstdint>
#include <vector>

#include "vigilsim/geometry.hpp"
#include "vigilsim/image.hpp"

namespace vigilsim::synth {

// Camera/illuminator geometry and photometry for the rendered scene.
// The even field models on-axis (inner ring) illumination, the odd field
// off-axis (outer ring) illumination; both share background and glints.
struct SceneConfig {
    int image_width = 320;
    int image_height = 240;
    double camera_distance_m = 1.5;
    double pupil_radius_px = 6.0;
    double pupil_contrast = 120.0;  // even-field brightness above odd at the pupil
    double glint_intensity = 255.0;
    Vec2 glint_offset_px{3.0, -3.0};
    double background_amplitude = 60.0;
    double noise_sigma = 4.0;
    double frame_rate_hz = 30.0;
    std::uint64_t seed = 1;
};

struct ScalarKey {
    double t = 0.0;
    double value = 0.0;
};

struct PoseKey {
    double t = 0.0;
    double pan_deg = 0.0;
    double tilt_deg = 0.0;
    double roll_deg = 0.0;
};

struct GazeKey {
    double t = 0.0;
    double pan_deg = 0.0;
    double tilt_deg = 0.0;
};

// One eyelid closure: openness ramps 1->0 over closing_s, holds, ramps back.
struct ClosureEvent {
    double onset_s = 0.0;
    double closing_s = 0.1;
    double hold_s = 0.05;
    double reopen_s = 0.1;
};

// Scripted driver behavior on [0, duration_s]. Tracks are piecewise-linear
// keyframes and hold their end values outside the keyed range; an empty
// track means openness 1 / frontal pose / centered gaze. Angle convention:
// pan positive = rightward in the image, tilt positive = downward.
struct DriverScript {
    double duration_s = 0.0;
    std::vector<ScalarKey> openness;
    std::vector<PoseKey> pose;
    std::vector<GazeKey> gaze;
    std::vector<ClosureEvent> closures;

    // Pixel geometry of the rendered eyes. The glint sits at a fixed offset
    // from the eye anchor; the pupil shifts off the anchor with gaze, so the
    // pupil-glint vector encodes local gaze.
    Vec2 eye_base_left{120.0, 120.0};
    Vec2 eye_base_right{200.0, 120.0};
    double pose_px_per_deg = 2.0;
    double gaze_px_per_deg = 1.0;
    Vec2 glint_offset_px{3.0, -3.0};
};

struct GroundTruth {
    double t = 0.0;
    Vec2 pupil_left;
    Vec2 pupil_right;
    Vec2 glint_left;
    Vec2 glint_right;
    double visible_fraction = 1.0;  // pupil area fraction exposed by the lid
    double openness = 1.0;
    double pan_deg = 0.0;
    double tilt_deg = 0.0;
    double roll_deg = 0.0;
};

struct FramePair {
    double t = 0.0;
    GrayImage even;  // bright-pupil field
    GrayImage odd;   // dark-pupil field
};

// Deterministic driver state at time t. Throws std::out_of_range when t is
// outside [0, duration_s].
GroundTruth evaluate_script(const DriverScript& script, double t);

// Renders the two illumination fields for one frame. Both fields share the
// same background texture; per-field Gaussian noise is decorrelated. Draw
// coordinates are clamped to the image. Bit-deterministic in
// (gt, cfg, frame_index).
FramePair render_frame_pair(const GroundTruth& gt, const SceneConfig& cfg,
                            std::uint64_t frame_index);

}  // namespace vigilsim::synth
