#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "vigilsim/fusion.hpp"
#include "vigilsim/ocular.hpp"
#include "vigilsim/pose_gaze.hpp"
#include "vigilsim/pupil.hpp"
#include "vigilsim/synth.hpp"
#include "vigilsim/throttle.hpp"
#include "vigilsim/vehicle.hpp"

namespace vigilsim::scenario {

struct DetectionConfig {
    int threshold = 40;
    pupil::PupilConstraints constraints;
    // Fully-open pupil area in pixels; <= 0 requests auto-calibration from a
    // noise-free frontal render.
    double calibrated_open_area = 0.0;
};

struct PoseConfig {
    double measurement_noise_deg = 0.5;
    double accel_noise = 400.0;
    double eye_gain_deg_per_px = 0.5;
    double switch_threshold_deg = 5.0;
    double window_s = 60.0;
    double frontal_cone_deg = 15.0;
    double tilt_threshold_deg = 20.0;
    double gaze_gain_deg_per_px = 1.0;
    double glint_search_radius_px = 8.0;
    double gaze_window_s = 60.0;
};

struct ScenarioConfig {
    synth::SceneConfig scene;
    synth::DriverScript driver;
    DetectionConfig detection;
    ocular::OcularConfig ocular;
    PoseConfig pose;
    fusion::FusionWeights weights;
    fusion::Thresholds thresholds;
    throttle::PlantParams plant;
    throttle::SmcParams smc;
    vehicle::VehicleParams vehicle;
    vehicle::GovernorConfig governor;
    double duration_s = 60.0;
    double throttle_dt_s = 0.001;
    double vehicle_dt_s = 0.01;
    double initial_speed_mps = 0.0;
};

struct ValidationResult {
    ScenarioConfig config;
    std::vector<std::string> errors;  // "field.path: message" per violation
    bool ok() const { return errors.empty(); }
};

// Parses the JSON scenario config, fills defaults for omitted fields, and
// checks every invariant. Never throws on bad input; all problems land in
// `errors` with their field paths.
ValidationResult validate_config(const std::string& json_text);

// Reads the file and delegates to validate_config. IO failure is reported as
// an error entry, not an exception.
ValidationResult load_config_file(const std::filesystem::path& path);

struct TickRecord {
    double t = 0.0;

    double gt_openness = 1.0;
    double gt_pan_deg = 0.0;
    double gt_tilt_deg = 0.0;
    double gt_roll_deg = 0.0;

    pupil::PupilObservation observation;
    double openness = 0.0;
    double perclos = 0.0;
    std::optional<double> aecs_s;

    double pan_deg = 0.0;
    double tilt_deg = 0.0;
    double roll_deg = 0.0;
    double off_frontal_fraction = 0.0;
    double tilt_rate_per_min = 0.0;
    double gaze_dispersion_deg = 0.0;

    double level = 0.0;
    fusion::Stage stage = fusion::Stage::Alert;

    double v_target = 0.0;
    double v = 0.0;
    double x = 0.0;
    double theta_ref = 0.0;
    double theta = 0.0;
};

struct StageSpan {
    fusion::Stage stage = fusion::Stage::Alert;
    double t_enter = 0.0;
    double v_enter = 0.0;
};

struct RunResult {
    std::vector<TickRecord> ticks;
    std::vector<StageSpan> stage_timeline;  // first entry is the initial stage
    double calibrated_open_area = 0.0;
};

struct RunOptions {
    std::filesystem::path output_dir;  // used only when dump_frames is set
    bool dump_frames = false;
};

// Deterministic closed-loop run. Per outer tick (camera frame): render ->
// detect -> ocular/pose/gaze metrics -> fusion -> speed target; between
// ticks the governor, throttle servo, and vehicle advance on their inner
// steps. Throws std::runtime_error when pupil calibration fails.
RunResult run_scenario(const ScenarioConfig& cfg, const RunOptions& opts = {});

// One row per tick; empty cells for absent detections and closure speed.
void write_run_csv(const RunResult& result, const std::filesystem::path& path);

// Run summary: final speed/stage, PERCLOS peak, stage timeline.
void write_summary_json(const RunResult& result, const ScenarioConfig& cfg,
                        const std::filesystem::path& path);

}  // namespace vigilsim::scenario
