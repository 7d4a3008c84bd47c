#include "vigilsim/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <span>
#include <stdexcept>

#include "json.hpp"
#include "vigilsim/rng.hpp"

namespace vigilsim::scenario {

namespace {

constexpr std::uint64_t kStreamPoseMeasurement = 0x50;

// Fully-open frontal render with noise disabled; the shared background
// cancels in the difference image, leaving clean pupil disks to measure.
double calibrate_open_area(const ScenarioConfig& cfg) {
    synth::GroundTruth gt;
    gt.pupil_left = cfg.driver.eye_base_left;
    gt.pupil_right = cfg.driver.eye_base_right;
    gt.glint_left = cfg.driver.eye_base_left + cfg.driver.glint_offset_px;
    gt.glint_right = cfg.driver.eye_base_right + cfg.driver.glint_offset_px;

    synth::SceneConfig scene = cfg.scene;
    scene.noise_sigma = 0.0;
    const synth::FramePair pair = synth::render_frame_pair(gt, scene, 0);
    const pupil::PupilObservation obs =
        pupil::detect(pair, cfg.detection.threshold, cfg.detection.constraints);
    if (!obs.left || !obs.right) {
        throw std::runtime_error(
            "pupil calibration failed: open-eye render did not yield two pupils");
    }
    return 0.5 * (obs.left->area + obs.right->area);
}

std::optional<Vec2> mean_pupil_shift(const pupil::PupilObservation& prev,
                                     const pupil::PupilObservation& cur) {
    Vec2 sum;
    int n = 0;
    if (prev.left && cur.left) {
        sum = sum + (cur.left->centroid - prev.left->centroid);
        ++n;
    }
    if (prev.right && cur.right) {
        sum = sum + (cur.right->centroid - prev.right->centroid);
        ++n;
    }
    if (n == 0) return std::nullopt;
    return Vec2{sum.x / n, sum.y / n};
}

pose::PoseMeasurement noisy_pose_measurement(const synth::GroundTruth& gt, double noise_std,
                                             std::uint64_t seed, std::uint64_t tick) {
    const std::uint64_t base = rng::mix(rng::mix(seed, kStreamPoseMeasurement), tick);
    pose::PoseMeasurement meas;
    meas.t = gt.t;
    meas.noise_std_deg = noise_std;
    meas.angles.pan_deg = gt.pan_deg + noise_std * rng::gaussian(rng::mix(base, 0));
    meas.angles.tilt_deg = gt.tilt_deg + noise_std * rng::gaussian(rng::mix(base, 1));
    meas.angles.roll_deg = gt.roll_deg + noise_std * rng::gaussian(rng::mix(base, 2));
    return meas;
}

void dump_frame_pair(const synth::FramePair& pair, std::uint64_t index,
                     const std::filesystem::path& dir) {
    char name[40];
    std::snprintf(name, sizeof(name), "frame_%06llu_even.pgm",
                  static_cast<unsigned long long>(index));
    write_pgm(pair.even, dir / name);
    std::snprintf(name, sizeof(name), "frame_%06llu_odd.pgm",
                  static_cast<unsigned long long>(index));
    write_pgm(pair.odd, dir / name);
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

}  // namespace

RunResult run_scenario(const ScenarioConfig& cfg, const RunOptions& opts) {
    RunResult result;
    result.calibrated_open_area = cfg.detection.calibrated_open_area > 0
                                      ? cfg.detection.calibrated_open_area
                                      : calibrate_open_area(cfg);
    if (opts.dump_frames) std::filesystem::create_directories(opts.output_dir);

    const double outer_dt = 1.0 / cfg.scene.frame_rate_hz;
    const auto n_ticks = static_cast<std::uint64_t>(std::llround(cfg.duration_s / outer_dt));
    const int n_vehicle = std::max(1, static_cast<int>(std::llround(outer_dt / cfg.vehicle_dt_s)));
    const double dt_vehicle = outer_dt / n_vehicle;
    const int n_throttle =
        std::max(1, static_cast<int>(std::llround(dt_vehicle / cfg.throttle_dt_s)));
    const double dt_throttle = dt_vehicle / n_throttle;

    pose::TrackerConfig tracker_cfg;
    tracker_cfg.accel_noise = cfg.pose.accel_noise;
    tracker_cfg.eye_gain_deg_per_px = cfg.pose.eye_gain_deg_per_px;
    tracker_cfg.switch_threshold_deg = cfg.pose.switch_threshold_deg;
    pose::PoseTracker tracker(tracker_cfg);
    vehicle::SpeedGovernor governor(cfg.governor, cfg.vehicle.theta_wot);
    throttle::ThrottleState servo;
    vehicle::VehicleState veh;
    veh.v = cfg.initial_speed_mps;

    std::vector<ocular::EyeSample> eye_samples;
    std::vector<pose::PoseSample> pose_samples;
    std::vector<pose::GazeSample> gaze_samples;
    std::size_t eye_start = 0, pose_start = 0, gaze_start = 0;
    eye_samples.reserve(n_ticks + 1);
    pose_samples.reserve(n_ticks + 1);
    gaze_samples.reserve(n_ticks + 1);

    pupil::PupilObservation prev_obs;
    bool have_prev_obs = false;

    fusion::Stage stage = fusion::Stage::Alert;
    double stage_t_enter = 0.0;
    double stage_v_enter = veh.v;
    result.stage_timeline.push_back({stage, 0.0, veh.v});

    result.ticks.reserve(n_ticks + 1);
    for (std::uint64_t i = 0; i <= n_ticks; ++i) {
        const double t = static_cast<double>(i) * outer_dt;

        synth::GroundTruth gt =
            synth::evaluate_script(cfg.driver, std::min(t, cfg.driver.duration_s));
        gt.t = t;
        const synth::FramePair pair = synth::render_frame_pair(gt, cfg.scene, i);
        if (opts.dump_frames) dump_frame_pair(pair, i, opts.output_dir);

        const pupil::PupilObservation obs =
            pupil::detect(pair, cfg.detection.threshold, cfg.detection.constraints);

        const double openness =
            ocular::openness_from_observation(obs, result.calibrated_open_area);
        eye_samples.push_back(ocular::make_sample(t, openness, cfg.ocular.close_threshold));
        while (eye_samples[eye_start].t <= t - cfg.ocular.window_s) ++eye_start;
        const ocular::OcularMetrics om = ocular::ocular_metrics(
            std::span(eye_samples).subspan(eye_start), cfg.ocular.window_s, t);

        const pose::PoseMeasurement meas =
            noisy_pose_measurement(gt, cfg.pose.measurement_noise_deg, cfg.scene.seed, i);
        std::optional<Vec2> shift;
        if (have_prev_obs) shift = mean_pupil_shift(prev_obs, obs);
        const pose::PoseTracker::StepResult step = tracker.step(meas, shift);
        prev_obs = obs;
        have_prev_obs = true;

        pose_samples.push_back({t, step.posterior});
        while (pose_samples[pose_start].t <= t - cfg.pose.window_s) ++pose_start;
        const pose::PoseMetrics pm =
            pose::pose_metrics(std::span(pose_samples).subspan(pose_start), cfg.pose.window_s,
                               cfg.pose.frontal_cone_deg, cfg.pose.tilt_threshold_deg);
        const double off_frontal_fraction =
            pm.window_span_s > 0 ? pm.off_frontal_s / pm.window_span_s : 0.0;

        Vec2 gaze_sum;
        int gaze_n = 0;
        for (const auto& eye : {obs.left, obs.right}) {
            if (!eye) continue;
            const std::optional<Vec2> glint = pose::find_glint(
                pair.even, eye->centroid, cfg.pose.glint_search_radius_px);
            if (!glint) continue;
            const pose::GazeAngles local =
                pose::local_gaze(eye->centroid, *glint, cfg.pose.gaze_gain_deg_per_px);
            const pose::GazeSample g = pose::overall_gaze(t, step.posterior, local);
            gaze_sum.x += g.pan_deg;
            gaze_sum.y += g.tilt_deg;
            ++gaze_n;
        }
        if (gaze_n > 0) {
            gaze_samples.push_back({t, gaze_sum.x / gaze_n, gaze_sum.y / gaze_n});
        }
        while (gaze_start < gaze_samples.size() &&
               gaze_samples[gaze_start].t <= t - cfg.pose.gaze_window_s) {
            ++gaze_start;
        }
        const std::span<const pose::GazeSample> gaze_window =
            std::span(gaze_samples).subspan(gaze_start);
        const double dispersion =
            gaze_window.size() >= 2 ? pose::gaze_narrowness(gaze_window) : 0.0;

        fusion::VigilanceMetrics vm;
        vm.perclos = om.perclos;
        vm.aecs_s = om.aecs_s;
        vm.tilt_rate_per_min = pm.tilt_rate_per_min;
        vm.off_frontal_fraction = off_frontal_fraction;
        vm.gaze_dispersion_deg = dispersion;
        const fusion::FatigueAssessment assessment =
            fusion::fatigue_level(vm, cfg.weights, cfg.thresholds, t);
        const fusion::Stage new_stage =
            fusion::stage_hysteresis(stage, assessment.level, cfg.thresholds);
        if (new_stage != stage) {
            stage = new_stage;
            stage_t_enter = t;
            stage_v_enter = veh.v;
            result.stage_timeline.push_back({stage, t, veh.v});
        }
        const double v_target =
            vehicle::speed_target(stage, t - stage_t_enter, cfg.governor, stage_v_enter);

        TickRecord rec;
        rec.t = t;
        rec.gt_openness = gt.openness;
        rec.gt_pan_deg = gt.pan_deg;
        rec.gt_tilt_deg = gt.tilt_deg;
        rec.gt_roll_deg = gt.roll_deg;
        rec.observation = obs;
        rec.openness = openness;
        rec.perclos = om.perclos;
        rec.aecs_s = om.aecs_s;
        rec.pan_deg = step.posterior.pan_deg;
        rec.tilt_deg = step.posterior.tilt_deg;
        rec.roll_deg = step.posterior.roll_deg;
        rec.off_frontal_fraction = off_frontal_fraction;
        rec.tilt_rate_per_min = pm.tilt_rate_per_min;
        rec.gaze_dispersion_deg = dispersion;
        rec.level = assessment.level;
        rec.stage = stage;
        rec.v_target = v_target;
        rec.v = veh.v;
        rec.x = veh.x;
        rec.theta_ref = governor.preview(v_target, veh.v);
        rec.theta = servo.theta;
        result.ticks.push_back(rec);

        if (i == n_ticks) break;
        for (int k = 0; k < n_vehicle; ++k) {
            const double theta_cmd = governor.update(v_target, veh.v, dt_vehicle);
            const throttle::Reference ref{theta_cmd, 0.0, 0.0};
            for (int j = 0; j < n_throttle; ++j) {
                const double u = throttle::smc_control(servo, ref, cfg.smc, cfg.plant);
                servo = throttle::plant_step(servo, u, cfg.plant, dt_throttle);
            }
            veh = vehicle::longitudinal_step(veh, servo.theta, cfg.vehicle, dt_vehicle);
        }
    }
    return result;
}

void write_run_csv(const RunResult& result, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path.string());
    out << "t,gt_openness,gt_pan,gt_tilt,gt_roll,left_x,left_y,right_x,right_y,confidence,"
           "openness,perclos,aecs,pan,tilt,roll,off_frontal,tilt_rate,gaze_dispersion,level,"
           "stage,v_target,v,x,theta_ref,theta\n";
    for (const TickRecord& r : result.ticks) {
        out << fmt(r.t) << ',' << fmt(r.gt_openness) << ',' << fmt(r.gt_pan_deg) << ','
            << fmt(r.gt_tilt_deg) << ',' << fmt(r.gt_roll_deg) << ',';
        if (r.observation.left) {
            out << fmt(r.observation.left->centroid.x) << ','
                << fmt(r.observation.left->centroid.y) << ',';
        } else {
            out << ",,";
        }
        if (r.observation.right) {
            out << fmt(r.observation.right->centroid.x) << ','
                << fmt(r.observation.right->centroid.y) << ',';
        } else {
            out << ",,";
        }
        out << fmt(r.observation.confidence) << ',' << fmt(r.openness) << ',' << fmt(r.perclos)
            << ',';
        if (r.aecs_s) out << fmt(*r.aecs_s);
        out << ',' << fmt(r.pan_deg) << ',' << fmt(r.tilt_deg) << ',' << fmt(r.roll_deg) << ','
            << fmt(r.off_frontal_fraction) << ',' << fmt(r.tilt_rate_per_min) << ','
            << fmt(r.gaze_dispersion_deg) << ',' << fmt(r.level) << ','
            << fusion::to_string(r.stage) << ',' << fmt(r.v_target) << ',' << fmt(r.v) << ','
            << fmt(r.x) << ',' << fmt(r.theta_ref) << ',' << fmt(r.theta) << '\n';
    }
}

void write_summary_json(const RunResult& result, const ScenarioConfig& cfg,
                        const std::filesystem::path& path) {
    if (result.ticks.empty()) throw std::runtime_error("empty run");
    nlohmann::ordered_json doc;
    doc["duration_s"] = cfg.duration_s;
    doc["frame_rate_hz"] = cfg.scene.frame_rate_hz;
    doc["seed"] = cfg.scene.seed;
    doc["ticks"] = result.ticks.size();
    doc["calibrated_open_area_px"] = result.calibrated_open_area;

    double max_perclos = 0.0;
    for (const TickRecord& r : result.ticks) max_perclos = std::max(max_perclos, r.perclos);
    doc["max_perclos"] = max_perclos;

    const TickRecord& last = result.ticks.back();
    doc["final"] = {{"t", last.t},
                    {"v_mps", last.v},
                    {"x_m", last.x},
                    {"theta_rad", last.theta},
                    {"level", last.level},
                    {"stage", fusion::to_string(last.stage)}};

    nlohmann::ordered_json timeline = nlohmann::ordered_json::array();
    for (const StageSpan& span : result.stage_timeline) {
        timeline.push_back({{"stage", fusion::to_string(span.stage)},
                            {"t_enter", span.t_enter},
                            {"v_enter", span.v_enter}});
    }
    doc["stage_timeline"] = timeline;

    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path.string());
    out << doc.dump(2) << '\n';
}

}  // namespace vigilsim::scenario
