#include <cmath>
#include <cstdint>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>

#include "json.hpp"
#include "vigilsim/scenario.hpp"

namespace vigilsim::scenario {

namespace {

using nlohmann::json;

class Parser {
  public:
    explicit Parser(std::vector<std::string>& errors) : errors_(errors) {}

    void fail(const std::string& path, const std::string& msg) {
        errors_.push_back(path + ": " + msg);
    }

    void check_keys(const json& obj, const std::string& path,
                    std::initializer_list<const char*> allowed) {
        for (auto it = obj.begin(); it != obj.end(); ++it) {
            bool known = false;
            for (const char* k : allowed) {
                if (it.key() == k) {
                    known = true;
                    break;
                }
            }
            if (!known) fail(path + "." + it.key(), "unknown field");
        }
    }

    const json* object(const json& obj, const std::string& path, const char* key) {
        if (!obj.contains(key)) return nullptr;
        const json& v = obj.at(key);
        if (!v.is_object()) {
            fail(path + "." + key, "must be an object");
            return nullptr;
        }
        return &v;
    }

    void number(const json& obj, const std::string& path, const char* key, double& out) {
        if (!obj.contains(key)) return;
        const json& v = obj.at(key);
        if (!v.is_number()) {
            fail(path + "." + key, "must be a number");
            return;
        }
        out = v.get<double>();
    }

    void integer(const json& obj, const std::string& path, const char* key, int& out) {
        if (!obj.contains(key)) return;
        const json& v = obj.at(key);
        if (!v.is_number_integer()) {
            fail(path + "." + key, "must be an integer");
            return;
        }
        out = v.get<int>();
    }

    void unsigned64(const json& obj, const std::string& path, const char* key,
                    std::uint64_t& out) {
        if (!obj.contains(key)) return;
        const json& v = obj.at(key);
        if (!v.is_number_unsigned()) {
            fail(path + "." + key, "must be a nonnegative integer");
            return;
        }
        out = v.get<std::uint64_t>();
    }

    bool vec2(const json& obj, const std::string& path, const char* key, Vec2& out) {
        if (!obj.contains(key)) return false;
        const json& v = obj.at(key);
        if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
            fail(path + "." + key, "must be [x, y]");
            return false;
        }
        out = {v[0].get<double>(), v[1].get<double>()};
        return true;
    }

    // Fixed-width numeric tuples, e.g. openness keyframes [[t, value], ...].
    bool tuple_rows(const json& obj, const std::string& path, const char* key,
                    std::size_t width, std::vector<std::vector<double>>& rows) {
        if (!obj.contains(key)) return false;
        const json& v = obj.at(key);
        const std::string p = path + "." + key;
        if (!v.is_array()) {
            fail(p, "must be an array");
            return false;
        }
        bool ok = true;
        for (std::size_t i = 0; i < v.size(); ++i) {
            const json& row = v[i];
            bool good = row.is_array() && row.size() == width;
            if (good) {
                for (const json& cell : row) good = good && cell.is_number();
            }
            if (!good) {
                fail(p + "[" + std::to_string(i) + "]",
                     "must be an array of " + std::to_string(width) + " numbers");
                ok = false;
                continue;
            }
            std::vector<double> r;
            r.reserve(width);
            for (const json& cell : row) r.push_back(cell.get<double>());
            rows.push_back(std::move(r));
        }
        return ok;
    }

  private:
    std::vector<std::string>& errors_;
};

void parse_scene(Parser& p, const json& root, ScenarioConfig& cfg) {
    const json* obj = p.object(root, "config", "scene");
    if (!obj) return;
    p.check_keys(*obj, "scene",
                 {"image_width", "image_height", "camera_distance_m", "pupil_radius_px",
                  "pupil_contrast", "glint_intensity", "glint_offset_px", "background_amplitude",
                  "noise_sigma", "frame_rate_hz"});
    auto& s = cfg.scene;
    p.integer(*obj, "scene", "image_width", s.image_width);
    p.integer(*obj, "scene", "image_height", s.image_height);
    p.number(*obj, "scene", "camera_distance_m", s.camera_distance_m);
    p.number(*obj, "scene", "pupil_radius_px", s.pupil_radius_px);
    p.number(*obj, "scene", "pupil_contrast", s.pupil_contrast);
    p.number(*obj, "scene", "glint_intensity", s.glint_intensity);
    p.vec2(*obj, "scene", "glint_offset_px", s.glint_offset_px);
    p.number(*obj, "scene", "background_amplitude", s.background_amplitude);
    p.number(*obj, "scene", "noise_sigma", s.noise_sigma);
    p.number(*obj, "scene", "frame_rate_hz", s.frame_rate_hz);
}

void parse_driver(Parser& p, const json& root, ScenarioConfig& cfg, bool& has_duration,
                  bool& has_left, bool& has_right) {
    const json* obj = p.object(root, "config", "driver");
    if (!obj) return;
    p.check_keys(*obj, "driver",
                 {"duration_s", "openness", "pose", "gaze", "closures", "eye_base_left",
                  "eye_base_right", "pose_px_per_deg", "gaze_px_per_deg"});
    auto& d = cfg.driver;
    has_duration = obj->contains("duration_s");
    p.number(*obj, "driver", "duration_s", d.duration_s);
    p.number(*obj, "driver", "pose_px_per_deg", d.pose_px_per_deg);
    p.number(*obj, "driver", "gaze_px_per_deg", d.gaze_px_per_deg);
    has_left = p.vec2(*obj, "driver", "eye_base_left", d.eye_base_left);
    has_right = p.vec2(*obj, "driver", "eye_base_right", d.eye_base_right);

    std::vector<std::vector<double>> rows;
    if (p.tuple_rows(*obj, "driver", "openness", 2, rows)) {
        for (const auto& r : rows) d.openness.push_back({r[0], r[1]});
    }
    rows.clear();
    if (p.tuple_rows(*obj, "driver", "pose", 4, rows)) {
        for (const auto& r : rows) d.pose.push_back({r[0], r[1], r[2], r[3]});
    }
    rows.clear();
    if (p.tuple_rows(*obj, "driver", "gaze", 3, rows)) {
        for (const auto& r : rows) d.gaze.push_back({r[0], r[1], r[2]});
    }

    if (obj->contains("closures")) {
        const json& arr = obj->at("closures");
        if (!arr.is_array()) {
            p.fail("driver.closures", "must be an array");
        } else {
            for (std::size_t i = 0; i < arr.size(); ++i) {
                const std::string path = "driver.closures[" + std::to_string(i) + "]";
                const json& c = arr[i];
                if (!c.is_object()) {
                    p.fail(path, "must be an object");
                    continue;
                }
                p.check_keys(c, path, {"onset_s", "closing_s", "hold_s", "reopen_s"});
                synth::ClosureEvent ev;
                p.number(c, path, "onset_s", ev.onset_s);
                p.number(c, path, "closing_s", ev.closing_s);
                p.number(c, path, "hold_s", ev.hold_s);
                p.number(c, path, "reopen_s", ev.reopen_s);
                d.closures.push_back(ev);
            }
        }
    }
}

void parse_detection(Parser& p, const json& root, ScenarioConfig& cfg) {
    const json* obj = p.object(root, "config", "detection");
    if (!obj) return;
    p.check_keys(*obj, "detection",
                 {"threshold", "min_area", "max_area", "min_circularity", "min_separation_px",
                  "max_separation_px", "max_vertical_skew_px", "calibrated_open_area"});
    auto& d = cfg.detection;
    p.integer(*obj, "detection", "threshold", d.threshold);
    p.integer(*obj, "detection", "min_area", d.constraints.min_area);
    p.integer(*obj, "detection", "max_area", d.constraints.max_area);
    p.number(*obj, "detection", "min_circularity", d.constraints.min_circularity);
    p.number(*obj, "detection", "min_separation_px", d.constraints.min_separation_px);
    p.number(*obj, "detection", "max_separation_px", d.constraints.max_separation_px);
    p.number(*obj, "detection", "max_vertical_skew_px", d.constraints.max_vertical_skew_px);
    p.number(*obj, "detection", "calibrated_open_area", d.calibrated_open_area);
}

void parse_ocular(Parser& p, const json& root, ScenarioConfig& cfg) {
    const json* obj = p.object(root, "config", "ocular");
    if (!obj) return;
    p.check_keys(*obj, "ocular", {"close_threshold", "window_s"});
    p.number(*obj, "ocular", "close_threshold", cfg.ocular.close_threshold);
    p.number(*obj, "ocular", "window_s", cfg.ocular.window_s);
}

void parse_pose(Parser& p, const json& root, ScenarioConfig& cfg) {
    const json* obj = p.object(root, "config", "pose");
    if (!obj) return;
    p.check_keys(*obj, "pose",
                 {"measurement_noise_deg", "accel_noise", "eye_gain_deg_per_px",
                  "switch_threshold_deg", "window_s", "frontal_cone_deg", "tilt_threshold_deg",
                  "gaze_gain_deg_per_px", "glint_search_radius_px", "gaze_window_s"});
    auto& c = cfg.pose;
    p.number(*obj, "pose", "measurement_noise_deg", c.measurement_noise_deg);
    p.number(*obj, "pose", "accel_noise", c.accel_noise);
    p.number(*obj, "pose", "eye_gain_deg_per_px", c.eye_gain_deg_per_px);
    p.number(*obj, "pose", "switch_threshold_deg", c.switch_threshold_deg);
    p.number(*obj, "pose", "window_s", c.window_s);
    p.number(*obj, "pose", "frontal_cone_deg", c.frontal_cone_deg);
    p.number(*obj, "pose", "tilt_threshold_deg", c.tilt_threshold_deg);
    p.number(*obj, "pose", "gaze_gain_deg_per_px", c.gaze_gain_deg_per_px);
    p.number(*obj, "pose", "glint_search_radius_px", c.glint_search_radius_px);
    p.number(*obj, "pose", "gaze_window_s", c.gaze_window_s);
}

void parse_fusion(Parser& p, const json& root, ScenarioConfig& cfg) {
    const json* obj = p.object(root, "config", "fusion");
    if (!obj) return;
    p.check_keys(*obj, "fusion",
                 {"w_perclos", "w_aecs", "w_tilt", "w_off_frontal", "w_gaze", "sat_perclos",
                  "sat_aecs_s", "sat_tilt_rate", "sat_off_frontal", "sat_gaze_deg",
                  "warn_threshold", "crit_threshold", "hysteresis"});
    auto& w = cfg.weights;
    p.number(*obj, "fusion", "w_perclos", w.w_perclos);
    p.number(*obj, "fusion", "w_aecs", w.w_aecs);
    p.number(*obj, "fusion", "w_tilt", w.w_tilt);
    p.number(*obj, "fusion", "w_off_frontal", w.w_off_frontal);
    p.number(*obj, "fusion", "w_gaze", w.w_gaze);
    p.number(*obj, "fusion", "sat_perclos", w.sat_perclos);
    p.number(*obj, "fusion", "sat_aecs_s", w.sat_aecs_s);
    p.number(*obj, "fusion", "sat_tilt_rate", w.sat_tilt_rate);
    p.number(*obj, "fusion", "sat_off_frontal", w.sat_off_frontal);
    p.number(*obj, "fusion", "sat_gaze_deg", w.sat_gaze_deg);
    p.number(*obj, "fusion", "warn_threshold", cfg.thresholds.warn);
    p.number(*obj, "fusion", "crit_threshold", cfg.thresholds.crit);
    p.number(*obj, "fusion", "hysteresis", cfg.thresholds.hysteresis);
}

void parse_throttle(Parser& p, const json& root, ScenarioConfig& cfg) {
    const json* obj = p.object(root, "config", "throttle");
    if (!obj) return;
    p.check_keys(*obj, "throttle",
                 {"inertia", "damping", "spring_stiffness", "spring_preload", "theta_min",
                  "theta_max", "torque_limit", "lambda", "gain", "boundary_layer"});
    auto& t = cfg.plant;
    p.number(*obj, "throttle", "inertia", t.inertia);
    p.number(*obj, "throttle", "damping", t.damping);
    p.number(*obj, "throttle", "spring_stiffness", t.spring_stiffness);
    p.number(*obj, "throttle", "spring_preload", t.spring_preload);
    p.number(*obj, "throttle", "theta_min", t.theta_min);
    p.number(*obj, "throttle", "theta_max", t.theta_max);
    p.number(*obj, "throttle", "torque_limit", t.torque_limit);
    p.number(*obj, "throttle", "lambda", cfg.smc.lambda);
    p.number(*obj, "throttle", "gain", cfg.smc.gain);
    p.number(*obj, "throttle", "boundary_layer", cfg.smc.boundary_layer);
}

void parse_vehicle(Parser& p, const json& root, ScenarioConfig& cfg) {
    const json* obj = p.object(root, "config", "vehicle");
    if (!obj) return;
    p.check_keys(*obj, "vehicle",
                 {"mass", "max_drive_force", "aero_coeff", "rolling_coeff", "gravity",
                  "theta_wot"});
    auto& v = cfg.vehicle;
    p.number(*obj, "vehicle", "mass", v.mass);
    p.number(*obj, "vehicle", "max_drive_force", v.max_drive_force);
    p.number(*obj, "vehicle", "aero_coeff", v.aero_coeff);
    p.number(*obj, "vehicle", "rolling_coeff", v.rolling_coeff);
    p.number(*obj, "vehicle", "gravity", v.gravity);
    p.number(*obj, "vehicle", "theta_wot", v.theta_wot);
}

void parse_governor(Parser& p, const json& root, ScenarioConfig& cfg) {
    const json* obj = p.object(root, "config", "governor");
    if (!obj) return;
    p.check_keys(*obj, "governor",
                 {"v_cruise", "warning_factor", "critical_decel", "kp", "ki", "integral_clamp"});
    auto& g = cfg.governor;
    p.number(*obj, "governor", "v_cruise", g.v_cruise);
    p.number(*obj, "governor", "warning_factor", g.warning_factor);
    p.number(*obj, "governor", "critical_decel", g.critical_decel);
    p.number(*obj, "governor", "kp", g.kp);
    p.number(*obj, "governor", "ki", g.ki);
    p.number(*obj, "governor", "integral_clamp", g.integral_clamp);
}

void require(Parser& p, bool ok, const std::string& path, const std::string& msg) {
    if (!ok) p.fail(path, msg);
}

template <typename Key>
void check_track_order(Parser& p, const std::vector<Key>& track, const std::string& path) {
    for (std::size_t i = 1; i < track.size(); ++i) {
        if (track[i].t < track[i - 1].t) {
            p.fail(path, "keyframe times must be nondecreasing");
            return;
        }
    }
}

void validate(Parser& p, ScenarioConfig& c) {
    require(p, c.duration_s > 0, "duration_s", "must be > 0");
    require(p, c.throttle_dt_s > 0, "throttle_dt_s", "must be > 0");
    require(p, c.vehicle_dt_s > 0, "vehicle_dt_s", "must be > 0");
    require(p, c.initial_speed_mps >= 0, "initial_speed_mps", "must be >= 0");

    const auto& s = c.scene;
    require(p, s.image_width > 0, "scene.image_width", "must be > 0");
    require(p, s.image_height > 0, "scene.image_height", "must be > 0");
    require(p, s.camera_distance_m > 0, "scene.camera_distance_m", "must be > 0");
    require(p, s.pupil_radius_px >= 1, "scene.pupil_radius_px", "must be >= 1");
    require(p, s.pupil_contrast > 0, "scene.pupil_contrast", "must be > 0");
    require(p, s.glint_intensity >= 0 && s.glint_intensity <= 255, "scene.glint_intensity",
            "must be in [0, 255]");
    require(p, s.background_amplitude >= 0, "scene.background_amplitude", "must be >= 0");
    require(p, s.noise_sigma >= 0, "scene.noise_sigma", "must be >= 0");
    require(p, s.frame_rate_hz > 0, "scene.frame_rate_hz", "must be > 0");

    const auto& d = c.driver;
    require(p, d.duration_s >= 0, "driver.duration_s", "must be >= 0");
    require(p, d.pose_px_per_deg >= 0, "driver.pose_px_per_deg", "must be >= 0");
    require(p, d.gaze_px_per_deg >= 0, "driver.gaze_px_per_deg", "must be >= 0");
    check_track_order(p, d.openness, "driver.openness");
    check_track_order(p, d.pose, "driver.pose");
    check_track_order(p, d.gaze, "driver.gaze");
    for (std::size_t i = 0; i < d.openness.size(); ++i) {
        if (d.openness[i].value < 0 || d.openness[i].value > 1) {
            p.fail("driver.openness[" + std::to_string(i) + "]", "value must be in [0, 1]");
        }
    }
    for (std::size_t i = 0; i < d.closures.size(); ++i) {
        const auto& ev = d.closures[i];
        const std::string path = "driver.closures[" + std::to_string(i) + "]";
        require(p, ev.onset_s >= 0, path + ".onset_s", "must be >= 0");
        require(p, ev.closing_s > 0, path + ".closing_s", "must be > 0");
        require(p, ev.hold_s >= 0, path + ".hold_s", "must be >= 0");
        require(p, ev.reopen_s > 0, path + ".reopen_s", "must be > 0");
    }

    const auto& det = c.detection;
    require(p, det.threshold >= 1 && det.threshold <= 255, "detection.threshold",
            "must be in [1, 255]");
    require(p, det.constraints.min_area >= 1, "detection.min_area", "must be >= 1");
    require(p, det.constraints.max_area >= det.constraints.min_area, "detection.max_area",
            "must be >= min_area");
    require(p, det.constraints.min_circularity >= 0 && det.constraints.min_circularity <= 1,
            "detection.min_circularity", "must be in [0, 1]");
    require(p, det.constraints.min_separation_px > 0, "detection.min_separation_px",
            "must be > 0");
    require(p, det.constraints.max_separation_px >= det.constraints.min_separation_px,
            "detection.max_separation_px", "must be >= min_separation_px");
    require(p, det.constraints.max_vertical_skew_px >= 0, "detection.max_vertical_skew_px",
            "must be >= 0");

    require(p, c.ocular.close_threshold > 0 && c.ocular.close_threshold < 1,
            "ocular.close_threshold", "must be in (0, 1)");
    require(p, c.ocular.window_s > 0, "ocular.window_s", "must be > 0");

    const auto& po = c.pose;
    require(p, po.measurement_noise_deg > 0, "pose.measurement_noise_deg", "must be > 0");
    require(p, po.accel_noise >= 0, "pose.accel_noise", "must be >= 0");
    require(p, po.eye_gain_deg_per_px >= 0, "pose.eye_gain_deg_per_px", "must be >= 0");
    require(p, po.switch_threshold_deg > 0, "pose.switch_threshold_deg", "must be > 0");
    require(p, po.window_s > 0, "pose.window_s", "must be > 0");
    require(p, po.frontal_cone_deg > 0, "pose.frontal_cone_deg", "must be > 0");
    require(p, po.tilt_threshold_deg > 0, "pose.tilt_threshold_deg", "must be > 0");
    require(p, po.gaze_gain_deg_per_px >= 0, "pose.gaze_gain_deg_per_px", "must be >= 0");
    require(p, po.glint_search_radius_px > 0, "pose.glint_search_radius_px", "must be > 0");
    require(p, po.gaze_window_s > 0, "pose.gaze_window_s", "must be > 0");

    const auto& w = c.weights;
    require(p, w.w_perclos >= 0 && w.w_aecs >= 0 && w.w_tilt >= 0 && w.w_off_frontal >= 0 &&
                   w.w_gaze >= 0,
            "fusion", "weights must be >= 0");
    const double wsum = w.w_perclos + w.w_aecs + w.w_tilt + w.w_off_frontal + w.w_gaze;
    require(p, std::abs(wsum - 1.0) <= 1e-6, "fusion", "weights must sum to 1");
    require(p, w.sat_perclos > 0, "fusion.sat_perclos", "must be > 0");
    require(p, w.sat_aecs_s > 0, "fusion.sat_aecs_s", "must be > 0");
    require(p, w.sat_tilt_rate > 0, "fusion.sat_tilt_rate", "must be > 0");
    require(p, w.sat_off_frontal > 0, "fusion.sat_off_frontal", "must be > 0");
    require(p, w.sat_gaze_deg > 0, "fusion.sat_gaze_deg", "must be > 0");
    const auto& th = c.thresholds;
    require(p, th.warn > 0 && th.warn <= 1, "fusion.warn_threshold", "must be in (0, 1]");
    require(p, th.crit > 0 && th.crit <= 1, "fusion.crit_threshold", "must be in (0, 1]");
    require(p, th.warn < th.crit, "fusion.warn_threshold, fusion.crit_threshold",
            "warn_threshold must be below crit_threshold");
    require(p, th.hysteresis >= 0 && th.hysteresis < th.warn, "fusion.hysteresis",
            "must be in [0, warn_threshold)");

    const auto& t = c.plant;
    require(p, t.inertia > 0, "throttle.inertia", "must be > 0");
    require(p, t.damping >= 0, "throttle.damping", "must be >= 0");
    require(p, t.spring_stiffness >= 0, "throttle.spring_stiffness", "must be >= 0");
    require(p, t.spring_preload >= 0, "throttle.spring_preload", "must be >= 0");
    require(p, t.theta_min < t.theta_max, "throttle.theta_min, throttle.theta_max",
            "theta_min must be below theta_max");
    require(p, t.torque_limit > 0, "throttle.torque_limit", "must be > 0");
    require(p, c.smc.lambda > 0, "throttle.lambda", "must be > 0");
    require(p, c.smc.gain >= 0, "throttle.gain", "must be >= 0");
    require(p, c.smc.boundary_layer > 0, "throttle.boundary_layer", "must be > 0");

    const auto& v = c.vehicle;
    require(p, v.mass > 0, "vehicle.mass", "must be > 0");
    require(p, v.max_drive_force > 0, "vehicle.max_drive_force", "must be > 0");
    require(p, v.aero_coeff >= 0, "vehicle.aero_coeff", "must be >= 0");
    require(p, v.rolling_coeff >= 0, "vehicle.rolling_coeff", "must be >= 0");
    require(p, v.gravity > 0, "vehicle.gravity", "must be > 0");
    require(p, v.theta_wot > 0, "vehicle.theta_wot", "must be > 0");

    const auto& g = c.governor;
    require(p, g.v_cruise >= 0, "governor.v_cruise", "must be >= 0");
    require(p, g.warning_factor > 0 && g.warning_factor <= 1, "governor.warning_factor",
            "must be in (0, 1]");
    require(p, g.critical_decel > 0, "governor.critical_decel", "must be > 0");
    require(p, g.kp >= 0, "governor.kp", "must be >= 0");
    require(p, g.ki >= 0, "governor.ki", "must be >= 0");
    require(p, g.integral_clamp > 0, "governor.integral_clamp", "must be > 0");
}

}  // namespace

ValidationResult validate_config(const std::string& json_text) {
    ValidationResult result;
    Parser p(result.errors);

    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::parse_error& e) {
        p.fail("config", std::string("parse error: ") + e.what());
        return result;
    }
    if (!root.is_object()) {
        p.fail("config", "top level must be an object");
        return result;
    }

    ScenarioConfig& cfg = result.config;
    p.check_keys(root, "config",
                 {"seed", "duration_s", "throttle_dt_s", "vehicle_dt_s", "initial_speed_mps",
                  "scene", "driver", "detection", "ocular", "pose", "fusion", "throttle",
                  "vehicle", "governor"});
    p.unsigned64(root, "config", "seed", cfg.scene.seed);
    p.number(root, "config", "duration_s", cfg.duration_s);
    p.number(root, "config", "throttle_dt_s", cfg.throttle_dt_s);
    p.number(root, "config", "vehicle_dt_s", cfg.vehicle_dt_s);
    p.number(root, "config", "initial_speed_mps", cfg.initial_speed_mps);

    parse_scene(p, root, cfg);
    bool driver_has_duration = false, has_left = false, has_right = false;
    parse_driver(p, root, cfg, driver_has_duration, has_left, has_right);
    parse_detection(p, root, cfg);
    parse_ocular(p, root, cfg);
    parse_pose(p, root, cfg);
    parse_fusion(p, root, cfg);
    parse_throttle(p, root, cfg);
    parse_vehicle(p, root, cfg);
    parse_governor(p, root, cfg);

    if (!driver_has_duration) cfg.driver.duration_s = cfg.duration_s;
    if (!has_left) {
        cfg.driver.eye_base_left = {0.375 * cfg.scene.image_width, 0.5 * cfg.scene.image_height};
    }
    if (!has_right) {
        cfg.driver.eye_base_right = {0.625 * cfg.scene.image_width, 0.5 * cfg.scene.image_height};
    }
    cfg.driver.glint_offset_px = cfg.scene.glint_offset_px;

    validate(p, cfg);
    return result;
}

ValidationResult load_config_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        ValidationResult result;
        result.errors.push_back("config: cannot open " + path.string());
        return result;
    }
    std::ostringstream text;
    text << in.rdbuf();
    return validate_config(text.str());
}

}  // namespace vigilsim::scenario
