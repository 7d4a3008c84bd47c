#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "vigilsim/ocular.hpp"
#include "vigilsim/pupil.hpp"
#include "vigilsim/scenario.hpp"
#include "vigilsim/throttle.hpp"

namespace {

constexpr int kExitValidation = 1;
constexpr int kExitRuntime = 2;

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

int run_simulate(const std::string& config_path, const std::string& out_dir, bool dump_frames) {
    auto vr = vigilsim::scenario::load_config_file(config_path);

    if (const char* env = std::getenv("VIGILSIM_SEED")) {
        char* end = nullptr;
        const unsigned long long seed = std::strtoull(env, &end, 10);
        if (end == env || *end != '\0') {
            vr.errors.push_back("VIGILSIM_SEED: must be a nonnegative integer");
        } else {
            vr.config.scene.seed = seed;
        }
    }
    if (!vr.ok()) {
        for (const std::string& e : vr.errors) std::cerr << e << "\n";
        return kExitValidation;
    }

    const std::filesystem::path out(out_dir);
    std::filesystem::create_directories(out);
    const vigilsim::scenario::RunResult result =
        vigilsim::scenario::run_scenario(vr.config, {out, dump_frames});
    vigilsim::scenario::write_run_csv(result, out / "run.csv");
    vigilsim::scenario::write_summary_json(result, vr.config, out / "summary.json");

    const auto& last = result.ticks.back();
    std::cout << "wrote " << (out / "run.csv").string() << "\n"
              << "wrote " << (out / "summary.json").string() << "\n"
              << "ticks=" << result.ticks.size() << " final_stage="
              << vigilsim::fusion::to_string(last.stage) << " final_v=" << fmt(last.v)
              << " m/s\n";
    return 0;
}

int run_detect(const std::string& even_path, const std::string& odd_path, int threshold,
               bool with_areas) {
    vigilsim::synth::FramePair pair;
    pair.even = vigilsim::read_pgm(even_path);
    pair.odd = vigilsim::read_pgm(odd_path);
    const vigilsim::pupil::PupilObservation obs =
        vigilsim::pupil::detect(pair, threshold, vigilsim::pupil::PupilConstraints{});

    std::cout << "t,left_x,left_y,right_x,right_y,confidence";
    if (with_areas) std::cout << ",left_area,right_area";
    std::cout << "\n" << fmt(obs.t) << ',';
    if (obs.left) std::cout << fmt(obs.left->centroid.x) << ',' << fmt(obs.left->centroid.y);
    else std::cout << ',';
    std::cout << ',';
    if (obs.right) std::cout << fmt(obs.right->centroid.x) << ',' << fmt(obs.right->centroid.y);
    else std::cout << ',';
    std::cout << ',' << fmt(obs.confidence);
    if (with_areas) {
        std::cout << ',';
        if (obs.left) std::cout << obs.left->area;
        std::cout << ',';
        if (obs.right) std::cout << obs.right->area;
    }
    std::cout << "\n";
    return 0;
}

struct ObservationRow {
    double t = 0.0;
    double confidence = 0.0;
    std::optional<double> left_area;
    std::optional<double> right_area;
};

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ss(line);
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.push_back("");
    return cells;
}

std::optional<double> parse_cell(const std::vector<std::string>& cells, std::size_t i) {
    if (i >= cells.size() || cells[i].empty()) return std::nullopt;
    try {
        std::size_t pos = 0;
        const double v = std::stod(cells[i], &pos);
        if (pos != cells[i].size()) return std::nullopt;
        return v;
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

int run_metrics(const std::string& input, double window_s, double cadence_s,
                double calibrated_area) {
    std::ifstream in(input, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + input);

    std::vector<ObservationRow> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const std::vector<std::string> cells = split_csv(line);
        const std::optional<double> t = parse_cell(cells, 0);
        if (!t) continue;  // header or malformed line
        ObservationRow row;
        row.t = *t;
        row.confidence = parse_cell(cells, 5).value_or(0.0);
        row.left_area = parse_cell(cells, 6);
        row.right_area = parse_cell(cells, 7);
        rows.push_back(row);
    }
    if (rows.empty()) throw std::runtime_error("no observation rows in " + input);

    std::vector<vigilsim::ocular::EyeSample> samples;
    samples.reserve(rows.size());
    const bool use_areas = calibrated_area > 0;
    for (const ObservationRow& r : rows) {
        double openness = 0.0;
        if (use_areas) {
            double sum = 0.0;
            int n = 0;
            if (r.left_area) { sum += *r.left_area; ++n; }
            if (r.right_area) { sum += *r.right_area; ++n; }
            if (n > 0) openness = std::min(1.0, std::max(0.0, sum / n / calibrated_area));
        } else {
            openness = r.confidence > 0 ? 1.0 : 0.0;
        }
        samples.push_back(vigilsim::ocular::make_sample(r.t, openness, 0.2));
    }

    std::cout << "t,perclos,aecs\n";
    const double t0 = samples.front().t;
    const double t_last = samples.back().t;
    for (double t = t0; t <= t_last + 1e-9; t += cadence_s) {
        bool any = false;
        for (const auto& s : samples) {
            if (s.t > t - window_s && s.t <= t + 1e-12) {
                any = true;
                break;
            }
        }
        if (!any) continue;
        const vigilsim::ocular::OcularMetrics m =
            vigilsim::ocular::ocular_metrics(samples, window_s, t + 1e-12);
        std::cout << fmt(t) << ',' << fmt(m.perclos) << ',';
        if (m.aecs_s) std::cout << fmt(*m.aecs_s);
        std::cout << "\n";
    }
    return 0;
}

int run_throttle_step(const std::string& config_path, const std::string& out_path) {
    std::ifstream in(config_path, std::ios::binary);
    if (!in) {
        std::cerr << "config: cannot open " << config_path << "\n";
        return kExitValidation;
    }
    std::ostringstream text;
    text << in.rdbuf();

    nlohmann::json root;
    try {
        root = nlohmann::json::parse(text.str());
    } catch (const nlohmann::json::parse_error& e) {
        std::cerr << "config: parse error: " << e.what() << "\n";
        return kExitValidation;
    }

    vigilsim::throttle::PlantParams plant;
    vigilsim::throttle::SmcParams smc;
    double amplitude = 1.0, duration = 2.0, dt = 0.001;
    double inertia_scale = 1.0, damping_scale = 1.0;
    try {
        if (root.contains("throttle")) {
            const auto& t = root.at("throttle");
            plant.inertia = t.value("inertia", plant.inertia);
            plant.damping = t.value("damping", plant.damping);
            plant.spring_stiffness = t.value("spring_stiffness", plant.spring_stiffness);
            plant.spring_preload = t.value("spring_preload", plant.spring_preload);
            plant.theta_min = t.value("theta_min", plant.theta_min);
            plant.theta_max = t.value("theta_max", plant.theta_max);
            plant.torque_limit = t.value("torque_limit", plant.torque_limit);
            smc.lambda = t.value("lambda", smc.lambda);
            smc.gain = t.value("gain", smc.gain);
            smc.boundary_layer = t.value("boundary_layer", smc.boundary_layer);
        }
        amplitude = root.value("step_amplitude_rad", amplitude);
        duration = root.value("duration_s", duration);
        dt = root.value("dt_s", dt);
        inertia_scale = root.value("true_inertia_scale", inertia_scale);
        damping_scale = root.value("true_damping_scale", damping_scale);
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "config: " << e.what() << "\n";
        return kExitValidation;
    }

    std::vector<std::string> errors;
    if (plant.inertia <= 0) errors.push_back("throttle.inertia: must be > 0");
    if (plant.torque_limit <= 0) errors.push_back("throttle.torque_limit: must be > 0");
    if (plant.theta_min >= plant.theta_max) {
        errors.push_back("throttle.theta_min, throttle.theta_max: theta_min must be below theta_max");
    }
    if (smc.lambda <= 0) errors.push_back("throttle.lambda: must be > 0");
    if (smc.boundary_layer <= 0) errors.push_back("throttle.boundary_layer: must be > 0");
    if (duration <= 0) errors.push_back("duration_s: must be > 0");
    if (dt <= 0) errors.push_back("dt_s: must be > 0");
    if (inertia_scale <= 0) errors.push_back("true_inertia_scale: must be > 0");
    if (damping_scale <= 0) errors.push_back("true_damping_scale: must be > 0");
    if (!errors.empty()) {
        for (const std::string& e : errors) std::cerr << e << "\n";
        return kExitValidation;
    }

    vigilsim::throttle::PlantParams plant_true = plant;
    plant_true.inertia *= inertia_scale;
    plant_true.damping *= damping_scale;
    const auto log = vigilsim::throttle::track(
        plant_true, plant, smc,
        [amplitude](double) { return vigilsim::throttle::Reference{amplitude, 0.0, 0.0}; }, dt,
        duration);

    std::ostream* out = &std::cout;
    std::ofstream file;
    if (!out_path.empty()) {
        file.open(out_path, std::ios::binary);
        if (!file) throw std::runtime_error("cannot open " + out_path);
        out = &file;
    }
    *out << "t,theta,theta_ref,s,u\n";
    for (const auto& p : log) {
        *out << fmt(p.t) << ',' << fmt(p.theta) << ',' << fmt(p.theta_ref) << ',' << fmt(p.s)
             << ',' << fmt(p.u) << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Closed-loop driver-vigilance and speed-regulation simulator"};
    app.require_subcommand(1);

    std::string config_path, out_dir;
    bool dump_frames = false;
    CLI::App* simulate = app.add_subcommand("simulate", "Run a closed-loop scenario");
    simulate->add_option("--config", config_path, "Scenario config JSON")->required();
    simulate->add_option("--out", out_dir, "Output directory")->required();
    simulate->add_flag("--dump-frames", dump_frames, "Write PGM frame pairs");

    std::string even_path, odd_path;
    int threshold = 40;
    bool with_areas = false;
    CLI::App* detect = app.add_subcommand("detect", "Detect pupils in one field pair");
    detect->add_option("--even", even_path, "Bright-pupil field (PGM)")->required();
    detect->add_option("--odd", odd_path, "Dark-pupil field (PGM)")->required();
    detect->add_option("--threshold", threshold, "Difference threshold")
        ->required()
        ->check(CLI::Range(1, 255));
    detect->add_flag("--areas", with_areas, "Append pupil area columns");

    std::string metrics_input;
    double window_s = 60.0, cadence_s = 1.0, calibrated_area = 0.0;
    CLI::App* metrics = app.add_subcommand("metrics", "Ocular metrics from an observation CSV");
    metrics->add_option("--input", metrics_input, "Observation CSV")->required();
    metrics->add_option("--window", window_s, "Window length, seconds")
        ->required()
        ->check(CLI::PositiveNumber);
    metrics->add_option("--cadence", cadence_s, "Output cadence, seconds")
        ->check(CLI::PositiveNumber);
    metrics->add_option("--calibrated-area", calibrated_area,
                        "Fully-open pupil area; uses area columns when > 0");

    std::string step_config, step_out;
    CLI::App* step = app.add_subcommand("throttle-step", "Throttle servo step response");
    step->add_option("--config", step_config, "Step config JSON")->required();
    step->add_option("--out", step_out, "Output CSV (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitValidation;
    }

    try {
        if (simulate->parsed()) return run_simulate(config_path, out_dir, dump_frames);
        if (detect->parsed()) return run_detect(even_path, odd_path, threshold, with_areas);
        if (metrics->parsed()) return run_metrics(metrics_input, window_s, cadence_s, calibrated_area);
        if (step->parsed()) return run_throttle_step(step_config, step_out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
    return 0;
}
