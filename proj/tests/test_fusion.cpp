#include <algorithm>
#include <string>
#include <vector>

#include "doctest.h"
#include "vigilsim/fusion.hpp"
#include "vigilsim/rng.hpp"

using namespace vigilsim::fusion;

TEST_CASE("all-zero metrics score zero and stay Alert") {
    const FatigueAssessment a = fatigue_level({}, FusionWeights{}, Thresholds{});
    CHECK(a.level == doctest::Approx(0.0));
    CHECK(a.stage == Stage::Alert);
    CHECK(a.scores.perclos == doctest::Approx(0.0));
    CHECK(a.scores.aecs == doctest::Approx(0.0));
}

TEST_CASE("channels saturate at their configured raw value") {
    FusionWeights w;
    VigilanceMetrics m;
    m.perclos = 0.5;
    CHECK(normalize_metrics(m, w).perclos == doctest::Approx(1.0));
    m.perclos = 1.0;
    CHECK(normalize_metrics(m, w).perclos == doctest::Approx(1.0));

    VigilanceMetrics tilt;
    tilt.tilt_rate_per_min = 2.0;
    CHECK(normalize_metrics(tilt, w).tilt == doctest::Approx(0.25));

    VigilanceMetrics none;
    none.aecs_s.reset();
    CHECK(normalize_metrics(none, w).aecs == doctest::Approx(0.0));
}

TEST_CASE("a single saturated channel with full weight pins the level at one") {
    FusionWeights w;
    w.w_perclos = 1.0;
    w.w_aecs = w.w_tilt = w.w_off_frontal = w.w_gaze = 0.0;
    VigilanceMetrics m;
    m.perclos = 0.9;
    const FatigueAssessment a = fatigue_level(m, w, Thresholds{});
    CHECK(a.level == doctest::Approx(1.0));
    CHECK(a.stage == Stage::Critical);
}

TEST_CASE("the documented mixed case lands at 0.38 and Warning") {
    FusionWeights w;  // 0.5 / 0.15 / 0.15 / 0.10 / 0.10
    VigilanceMetrics m;
    m.perclos = 0.3;
    m.aecs_s = 0.2;
    m.tilt_rate_per_min = 0.0;
    m.off_frontal_fraction = 0.25;
    m.gaze_dispersion_deg = 0.0;
    const FatigueAssessment a = fatigue_level(m, w, Thresholds{}, 12.0);
    CHECK(a.scores.perclos == doctest::Approx(0.6));
    CHECK(a.scores.aecs == doctest::Approx(0.2));
    CHECK(a.scores.tilt == doctest::Approx(0.0));
    CHECK(a.scores.off_frontal == doctest::Approx(0.5));
    CHECK(a.scores.gaze == doctest::Approx(0.0));
    CHECK(a.level == doctest::Approx(0.38));
    CHECK(a.stage == Stage::Warning);
    CHECK(a.t == doctest::Approx(12.0));
}

TEST_CASE("plain staging splits at the warn and critical thresholds") {
    FusionWeights w;
    w.w_perclos = 1.0;
    w.w_aecs = w.w_tilt = w.w_off_frontal = w.w_gaze = 0.0;
    const auto stage_for = [&](double perclos_raw) {
        VigilanceMetrics m;
        m.perclos = perclos_raw;
        return fatigue_level(m, w, Thresholds{}).stage;
    };
    CHECK(stage_for(0.17) == Stage::Alert);           // level 0.34
    CHECK(stage_for(0.175) == Stage::Warning);        // level 0.35, inclusive
    CHECK(stage_for(0.25) == Stage::Warning);         // level 0.50
    CHECK(stage_for(0.30) == Stage::Critical);        // level 0.60, inclusive
    CHECK(stage_for(0.45) == Stage::Critical);
}

TEST_CASE("hysteresis upgrades at the threshold and downgrades below the band") {
    const Thresholds th{0.35, 0.60, 0.05};
    CHECK(stage_hysteresis(Stage::Alert, 0.36, th) == Stage::Warning);
    CHECK(stage_hysteresis(Stage::Alert, 0.35, th) == Stage::Warning);
    CHECK(stage_hysteresis(Stage::Alert, 0.34, th) == Stage::Alert);
    CHECK(stage_hysteresis(Stage::Warning, 0.33, th) == Stage::Warning);
    CHECK(stage_hysteresis(Stage::Warning, 0.30, th) == Stage::Warning);
    CHECK(stage_hysteresis(Stage::Warning, 0.29, th) == Stage::Alert);
    CHECK(stage_hysteresis(Stage::Warning, 0.60, th) == Stage::Critical);
    CHECK(stage_hysteresis(Stage::Critical, 0.56, th) == Stage::Critical);
    CHECK(stage_hysteresis(Stage::Critical, 0.54, th) == Stage::Warning);
    CHECK(stage_hysteresis(Stage::Critical, 0.20, th) == Stage::Alert);
}

TEST_CASE("fatigue level is monotone in every raw channel") {
    FusionWeights w;
    const auto level_for = [&](const VigilanceMetrics& m) {
        return fatigue_level(m, w, Thresholds{}).level;
    };
    VigilanceMetrics m;
    m.perclos = 0.1;
    m.aecs_s = 0.2;
    m.tilt_rate_per_min = 1.0;
    m.off_frontal_fraction = 0.1;
    m.gaze_dispersion_deg = 2.0;
    const double base = level_for(m);

    VigilanceMetrics up = m;
    up.perclos = 0.2;
    CHECK(level_for(up) > base);
    up = m;
    up.aecs_s = 0.5;
    CHECK(level_for(up) > base);
    up = m;
    up.tilt_rate_per_min = 3.0;
    CHECK(level_for(up) > base);
    up = m;
    up.off_frontal_fraction = 0.3;
    CHECK(level_for(up) > base);
    up = m;
    up.gaze_dispersion_deg = 5.0;
    CHECK(level_for(up) > base);
}

TEST_CASE("hysteresis never adds stage transitions on a noisy level") {
    const Thresholds th{0.35, 0.60, 0.05};
    double level = 0.3;
    Stage plain_prev = Stage::Alert;
    Stage hyst_prev = Stage::Alert;
    int plain_changes = 0;
    int hyst_changes = 0;
    for (int k = 0; k < 2000; ++k) {
        level += 0.04 * vigilsim::rng::gaussian(vigilsim::rng::mix(0xF00D, k));
        level = std::clamp(level, 0.0, 1.0);
        VigilanceMetrics m;
        m.perclos = level * FusionWeights{}.sat_perclos;
        FusionWeights w;
        w.w_perclos = 1.0;
        w.w_aecs = w.w_tilt = w.w_off_frontal = w.w_gaze = 0.0;
        const Stage plain = fatigue_level(m, w, th).stage;
        const Stage hyst = stage_hysteresis(hyst_prev, level, th);
        if (plain != plain_prev) ++plain_changes;
        if (hyst != hyst_prev) ++hyst_changes;
        plain_prev = plain;
        hyst_prev = hyst;
    }
    CHECK(hyst_changes <= plain_changes);
    CHECK(hyst_changes > 0);
}

TEST_CASE("the default weighting leans hardest on perclos") {
    const FusionWeights w;
    CHECK(w.w_perclos > w.w_aecs);
    CHECK(w.w_perclos > w.w_tilt);
    CHECK(w.w_perclos > w.w_off_frontal);
    CHECK(w.w_perclos > w.w_gaze);
    CHECK(w.w_perclos + w.w_aecs + w.w_tilt + w.w_off_frontal + w.w_gaze ==
          doctest::Approx(1.0));
}

TEST_CASE("stage names match their enum values") {
    CHECK(std::string(to_string(Stage::Alert)) == "Alert");
    CHECK(std::string(to_string(Stage::Warning)) == "Warning");
    CHECK(std::string(to_string(Stage::Critical)) == "Critical");
}
