#pragma once

#include <optional>

namespace vigilsim::fusion {

enum class Stage { Alert, Warning, Critical };

const char* to_string(Stage s);

struct VigilanceMetrics {
    double perclos = 0.0;
    std::optional<double> aecs_s;       // slower closure (larger) = more fatigued
    double tilt_rate_per_min = 0.0;
    double off_frontal_fraction = 0.0;  // off-frontal time / window span
    double gaze_dispersion_deg = 0.0;
};

// Channel weights (sum to 1) plus the raw value at which each channel's
// normalized score saturates at 1.
struct FusionWeights {
    double w_perclos = 0.50;
    double w_aecs = 0.15;
    double w_tilt = 0.15;
    double w_off_frontal = 0.10;
    double w_gaze = 0.10;

    double sat_perclos = 0.5;
    double sat_aecs_s = 1.0;
    double sat_tilt_rate = 8.0;
    double sat_off_frontal = 0.5;
    double sat_gaze_deg = 10.0;
};

struct Thresholds {
    double warn = 0.35;
    double crit = 0.60;
    double hysteresis = 0.05;
};

struct ChannelScores {
    double perclos = 0.0;
    double aecs = 0.0;
    double tilt = 0.0;
    double off_frontal = 0.0;
    double gaze = 0.0;
};

struct FatigueAssessment {
    double t = 0.0;
    double level = 0.0;
    Stage stage = Stage::Alert;
    ChannelScores scores;
};

// Saturating map min(1, raw / saturation) per channel; a missing closure
// speed scores 0.
ChannelScores normalize_metrics(const VigilanceMetrics& m, const FusionWeights& w);

// Weighted sum of the normalized scores; stage by plain thresholds
// (Alert below warn, Critical at or above crit).
FatigueAssessment fatigue_level(const VigilanceMetrics& m, const FusionWeights& w,
                                const Thresholds& th, double t = 0.0);

// Upgrades happen at the threshold; downgrades need the level to drop below
// threshold - hysteresis, suppressing stage chatter.
Stage stage_hysteresis(Stage previous, double level, const Thresholds& th);

}  // namespace vigilsim::fusion
