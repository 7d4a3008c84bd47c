#include "vigilsim/fusion.hpp"

#include <algorithm>

namespace vigilsim::fusion {

const char* to_string(Stage s) {
    switch (s) {
        case Stage::Alert: return "Alert";
        case Stage::Warning: return "Warning";
        case Stage::Critical: return "Critical";
    }
    return "Alert";
}

namespace {

double saturate(double raw, double saturation) {
    if (raw <= 0.0) return 0.0;
    return std::min(1.0, raw / saturation);
}

Stage plain_stage(double level, const Thresholds& th) {
    if (level >= th.crit) return Stage::Critical;
    if (level >= th.warn) return Stage::Warning;
    return Stage::Alert;
}

double entry_threshold(Stage s, const Thresholds& th) {
    return s == Stage::Critical ? th.crit : th.warn;
}

}  // namespace

ChannelScores normalize_metrics(const VigilanceMetrics& m, const FusionWeights& w) {
    ChannelScores s;
    s.perclos = saturate(m.perclos, w.sat_perclos);
    s.aecs = m.aecs_s ? saturate(*m.aecs_s, w.sat_aecs_s) : 0.0;
    s.tilt = saturate(m.tilt_rate_per_min, w.sat_tilt_rate);
    s.off_frontal = saturate(m.off_frontal_fraction, w.sat_off_frontal);
    s.gaze = saturate(m.gaze_dispersion_deg, w.sat_gaze_deg);
    return s;
}

FatigueAssessment fatigue_level(const VigilanceMetrics& m, const FusionWeights& w,
                                const Thresholds& th, double t) {
    FatigueAssessment a;
    a.t = t;
    a.scores = normalize_metrics(m, w);
    a.level = w.w_perclos * a.scores.perclos + w.w_aecs * a.scores.aecs +
              w.w_tilt * a.scores.tilt + w.w_off_frontal * a.scores.off_frontal +
              w.w_gaze * a.scores.gaze;
    a.stage = plain_stage(a.level, th);
    return a;
}

Stage stage_hysteresis(Stage previous, double level, const Thresholds& th) {
    const Stage target = plain_stage(level, th);
    if (target > previous) return target;
    Stage s = previous;
    while (s > target && level < entry_threshold(s, th) - th.hysteresis) {
        s = s == Stage::Critical ? Stage::Warning : Stage::Alert;
    }
    return s;
}

}  // namespace vigilsim::fusion
