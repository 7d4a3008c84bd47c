#pragma once

#include <optional>
#include <span>

#include "vigilsim/pupil.hpp"

namespace vigilsim::ocular {

// Openness crossing levels used for closure-speed timing: an event runs from
// the last crossing below the high level to the next crossing below the low
// level (the P80 closure band).
inline constexpr double kClosureHighLevel = 0.8;
inline constexpr double kClosureLowLevel = 0.2;

struct OcularConfig {
    double close_threshold = 0.2;  // closed when openness <= this (P80)
    double window_s = 60.0;
};

struct EyeSample {
    double t = 0.0;
    double openness = 0.0;
    bool closed = false;
};

struct OcularMetrics {
    double perclos = 0.0;
    std::optional<double> aecs_s;  // absent when no completed closure in window
    double window_span_s = 0.0;
    int sample_count = 0;
};

inline EyeSample make_sample(double t, double openness, double close_threshold) {
    return {t, openness, openness <= close_threshold};
}

// Mean detected pupil area over present pupils divided by the calibrated
// fully-open area, clamped to [0,1]; 0 when nothing was detected. Throws
// std::invalid_argument when the calibration is nonpositive.
double openness_from_observation(const pupil::PupilObservation& obs,
                                 double calibrated_open_area);

// Fraction of samples flagged closed. Throws std::invalid_argument on an
// empty window.
double perclos(std::span<const EyeSample> window);

// Mean open->closed transition duration over completed closure events, with
// crossing times linearly interpolated between samples. Absent when the
// window holds no completed event. Throws std::invalid_argument when
// timestamps are not nondecreasing.
std::optional<double> aecs(std::span<const EyeSample> window);

// perclos and aecs over samples with t in (t_now - window_s, t_now]. Throws
// std::invalid_argument when the window is empty.
OcularMetrics ocular_metrics(std::span<const EyeSample> stream, double window_s, double t_now);

}  // namespace vigilsim::ocular
