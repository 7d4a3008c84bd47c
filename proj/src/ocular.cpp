#include "vigilsim/ocular.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace vigilsim::ocular {

double openness_from_observation(const pupil::PupilObservation& obs,
                                 double calibrated_open_area) {
    if (calibrated_open_area <= 0.0) {
        throw std::invalid_argument("calibrated open area must be positive");
    }
    double sum = 0.0;
    int count = 0;
    if (obs.left) {
        sum += obs.left->area;
        ++count;
    }
    if (obs.right) {
        sum += obs.right->area;
        ++count;
    }
    if (count == 0) return 0.0;
    return std::clamp(sum / count / calibrated_open_area, 0.0, 1.0);
}

double perclos(std::span<const EyeSample> window) {
    if (window.empty()) {
        throw std::invalid_argument("perclos over an empty window");
    }
    std::size_t closed = 0;
    for (const auto& s : window) {
        if (s.closed) ++closed;
    }
    return double(closed) / double(window.size());
}

namespace {

// Interpolated time at which openness falls through `level` between a and b.
double crossing_time(const EyeSample& a, const EyeSample& b, double level) {
    const double denom = b.openness - a.openness;
    if (denom == 0.0) return a.t;
    const double u = (level - a.openness) / denom;
    return a.t + u * (b.t - a.t);
}

}  // namespace

std::optional<double> aecs(std::span<const EyeSample> window) {
    for (std::size_t i = 1; i < window.size(); ++i) {
        if (window[i].t < window[i - 1].t) {
            throw std::invalid_argument("eye samples out of time order");
        }
    }

    std::vector<double> durations;
    bool have_high = false;
    double t_high = 0.0;
    for (std::size_t i = 1; i < window.size(); ++i) {
        const auto& a = window[i - 1];
        const auto& b = window[i];
        if (a.openness >= kClosureHighLevel && b.openness < kClosureHighLevel) {
            t_high = crossing_time(a, b, kClosureHighLevel);
            have_high = true;
        }
        if (a.openness >= kClosureLowLevel && b.openness < kClosureLowLevel && have_high) {
            durations.push_back(crossing_time(a, b, kClosureLowLevel) - t_high);
            have_high = false;  // the next event needs a fresh high crossing
        }
    }
    if (durations.empty()) return std::nullopt;
    double sum = 0.0;
    for (double d : durations) sum += d;
    return sum / double(durations.size());
}

OcularMetrics ocular_metrics(std::span<const EyeSample> stream, double window_s, double t_now) {
    if (window_s <= 0.0) {
        throw std::invalid_argument("window span must be positive");
    }
    const double t_min = t_now - window_s;
    std::size_t begin = stream.size();
    std::size_t end = 0;
    for (std::size_t i = 0; i < stream.size(); ++i) {
        if (stream[i].t > t_min && stream[i].t <= t_now) {
            begin = std::min(begin, i);
            end = i + 1;
        }
    }
    if (begin >= end) {
        throw std::invalid_argument("no samples in window");
    }
    const auto window = stream.subspan(begin, end - begin);

    OcularMetrics m;
    m.perclos = perclos(window);
    m.aecs_s = aecs(window);
    m.window_span_s = window_s;
    m.sample_count = int(window.size());
    return m;
}

}  // namespace vigilsim::ocular
