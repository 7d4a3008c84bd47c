#include "vigilsim/synth.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "vigilsim/rng.hpp"

namespace vigilsim::synth {

namespace {

constexpr std::uint64_t kStreamBackground = 0xB6;
constexpr std::uint64_t kStreamNoiseEven = 0x4E;
constexpr std::uint64_t kStreamNoiseOdd = 0x0D;

double interp_scalar(const std::vector<ScalarKey>& keys, double t, double fallback) {
    if (keys.empty()) return fallback;
    if (t <= keys.front().t) return keys.front().value;
    if (t >= keys.back().t) return keys.back().value;
    for (std::size_t i = 1; i < keys.size(); ++i) {
        if (t <= keys[i].t) {
            const auto& a = keys[i - 1];
            const auto& b = keys[i];
            const double u = (t - a.t) / (b.t - a.t);
            return a.value + u * (b.value - a.value);
        }
    }
    return keys.back().value;
}

template <typename Key, typename Get>
double interp_field(const std::vector<Key>& keys, double t, Get get) {
    if (keys.empty()) return 0.0;
    if (t <= keys.front().t) return get(keys.front());
    if (t >= keys.back().t) return get(keys.back());
    for (std::size_t i = 1; i < keys.size(); ++i) {
        if (t <= keys[i].t) {
            const auto& a = keys[i - 1];
            const auto& b = keys[i];
            const double u = (t - a.t) / (b.t - a.t);
            return get(a) + u * (get(b) - get(a));
        }
    }
    return get(keys.back());
}

// 1 just before onset, linear ramp to 0, hold, linear ramp back to 1.
double closure_envelope(const ClosureEvent& e, double t) {
    const double t1 = e.onset_s;
    const double t2 = t1 + e.closing_s;
    const double t3 = t2 + e.hold_s;
    const double t4 = t3 + e.reopen_s;
    if (t <= t1 || t >= t4) return 1.0;
    if (t < t2) return e.closing_s > 0.0 ? 1.0 - (t - t1) / e.closing_s : 0.0;
    if (t <= t3) return 0.0;
    return e.reopen_s > 0.0 ? (t - t3) / e.reopen_s : 1.0;
}

Vec2 clamp_to_image(Vec2 p, const SceneConfig& cfg) {
    p.x = std::clamp(p.x, 0.0, double(cfg.image_width - 1));
    p.y = std::clamp(p.y, 0.0, double(cfg.image_height - 1));
    return p;
}

void stamp_disk(std::vector<double>& buf, int w, int h, Vec2 center, double radius,
                double delta) {
    const int x0 = std::max(0, int(std::floor(center.x - radius)));
    const int x1 = std::min(w - 1, int(std::ceil(center.x + radius)));
    const int y0 = std::max(0, int(std::floor(center.y - radius)));
    const int y1 = std::min(h - 1, int(std::ceil(center.y + radius)));
    const double r2 = radius * radius;
    for (int y = y0; y <= y1; ++y) {
        for (int x = x0; x <= x1; ++x) {
            const double dx = x - center.x;
            const double dy = y - center.y;
            if (dx * dx + dy * dy <= r2) {
                buf[std::size_t(y) * w + x] += delta;
            }
        }
    }
}

void stamp_glint(std::vector<double>& buf, int w, int h, Vec2 center, double intensity) {
    const double radius = 1.0;
    const int x0 = std::max(0, int(std::floor(center.x - radius)));
    const int x1 = std::min(w - 1, int(std::ceil(center.x + radius)));
    const int y0 = std::max(0, int(std::floor(center.y - radius)));
    const int y1 = std::min(h - 1, int(std::ceil(center.y + radius)));
    for (int y = y0; y <= y1; ++y) {
        for (int x = x0; x <= x1; ++x) {
            const double dx = x - center.x;
            const double dy = y - center.y;
            if (dx * dx + dy * dy <= radius * radius) {
                auto& v = buf[std::size_t(y) * w + x];
                v = std::max(v, intensity);
            }
        }
    }
}

std::uint8_t quantize(double v) {
    return std::uint8_t(std::clamp<long>(std::lround(v), 0, 255));
}

}  // namespace

GroundTruth evaluate_script(const DriverScript& script, double t) {
    if (t < 0.0 || t > script.duration_s) {
        throw std::out_of_range("script time out of range");
    }

    GroundTruth gt;
    gt.t = t;
    gt.pan_deg = interp_field(script.pose, t, [](const PoseKey& k) { return k.pan_deg; });
    gt.tilt_deg = interp_field(script.pose, t, [](const PoseKey& k) { return k.tilt_deg; });
    gt.roll_deg = interp_field(script.pose, t, [](const PoseKey& k) { return k.roll_deg; });

    double openness = std::clamp(interp_scalar(script.openness, t, 1.0), 0.0, 1.0);
    double envelope = 1.0;
    for (const auto& e : script.closures) {
        envelope = std::min(envelope, closure_envelope(e, t));
    }
    gt.openness = openness * envelope;
    gt.visible_fraction = gt.openness;

    const double gaze_pan = interp_field(script.gaze, t, [](const GazeKey& k) { return k.pan_deg; });
    const double gaze_tilt = interp_field(script.gaze, t, [](const GazeKey& k) { return k.tilt_deg; });

    const Vec2 head_shift{script.pose_px_per_deg * gt.pan_deg,
                          script.pose_px_per_deg * gt.tilt_deg};
    const Vec2 gaze_shift{script.gaze_px_per_deg * gaze_pan,
                          script.gaze_px_per_deg * gaze_tilt};

    const Vec2 anchor_left = script.eye_base_left + head_shift;
    const Vec2 anchor_right = script.eye_base_right + head_shift;
    gt.glint_left = anchor_left + script.glint_offset_px;
    gt.glint_right = anchor_right + script.glint_offset_px;
    gt.pupil_left = anchor_left + gaze_shift;
    gt.pupil_right = anchor_right + gaze_shift;
    return gt;
}

FramePair render_frame_pair(const GroundTruth& gt, const SceneConfig& cfg,
                            std::uint64_t frame_index) {
    const int w = cfg.image_width;
    const int h = cfg.image_height;
    const std::size_t n = std::size_t(w) * std::size_t(h);
    const std::uint64_t frame_key = rng::mix(cfg.seed, frame_index);

    // Shared background texture.
    std::vector<double> even(n), odd(n);
    const std::uint64_t bg_key = rng::mix(frame_key, kStreamBackground);
    for (std::size_t i = 0; i < n; ++i) {
        const double bg = cfg.background_amplitude * rng::uniform01(rng::mix(bg_key, i));
        even[i] = bg;
        odd[i] = bg;
    }

    const double vis = std::clamp(gt.visible_fraction, 0.0, 1.0);
    if (vis > 0.0) {
        // Lid occlusion shrinks the exposed pupil area in proportion to vis.
        const double radius = cfg.pupil_radius_px * std::sqrt(vis);
        const double delta = cfg.pupil_contrast * vis;
        stamp_disk(even, w, h, clamp_to_image(gt.pupil_left, cfg), radius, delta);
        stamp_disk(even, w, h, clamp_to_image(gt.pupil_right, cfg), radius, delta);
        // Glints are specular and appear identically in both fields.
        for (const Vec2 g : {gt.glint_left, gt.glint_right}) {
            const Vec2 c = clamp_to_image(g, cfg);
            stamp_glint(even, w, h, c, cfg.glint_intensity);
            stamp_glint(odd, w, h, c, cfg.glint_intensity);
        }
    }

    FramePair pair;
    pair.t = gt.t;
    pair.even = GrayImage(w, h);
    pair.odd = GrayImage(w, h);
    const std::uint64_t noise_even_key = rng::mix(frame_key, kStreamNoiseEven);
    const std::uint64_t noise_odd_key = rng::mix(frame_key, kStreamNoiseOdd);
    if (cfg.noise_sigma > 0.0) {
        for (std::size_t i = 0; i < n; ++i) {
            pair.even.pixels[i] =
                quantize(even[i] + cfg.noise_sigma * rng::gaussian(rng::mix(noise_even_key, i)));
            pair.odd.pixels[i] =
                quantize(odd[i] + cfg.noise_sigma * rng::gaussian(rng::mix(noise_odd_key, i)));
        }
    } else {
        for (std::size_t i = 0; i < n; ++i) {
            pair.even.pixels[i] = quantize(even[i]);
            pair.odd.pixels[i] = quantize(odd[i]);
        }
    }
    return pair;
}

}  // namespace vigilsim::synth
