#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "vigilsim/synth.hpp"

using namespace vigilsim;
using namespace vigilsim::synth;

namespace {

long long pixel_sum(const GrayImage& img) {
    long long s = 0;
    for (std::uint8_t p : img.pixels) s += p;
    return s;
}

long long diff_sum(const FramePair& pair) {
    long long s = 0;
    for (std::size_t i = 0; i < pair.even.size(); ++i) {
        s += std::max(0, int(pair.even.pixels[i]) - int(pair.odd.pixels[i]));
    }
    return s;
}

}  // namespace

TEST_CASE("empty script evaluates to an open frontal driver") {
    DriverScript script;
    script.duration_s = 5.0;
    const GroundTruth gt = evaluate_script(script, 2.5);
    CHECK(gt.openness == doctest::Approx(1.0));
    CHECK(gt.visible_fraction == doctest::Approx(1.0));
    CHECK(gt.pan_deg == doctest::Approx(0.0));
    CHECK(gt.tilt_deg == doctest::Approx(0.0));
    CHECK(gt.roll_deg == doctest::Approx(0.0));
    CHECK(gt.pupil_left.x == doctest::Approx(script.eye_base_left.x));
    CHECK(gt.pupil_left.y == doctest::Approx(script.eye_base_left.y));
    CHECK(gt.pupil_right.x == doctest::Approx(script.eye_base_right.x));
}

TEST_CASE("openness keyframes interpolate linearly") {
    DriverScript script;
    script.duration_s = 20.0;
    script.openness = {{10.0, 1.0}, {10.4, 0.0}};
    CHECK(evaluate_script(script, 10.2).openness == doctest::Approx(0.5));
    // Tracks hold their end values outside the keyed range.
    CHECK(evaluate_script(script, 5.0).openness == doctest::Approx(1.0));
    CHECK(evaluate_script(script, 15.0).openness == doctest::Approx(0.0));
}

TEST_CASE("pose keyframes interpolate linearly") {
    DriverScript script;
    script.duration_s = 5.0;
    script.pose = {{0.0, 0.0, 0.0, 0.0}, {3.0, 30.0, 0.0, 0.0}};
    CHECK(evaluate_script(script, 1.0).pan_deg == doctest::Approx(10.0));
    CHECK(evaluate_script(script, 4.0).pan_deg == doctest::Approx(30.0));
}

TEST_CASE("closure events gate the openness track") {
    DriverScript script;
    script.duration_s = 5.0;
    script.closures = {{1.0, 0.2, 0.1, 0.2}};
    CHECK(evaluate_script(script, 0.5).openness == doctest::Approx(1.0));
    CHECK(evaluate_script(script, 1.1).openness == doctest::Approx(0.5));
    CHECK(evaluate_script(script, 1.25).openness == doctest::Approx(0.0));
    CHECK(evaluate_script(script, 1.4).openness == doctest::Approx(0.5));
    CHECK(evaluate_script(script, 2.0).openness == doctest::Approx(1.0));
}

TEST_CASE("script time outside the scripted range throws") {
    DriverScript script;
    script.duration_s = 5.0;
    CHECK_THROWS_AS(evaluate_script(script, -0.1), std::out_of_range);
    CHECK_THROWS_AS(evaluate_script(script, 5.1), std::out_of_range);
}

TEST_CASE("head pose shifts pupil and glint together, gaze shifts only the pupil") {
    DriverScript script;
    script.duration_s = 2.0;
    script.pose = {{0.0, 10.0, 0.0, 0.0}, {2.0, 10.0, 0.0, 0.0}};
    script.gaze = {{0.0, 3.0, 0.0}, {2.0, 3.0, 0.0}};
    script.pose_px_per_deg = 2.0;
    script.gaze_px_per_deg = 1.0;
    const GroundTruth gt = evaluate_script(script, 1.0);
    CHECK(gt.pupil_left.x == doctest::Approx(script.eye_base_left.x + 20.0 + 3.0));
    CHECK(gt.pupil_left.y == doctest::Approx(script.eye_base_left.y));
    CHECK(gt.glint_left.x == doctest::Approx(script.eye_base_left.x + 20.0 + 3.0));
    CHECK(gt.glint_left.y == doctest::Approx(script.eye_base_left.y - 3.0));
    CHECK(gt.pupil_right.x - gt.glint_right.x == doctest::Approx(0.0));
    CHECK(gt.pupil_right.y - gt.glint_right.y == doctest::Approx(3.0));
}

TEST_CASE("fully closed eye renders identical fields without noise") {
    SceneConfig cfg;
    cfg.image_width = 64;
    cfg.image_height = 48;
    cfg.noise_sigma = 0.0;
    GroundTruth gt;
    gt.openness = 0.0;
    gt.visible_fraction = 0.0;
    gt.pupil_left = {20.0, 24.0};
    gt.pupil_right = {44.0, 24.0};
    const FramePair pair = render_frame_pair(gt, cfg, 0);
    CHECK(pair.even.pixels == pair.odd.pixels);
}

TEST_CASE("pupil contrast appears only in the even field") {
    SceneConfig cfg;
    cfg.image_width = 80;
    cfg.image_height = 60;
    cfg.noise_sigma = 0.0;
    cfg.pupil_contrast = 120.0;
    cfg.pupil_radius_px = 4.0;
    GroundTruth gt;
    gt.pupil_left = {40.0, 30.0};
    gt.pupil_right = {60.0, 30.0};
    gt.glint_left = {5.0, 5.0};
    gt.glint_right = {10.0, 5.0};
    const FramePair pair = render_frame_pair(gt, cfg, 0);
    CHECK(int(pair.even.at(40, 30)) - int(pair.odd.at(40, 30)) == 120);
    CHECK(int(pair.even.at(40, 33)) - int(pair.odd.at(40, 33)) == 120);
    // Outside the pupil both fields share the background.
    CHECK(pair.even.at(40, 45) == pair.odd.at(40, 45));
}

TEST_CASE("glints saturate identically in both fields") {
    SceneConfig cfg;
    cfg.image_width = 64;
    cfg.image_height = 48;
    cfg.noise_sigma = 0.0;
    GroundTruth gt;
    gt.pupil_left = {20.0, 24.0};
    gt.pupil_right = {44.0, 24.0};
    gt.glint_left = {23.0, 21.0};
    gt.glint_right = {47.0, 21.0};
    const FramePair pair = render_frame_pair(gt, cfg, 0);
    CHECK(pair.even.at(23, 21) == 255);
    CHECK(pair.odd.at(23, 21) == 255);
    CHECK(int(pair.even.at(23, 21)) - int(pair.odd.at(23, 21)) == 0);
}

TEST_CASE("rendering is bit-deterministic in ground truth, config, and frame index") {
    SceneConfig cfg;
    cfg.image_width = 64;
    cfg.image_height = 48;
    cfg.noise_sigma = 4.0;
    cfg.seed = 99;
    GroundTruth gt;
    gt.pupil_left = {20.0, 24.0};
    gt.pupil_right = {44.0, 24.0};
    gt.glint_left = {23.0, 21.0};
    gt.glint_right = {47.0, 21.0};
    const FramePair a = render_frame_pair(gt, cfg, 7);
    const FramePair b = render_frame_pair(gt, cfg, 7);
    CHECK(a.even.pixels == b.even.pixels);
    CHECK(a.odd.pixels == b.odd.pixels);

    const FramePair c = render_frame_pair(gt, cfg, 8);
    CHECK(a.even.pixels != c.even.pixels);
}

TEST_CASE("difference energy grows with openness") {
    SceneConfig cfg;
    cfg.image_width = 64;
    cfg.image_height = 48;
    cfg.noise_sigma = 0.0;
    GroundTruth gt;
    gt.pupil_left = {20.0, 24.0};
    gt.pupil_right = {44.0, 24.0};
    gt.glint_left = {2.0, 2.0};
    gt.glint_right = {6.0, 2.0};
    long long prev = -1;
    for (double vis : {0.0, 0.25, 0.5, 0.75, 1.0}) {
        gt.visible_fraction = vis;
        gt.openness = vis;
        const long long s = diff_sum(render_frame_pair(gt, cfg, 0));
        CHECK(s > prev);
        prev = s;
    }
}

TEST_CASE("odd field carries no pupil signature") {
    SceneConfig cfg;
    cfg.image_width = 32;
    cfg.image_height = 32;
    cfg.noise_sigma = 0.0;
    GroundTruth open;
    open.pupil_left = {10.0, 16.0};
    open.pupil_right = {22.0, 16.0};
    open.glint_left = {12.0, 14.0};
    open.glint_right = {24.0, 14.0};
    GroundTruth closed = open;
    closed.visible_fraction = 0.0;
    closed.openness = 0.0;

    const FramePair a = render_frame_pair(open, cfg, 0);
    const FramePair b = render_frame_pair(closed, cfg, 0);
    // Away from the glints the odd field is pure background either way.
    for (int y = 0; y < 32; ++y) {
        for (int x = 0; x < 32; ++x) {
            const bool near_glint = (std::abs(x - 12) <= 1 && std::abs(y - 14) <= 1) ||
                                    (std::abs(x - 24) <= 1 && std::abs(y - 14) <= 1);
            if (!near_glint) REQUIRE(a.odd.at(x, y) == b.odd.at(x, y));
        }
    }
    CHECK(pixel_sum(a.even) > pixel_sum(b.even));
}
