#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "vigilsim/pose_gaze.hpp"
#include "vigilsim/rng.hpp"

using namespace vigilsim;
using namespace vigilsim::pose;

namespace {

PoseState diag_state(double angle_var, double rate_var) {
    PoseState s;
    s.cov.setZero();
    s.cov.block<3, 3>(0, 0) = angle_var * Eigen::Matrix3d::Identity();
    s.cov.block<3, 3>(3, 3) = rate_var * Eigen::Matrix3d::Identity();
    return s;
}

}  // namespace

TEST_CASE("prediction advances angles by rate times dt") {
    PoseState s = diag_state(1.0, 1.0);
    s.angles << 10.0, 0.0, 0.0;
    s.rates << 5.0, 0.0, 0.0;
    const PoseState p = kf_predict(s, 0.1, 400.0);
    CHECK(p.angles(0) == doctest::Approx(10.5));
    CHECK(p.angles(1) == doctest::Approx(0.0));
    CHECK(p.rates(0) == doctest::Approx(5.0));
}

TEST_CASE("prediction with zero rates leaves the angles in place") {
    PoseState s = diag_state(1.0, 1.0);
    s.angles << 3.0, -7.0, 1.0;
    const PoseState p = kf_predict(s, 0.5, 400.0);
    CHECK(p.angles(0) == doctest::Approx(3.0));
    CHECK(p.angles(1) == doctest::Approx(-7.0));
    CHECK(p.angles(2) == doctest::Approx(1.0));
}

TEST_CASE("prediction inflates the covariance") {
    const PoseState s = diag_state(1.0, 1.0);
    const PoseState p = kf_predict(s, 0.1, 400.0);
    CHECK(p.cov.trace() > s.cov.trace());
    CHECK((p.cov - p.cov.transpose()).norm() < 1e-12);
    CHECK_THROWS_AS(kf_predict(s, 0.0, 400.0), std::invalid_argument);
    CHECK_THROWS_AS(kf_predict(s, -0.1, 400.0), std::invalid_argument);
}

TEST_CASE("update matches the hand-computed scalar case") {
    PoseState prior = diag_state(4.0, 9.0);
    PoseMeasurement meas;
    meas.angles = {10.0, 0.0, 0.0};
    meas.noise_std_deg = 2.0;
    const UpdateResult r = kf_update(prior, meas);
    CHECK(r.state.angles(0) == doctest::Approx(5.0).epsilon(1e-12));
    CHECK(r.state.cov(0, 0) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(r.state.angles(1) == doctest::Approx(0.0));
    CHECK(r.state.rates.norm() == doctest::Approx(0.0));
    CHECK(r.innovation_deg == doctest::Approx(10.0));
    CHECK_THROWS_AS(kf_update(prior, PoseMeasurement{0.0, {0, 0, 0}, 0.0}),
                    std::invalid_argument);
}

TEST_CASE("an agreeing measurement leaves the mean and shrinks the trace") {
    PoseState prior = diag_state(4.0, 9.0);
    prior.angles << 2.0, -1.0, 0.5;
    PoseMeasurement meas;
    meas.angles = {2.0, -1.0, 0.5};
    meas.noise_std_deg = 1.0;
    const UpdateResult r = kf_update(prior, meas);
    CHECK(r.state.angles(0) == doctest::Approx(2.0));
    CHECK(r.state.angles(1) == doctest::Approx(-1.0));
    CHECK(r.state.angles(2) == doctest::Approx(0.5));
    CHECK(r.state.cov.trace() <= prior.cov.trace());
    CHECK(r.innovation_deg == doctest::Approx(0.0));
}

TEST_CASE("a nearly uninformative measurement leaves the prior") {
    PoseState prior = diag_state(4.0, 9.0);
    prior.angles << 1.0, 2.0, 3.0;
    PoseMeasurement meas;
    meas.angles = {50.0, -50.0, 20.0};
    meas.noise_std_deg = 1e6;
    const UpdateResult r = kf_update(prior, meas);
    CHECK(std::abs(r.state.angles(0) - 1.0) < 1e-3);
    CHECK(std::abs(r.state.angles(1) - 2.0) < 1e-3);
    CHECK(std::abs(r.state.angles(2) - 3.0) < 1e-3);
}

TEST_CASE("eye motion maps pupil shift to pan and tilt") {
    PoseState prev = diag_state(1.0, 1.0);
    const Angles a = eye_motion_predict(prev, {10.0, 0.0}, 0.5);
    CHECK(a.pan_deg == doctest::Approx(5.0));
    CHECK(a.tilt_deg == doctest::Approx(0.0));

    prev.angles << 10.0, 0.0, 4.0;
    const Angles b = eye_motion_predict(prev, {-4.0, 2.0}, 0.5);
    CHECK(b.pan_deg == doctest::Approx(8.0));
    CHECK(b.tilt_deg == doctest::Approx(1.0));
    CHECK(b.roll_deg == doctest::Approx(4.0));
}

TEST_CASE("fusion weight follows the previous innovation") {
    const Angles kf{0.0, 0.0, 0.0};
    const Angles eye{10.0, -4.0, 2.0};
    const Angles trust_kf = fuse_predictions(kf, eye, 0.0, 5.0);
    CHECK(trust_kf.pan_deg == doctest::Approx(0.0));
    const Angles trust_eye = fuse_predictions(kf, eye, 5.0, 5.0);
    CHECK(trust_eye.pan_deg == doctest::Approx(10.0));
    const Angles beyond = fuse_predictions(kf, eye, 50.0, 5.0);
    CHECK(beyond.pan_deg == doctest::Approx(10.0));
    const Angles half = fuse_predictions(kf, eye, 2.5, 5.0);
    CHECK(half.pan_deg == doctest::Approx(5.0));
    CHECK(half.tilt_deg == doctest::Approx(-2.0));

    const Angles same = fuse_predictions(eye, eye, 3.3, 5.0);
    CHECK(same.pan_deg == doctest::Approx(eye.pan_deg));
    CHECK(same.tilt_deg == doctest::Approx(eye.tilt_deg));
    CHECK(same.roll_deg == doctest::Approx(eye.roll_deg));
}

TEST_CASE("tracker first step echoes the measurement") {
    PoseTracker tracker;
    PoseMeasurement meas;
    meas.t = 0.0;
    meas.angles = {4.0, -2.0, 1.0};
    const auto r = tracker.step(meas, std::nullopt);
    CHECK(r.kf_prediction.pan_deg == doctest::Approx(4.0));
    CHECK(r.fused_prediction.pan_deg == doctest::Approx(4.0));
    CHECK(r.posterior.pan_deg == doctest::Approx(4.0));
    CHECK(r.posterior.tilt_deg == doctest::Approx(-2.0));
    CHECK(tracker.initialized());
}

TEST_CASE("tracker keeps a symmetric positive semidefinite covariance") {
    PoseTracker tracker;
    double pan = 0.0;
    for (int k = 0; k < 200; ++k) {
        const double t = k / 30.0;
        pan += rng::gaussian(rng::mix(0xAB, k));
        PoseMeasurement meas;
        meas.t = t;
        meas.angles = {pan, 0.5 * pan, 0.0};
        std::optional<Vec2> shift;
        if (k % 3 == 0) shift = Vec2{rng::gaussian(rng::mix(0xAC, k)), 0.0};
        tracker.step(meas, shift);

        const auto& P = tracker.state().cov;
        REQUIRE((P - P.transpose()).norm() < 1e-9);
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix<double, 6, 6>> es(P);
        REQUIRE(es.eigenvalues().minCoeff() >= -1e-9);
    }
}

TEST_CASE("frontal samples produce no off-frontal time and no excursions") {
    std::vector<PoseSample> window;
    for (int i = 0; i <= 100; ++i) window.push_back({i * 0.1, {1.0, -2.0, 0.0}});
    const PoseMetrics m = pose_metrics(window, 10.0, 15.0, 20.0);
    CHECK(m.off_frontal_s == doctest::Approx(0.0));
    CHECK(m.tilt_rate_per_min == doctest::Approx(0.0));
    CHECK(m.window_span_s == doctest::Approx(10.0));
    CHECK_THROWS_AS(pose_metrics({}, 10.0, 15.0, 20.0), std::invalid_argument);
}

TEST_CASE("off-frontal time integrates sample intervals beyond the cone") {
    std::vector<PoseSample> window;
    for (int i = 0; i <= 100; ++i) {
        const double t = i * 0.1;
        const double pan = (t >= 4.0 && t < 6.0) ? 40.0 : 0.0;
        window.push_back({t, {pan, 0.0, 0.0}});
    }
    const PoseMetrics m = pose_metrics(window, 10.0, 15.0, 20.0);
    CHECK(m.off_frontal_s == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("excursion count is per distinct event") {
    std::vector<PoseSample> window;
    for (int i = 0; i <= 60; ++i) {
        const double t = double(i);
        double tilt = 0.0;
        if ((t >= 5 && t < 7) || (t >= 25 && t < 27) || (t >= 45 && t < 47)) tilt = 25.0;
        window.push_back({t, {0.0, tilt, 0.0}});
    }
    const PoseMetrics m = pose_metrics(window, 60.0, 15.0, 20.0);
    CHECK(m.tilt_rate_per_min == doctest::Approx(3.0));
}

TEST_CASE("an excursion only ends back inside the frontal cone") {
    // Dipping to 18 deg (under the 20 deg trigger but outside the 15 deg
    // cone) must not split one excursion into two.
    std::vector<PoseSample> window;
    const double tilts[] = {0.0, 25.0, 18.0, 25.0, 10.0, 25.0, 0.0};
    for (int i = 0; i < 7; ++i) window.push_back({double(i), {0.0, tilts[i], 0.0}});
    const PoseMetrics m = pose_metrics(window, 60.0, 15.0, 20.0);
    CHECK(m.tilt_rate_per_min == doctest::Approx(2.0));
}

TEST_CASE("roll excursions count like tilt excursions") {
    std::vector<PoseSample> window;
    const double rolls[] = {0.0, -25.0, 0.0, 0.0};
    for (int i = 0; i < 4; ++i) window.push_back({double(i), {0.0, 0.0, rolls[i]}});
    const PoseMetrics m = pose_metrics(window, 60.0, 15.0, 20.0);
    CHECK(m.tilt_rate_per_min == doctest::Approx(1.0));
}

TEST_CASE("local gaze scales the pupil-glint vector") {
    const GazeAngles zero = local_gaze({12.0, 7.0}, {12.0, 7.0}, 0.5);
    CHECK(zero.pan_deg == doctest::Approx(0.0));
    CHECK(zero.tilt_deg == doctest::Approx(0.0));

    const GazeAngles a = local_gaze({6.0, 0.0}, {0.0, 0.0}, 0.5);
    CHECK(a.pan_deg == doctest::Approx(3.0));
    CHECK(a.tilt_deg == doctest::Approx(0.0));

    const GazeAngles b = local_gaze({-2.0, 4.0}, {0.0, 0.0}, 0.5);
    CHECK(b.pan_deg == doctest::Approx(-1.0));
    CHECK(b.tilt_deg == doctest::Approx(2.0));
}

TEST_CASE("overall gaze composes face pose and local gaze") {
    const GazeSample a = overall_gaze(1.0, {10.0, 0.0, 0.0}, {-3.0, 0.0});
    CHECK(a.t == doctest::Approx(1.0));
    CHECK(a.pan_deg == doctest::Approx(7.0));

    const GazeSample b = overall_gaze(2.0, {5.0, 1.0, 0.0}, {1.0, -3.0});
    CHECK(b.pan_deg == doctest::Approx(6.0));
    CHECK(b.tilt_deg == doctest::Approx(-2.0));
}

TEST_CASE("gaze dispersion is zero for a fixed gaze and unity for a unit square wave") {
    std::vector<GazeSample> fixed;
    for (int i = 0; i < 10; ++i) fixed.push_back({i * 0.1, 4.2, -1.0});
    CHECK(gaze_narrowness(fixed) == doctest::Approx(0.0));

    std::vector<GazeSample> wave;
    for (int i = 0; i < 10; ++i) wave.push_back({i * 0.1, i % 2 ? 1.0 : -1.0, 0.0});
    CHECK(gaze_narrowness(wave) == doctest::Approx(1.0));

    std::vector<GazeSample> doubled = wave;
    for (auto& s : doubled) s.pan_deg *= 2.0;
    CHECK(gaze_narrowness(doubled) == doctest::Approx(2.0 * gaze_narrowness(wave)));

    CHECK_THROWS_AS(gaze_narrowness(std::vector<GazeSample>{{0.0, 1.0, 1.0}}),
                    std::invalid_argument);
}

TEST_CASE("glint search finds the weighted centroid of saturated pixels") {
    GrayImage img(24, 24);
    img.at(10, 10) = 255;
    img.at(11, 10) = 255;
    img.at(10, 11) = 250;
    img.at(3, 3) = 249;  // below the saturation floor
    const auto g = find_glint(img, {10.0, 10.0}, 5.0);
    REQUIRE(g);
    const double wsum = 255.0 + 255.0 + 250.0;
    CHECK(g->x == doctest::Approx((255.0 * 10 + 255.0 * 11 + 250.0 * 10) / wsum));
    CHECK(g->y == doctest::Approx((255.0 * 10 + 255.0 * 10 + 250.0 * 11) / wsum));

    CHECK_FALSE(find_glint(img, {3.0, 3.0}, 2.0));
}
