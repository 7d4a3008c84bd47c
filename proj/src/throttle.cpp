#include "vigilsim/throttle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace vigilsim::throttle {

namespace {

double sgn(double x) {
    if (x > 0.0) return 1.0;
    if (x < 0.0) return -1.0;
    return 0.0;
}

double domega(double theta, double omega, double u, const PlantParams& p) {
    return (u - p.damping * omega - spring_torque(theta, p)) / p.inertia;
}

ThrottleState rk4_clamped(const ThrottleState& s, double uc, const PlantParams& p, double dt) {
    const double k1t = s.omega;
    const double k1w = domega(s.theta, s.omega, uc, p);
    const double k2t = s.omega + 0.5 * dt * k1w;
    const double k2w = domega(s.theta + 0.5 * dt * k1t, s.omega + 0.5 * dt * k1w, uc, p);
    const double k3t = s.omega + 0.5 * dt * k2w;
    const double k3w = domega(s.theta + 0.5 * dt * k2t, s.omega + 0.5 * dt * k2w, uc, p);
    const double k4t = s.omega + dt * k3w;
    const double k4w = domega(s.theta + dt * k3t, s.omega + dt * k3w, uc, p);

    ThrottleState out;
    out.theta = s.theta + dt / 6.0 * (k1t + 2.0 * k2t + 2.0 * k3t + k4t);
    out.omega = s.omega + dt / 6.0 * (k1w + 2.0 * k2w + 2.0 * k3w + k4w);

    if (out.theta <= p.theta_min) {
        out.theta = p.theta_min;
        if (out.omega < 0.0) out.omega = 0.0;
    } else if (out.theta >= p.theta_max) {
        out.theta = p.theta_max;
        if (out.omega > 0.0) out.omega = 0.0;
    }
    return out;
}

// The preload torque flips sign at theta = 0, and an RK4 stage straddling the
// flip can feed energy into the plant. Bisecting any step whose endpoints
// bracket zero confines the straddle to a vanishingly short substep, keeping
// the free response dissipative to well under the 1e-6 test tolerance.
ThrottleState step_splitting_crossings(const ThrottleState& s, double uc, const PlantParams& p,
                                       double dt, int depth) {
    const ThrottleState next = rk4_clamped(s, uc, p, dt);
    const bool crossed =
        s.theta != 0.0 && next.theta != 0.0 && (s.theta > 0.0) != (next.theta > 0.0);
    if (!crossed || depth >= 20) return next;
    const ThrottleState mid = step_splitting_crossings(s, uc, p, 0.5 * dt, depth + 1);
    return step_splitting_crossings(mid, uc, p, 0.5 * dt, depth + 1);
}

}  // namespace

double spring_torque(double theta, const PlantParams& p) {
    return p.spring_stiffness * theta + p.spring_preload * sgn(theta);
}

ThrottleState plant_step(const ThrottleState& s, double u, const PlantParams& p, double dt) {
    if (dt <= 0.0) throw std::invalid_argument("plant_step: dt must be > 0");
    const double uc = std::clamp(u, -p.torque_limit, p.torque_limit);
    return step_splitting_crossings(s, uc, p, dt, 0);
}

double sliding_surface(const ThrottleState& s, const Reference& ref, const SmcParams& c) {
    return (s.omega - ref.rate) + c.lambda * (s.theta - ref.theta);
}

double smc_control(const ThrottleState& s, const Reference& ref, const SmcParams& c,
                   const PlantParams& model) {
    const double edot = s.omega - ref.rate;
    const double surf = sliding_surface(s, ref, c);
    const double sat = std::clamp(surf / c.boundary_layer, -1.0, 1.0);
    const double u_eq = model.inertia * (ref.accel - c.lambda * edot) +
                        model.damping * s.omega + spring_torque(s.theta, model);
    return std::clamp(u_eq - c.gain * sat, -model.torque_limit, model.torque_limit);
}

std::vector<TrackPoint> track(const PlantParams& plant, const PlantParams& model,
                              const SmcParams& c,
                              const std::function<Reference(double)>& reference, double dt,
                              double duration) {
    if (dt <= 0.0) throw std::invalid_argument("track: dt must be > 0");
    const int n = static_cast<int>(std::llround(duration / dt));
    std::vector<TrackPoint> log;
    log.reserve(static_cast<std::size_t>(n) + 1);

    ThrottleState state;
    for (int i = 0; i <= n; ++i) {
        const double t = i * dt;
        const Reference ref = reference(t);
        TrackPoint pt;
        pt.t = t;
        pt.theta = state.theta;
        pt.theta_ref = ref.theta;
        pt.s = sliding_surface(state, ref, c);
        pt.u = smc_control(state, ref, c, model);
        log.push_back(pt);
        if (i < n) state = plant_step(state, pt.u, plant, dt);
    }
    return log;
}

}  // namespace vigilsim::throttle
