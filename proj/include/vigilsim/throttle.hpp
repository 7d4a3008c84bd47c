#pragma once

#include <functional>
#include <vector>

namespace vigilsim::throttle {

// Motor-side throttle plant with an opposing return-spring pair that acts as
// a discontinuous spring about the limp-home angle (theta = 0):
//   J * domega/dt = u - b * omega - k_s * theta - T_pre * sgn(theta)
struct PlantParams {
    double inertia = 0.01;          // J, kg m^2 reflected to the motor axis
    double damping = 0.05;          // b, N m s / rad
    double spring_stiffness = 0.5;  // k_s, N m / rad
    double spring_preload = 0.1;    // T_pre, N m
    double theta_min = -0.3;        // rad
    double theta_max = 1.5;         // rad
    double torque_limit = 3.0;      // u_max, N m
};

struct ThrottleState {
    double theta = 0.0;  // motor angle, rad
    double omega = 0.0;  // rad/s
};

struct SmcParams {
    double lambda = 20.0;        // sliding-surface slope, 1/s
    double gain = 1.0;           // switching gain K, N m
    double boundary_layer = 0.2; // phi, in surface units
};

struct Reference {
    double theta = 0.0;
    double rate = 0.0;
    double accel = 0.0;
};

// k_s * theta + T_pre * sgn(theta), with sgn(0) = 0.
double spring_torque(double theta, const PlantParams& p);

// One RK4 step of the plant under constant torque u (clamped to the torque
// limit); the angle is clamped to its travel limits with omega zeroed at a
// stop. Throws std::invalid_argument for dt <= 0.
ThrottleState plant_step(const ThrottleState& s, double u, const PlantParams& p, double dt);

// s = (omega - ref.rate) + lambda * (theta - ref.theta)
double sliding_surface(const ThrottleState& s, const Reference& ref, const SmcParams& c);

// Equivalent control from the model plus a boundary-layer switching term:
//   u = clamp(J*(accel_r - lambda*edot) + b*omega + spring(theta)
//             - K * sat(s / phi), +-u_max)
double smc_control(const ThrottleState& s, const Reference& ref, const SmcParams& c,
                   const PlantParams& model);

struct TrackPoint {
    double t = 0.0;
    double theta = 0.0;
    double theta_ref = 0.0;
    double s = 0.0;
    double u = 0.0;
};

// Closed-loop fixed-step servo run. The controller works from `model`; the
// integration uses `plant`, so the two may differ for robustness runs.
std::vector<TrackPoint> track(const PlantParams& plant, const PlantParams& model,
                              const SmcParams& c,
                              const std::function<Reference(double)>& reference, double dt,
                              double duration);

}  // namespace vigilsim::throttle
