#pragma once

#include "vigilsim/fusion.hpp"

namespace vigilsim::vehicle {

// Point-mass longitudinal model:
//   m * dv/dt = F_max * clamp(theta / theta_wot, 0, 1) - c_a * v^2 - c_r * m * g
struct VehicleParams {
    double mass = 1500.0;            // kg
    double max_drive_force = 4000.0; // N at wide-open throttle
    double aero_coeff = 0.8;         // N s^2 / m^2
    double rolling_coeff = 0.012;    // dimensionless
    double gravity = 9.81;           // m/s^2
    double theta_wot = 1.0;          // throttle angle mapped to full drive force, rad
};

struct VehicleState {
    double v = 0.0;  // m/s
    double x = 0.0;  // m
};

struct GovernorConfig {
    double v_cruise = 27.8;        // m/s
    double warning_factor = 0.7;   // target fraction of cruise while in Warning
    double critical_decel = 2.0;   // m/s^2 ramp-down rate in Critical
    double kp = 0.15;              // rad per m/s
    double ki = 0.05;              // rad per m
    double integral_clamp = 40.0;  // m/s * s
};

// Target speed for the current vigilance stage. Alert holds cruise, Warning
// holds warning_factor * cruise, Critical ramps from the entry speed to zero
// at critical_decel.
double speed_target(fusion::Stage stage, double t_since_stage, const GovernorConfig& cfg,
                    double v_at_stage_entry);

// One forward-Euler step; position integrates the pre-update speed and the
// speed never drops below zero. Throws std::invalid_argument for dt <= 0.
VehicleState longitudinal_step(const VehicleState& s, double theta, const VehicleParams& p,
                               double dt);

// PI speed controller producing a throttle-angle reference in [0, theta_wot].
// The integrator only accumulates when the output is not saturated against
// the error direction (conditional integration), and is clamped.
class SpeedGovernor {
  public:
    SpeedGovernor(const GovernorConfig& cfg, double theta_wot);

    double update(double v_target, double v, double dt);
    // Output for the current state without advancing the integrator.
    double preview(double v_target, double v) const;
    void reset();
    double integral() const { return integral_; }

  private:
    GovernorConfig cfg_;
    double theta_wot_ = 1.0;
    double integral_ = 0.0;
};

}  // namespace vigilsim::vehicle
