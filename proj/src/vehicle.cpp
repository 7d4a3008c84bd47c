#include "vigilsim/vehicle.hpp"

#include <algorithm>
#include <stdexcept>

namespace vigilsim::vehicle {

double speed_target(fusion::Stage stage, double t_since_stage, const GovernorConfig& cfg,
                    double v_at_stage_entry) {
    switch (stage) {
        case fusion::Stage::Alert:
            return cfg.v_cruise;
        case fusion::Stage::Warning:
            return cfg.warning_factor * cfg.v_cruise;
        case fusion::Stage::Critical:
            return std::max(0.0, v_at_stage_entry - cfg.critical_decel * t_since_stage);
    }
    return cfg.v_cruise;
}

VehicleState longitudinal_step(const VehicleState& s, double theta, const VehicleParams& p,
                               double dt) {
    if (dt <= 0.0) throw std::invalid_argument("longitudinal_step: dt must be > 0");
    const double drive = p.max_drive_force * std::clamp(theta / p.theta_wot, 0.0, 1.0);
    const double accel =
        (drive - p.aero_coeff * s.v * s.v - p.rolling_coeff * p.mass * p.gravity) / p.mass;
    VehicleState out;
    out.x = s.x + s.v * dt;
    out.v = std::max(0.0, s.v + accel * dt);
    return out;
}

SpeedGovernor::SpeedGovernor(const GovernorConfig& cfg, double theta_wot)
    : cfg_(cfg), theta_wot_(theta_wot) {}

double SpeedGovernor::update(double v_target, double v, double dt) {
    const double e = v_target - v;
    const double raw = cfg_.kp * e + cfg_.ki * integral_;
    const bool high = raw > theta_wot_;
    const bool low = raw < 0.0;
    if (!(high && e > 0.0) && !(low && e < 0.0)) {
        integral_ = std::clamp(integral_ + e * dt, -cfg_.integral_clamp, cfg_.integral_clamp);
    }
    return std::clamp(cfg_.kp * e + cfg_.ki * integral_, 0.0, theta_wot_);
}

double SpeedGovernor::preview(double v_target, double v) const {
    return std::clamp(cfg_.kp * (v_target - v) + cfg_.ki * integral_, 0.0, theta_wot_);
}

void SpeedGovernor::reset() { integral_ = 0.0; }

}  // namespace vigilsim::vehicle
