#pragma once

#include "evnav/geometry.hpp"

namespace evnav {

// Robot configuration q = (x, y, theta), theta wrapped to (-pi, pi].
struct RobotPose {
  double x{0.0};
  double y{0.0};
  double theta{0.0};
};

// Body-frame velocity command (v in m/s, omega in rad/s).
struct VelocityCommand {
  double v{0.0};
  double omega{0.0};
};

// Four-wheel skid platform, no-slip pairing omega1==omega2 and omega3==omega4.
// wheel_diameter is the wheel diameter L [m], track is the wheel separation B [m].
struct WheelRates {
  double omega1{0.0};
  double omega2{0.0};
  double omega3{0.0};
  double omega4{0.0};
  double wheel_diameter{0.2};
  double track{0.4};
};

// Absolute command ranges and per-step increment limits (0.1 s control period).
struct ActionLimits {
  double dv_max{0.2};     // |dv| per step [m/s]
  double domega_max{0.5};  // |domega| per step [rad/s]
  double v_min{0.0};
  double v_max{1.0};
  double omega_max{0.5};
};

// Body velocities from wheel rates:
//   v = (L/4)(omega1 + omega3),  omega = (L/2B)(omega3 - omega1).
// Throws std::invalid_argument when L or B is not positive.
VelocityCommand wheel_to_body(const WheelRates& w);

// Inverse of wheel_to_body under the no-slip pairing.
WheelRates body_to_wheel(const VelocityCommand& cmd, double wheel_diameter, double track);

// Integrate xdot = v cos(theta), ydot = v sin(theta), thetadot = omega over dt
// with the exact constant-twist solution (arc when |omega| > eps, straight line
// otherwise). Resulting heading is re-wrapped to (-pi, pi].
RobotPose step_kinematics(const RobotPose& pose, const VelocityCommand& cmd, double dt);

// Apply a velocity increment (dv, domega): the increment is clamped first, then
// the summed command is clamped to the absolute ranges.
VelocityCommand clamp_increments(const VelocityCommand& prev, double dv, double domega,
                                 const ActionLimits& limits = {});

}  // namespace evnav
