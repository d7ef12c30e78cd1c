#include "evnav/kinematics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace evnav {

namespace {
// Straight-line vs arc branch threshold for the twist integrator.
constexpr double kTwistEps = 1e-8;
}  // namespace

VelocityCommand wheel_to_body(const WheelRates& w) {
  if (w.wheel_diameter <= 0.0 || w.track <= 0.0) {
    throw std::invalid_argument("wheel_to_body: wheel diameter and track must be positive");
  }
  const double L = w.wheel_diameter;
  const double B = w.track;
  return {L / 4.0 * (w.omega1 + w.omega3), L / (2.0 * B) * (w.omega3 - w.omega1)};
}

WheelRates body_to_wheel(const VelocityCommand& cmd, double wheel_diameter, double track) {
  if (wheel_diameter <= 0.0 || track <= 0.0) {
    throw std::invalid_argument("body_to_wheel: wheel diameter and track must be positive");
  }
  WheelRates w;
  w.wheel_diameter = wheel_diameter;
  w.track = track;
  w.omega1 = (2.0 * cmd.v - track * cmd.omega) / wheel_diameter;
  w.omega3 = (2.0 * cmd.v + track * cmd.omega) / wheel_diameter;
  w.omega2 = w.omega1;
  w.omega4 = w.omega3;
  return w;
}

RobotPose step_kinematics(const RobotPose& pose, const VelocityCommand& cmd, double dt) {
  RobotPose next = pose;
  if (std::abs(cmd.omega) > kTwistEps) {
    const double r = cmd.v / cmd.omega;
    const double theta1 = pose.theta + cmd.omega * dt;
    next.x = pose.x + r * (std::sin(theta1) - std::sin(pose.theta));
    next.y = pose.y - r * (std::cos(theta1) - std::cos(pose.theta));
    next.theta = wrap_angle(theta1);
  } else {
    next.x = pose.x + cmd.v * std::cos(pose.theta) * dt;
    next.y = pose.y + cmd.v * std::sin(pose.theta) * dt;
    next.theta = wrap_angle(pose.theta + cmd.omega * dt);
  }
  return next;
}

VelocityCommand clamp_increments(const VelocityCommand& prev, double dv, double domega,
                                 const ActionLimits& limits) {
  const double dvc = std::clamp(dv, -limits.dv_max, limits.dv_max);
  const double dwc = std::clamp(domega, -limits.domega_max, limits.domega_max);
  VelocityCommand out;
  out.v = std::clamp(prev.v + dvc, limits.v_min, limits.v_max);
  out.omega = std::clamp(prev.omega + dwc, -limits.omega_max, limits.omega_max);
  return out;
}

}  // namespace evnav
