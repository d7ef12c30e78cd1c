#pragma once

#include <optional>

#include "evnav/kinematics.hpp"

namespace evnav {

struct PdGains {
  double kp_x{0.005};  // pixels -> rad/s
  double kd_x{0.001};
  double kp_d{1.0};  // meters -> m/s
  double kd_d{0.1};
};

// Expert controller on bounding-box centering and pedestrian distance:
//   omega = kp_x e_x + kd_x de_x/dt,  e_x = x_target - x_box
//   v     = kp_d e_d + kd_d de_d/dt,  e_d = d_ped - d_target
// Output is clamped to the command ranges. When the detection is missing the
// previous command is held and the visibility timer keeps running elsewhere.
class PdController {
 public:
  PdController(PdGains gains = {}, double x_target = 173.0, double d_target = 2.0,
               ActionLimits limits = {});

  VelocityCommand update(std::optional<double> x_box, std::optional<double> d_ped, double dt);
  void reset();
  VelocityCommand command() const { return cmd_; }

 private:
  PdGains gains_;
  double x_target_;
  double d_target_;
  ActionLimits limits_;
  VelocityCommand cmd_{};
  double prev_ex_{0.0};
  double prev_ed_{0.0};
  bool has_prev_{false};
};

}  // namespace evnav
