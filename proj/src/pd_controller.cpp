#include "evnav/pd_controller.hpp"

#include <algorithm>
#include <stdexcept>

namespace evnav {

PdController::PdController(PdGains gains, double x_target, double d_target, ActionLimits limits)
    : gains_(gains), x_target_(x_target), d_target_(d_target), limits_(limits) {}

VelocityCommand PdController::update(std::optional<double> x_box, std::optional<double> d_ped,
                                     double dt) {
  if (dt <= 0.0) throw std::invalid_argument("PdController: dt must be positive");
  if (!x_box.has_value() || !d_ped.has_value()) {
    return cmd_;  // hold
  }
  const double e_x = x_target_ - *x_box;
  const double e_d = *d_ped - d_target_;
  const double dex = has_prev_ ? (e_x - prev_ex_) / dt : 0.0;
  const double ded = has_prev_ ? (e_d - prev_ed_) / dt : 0.0;
  prev_ex_ = e_x;
  prev_ed_ = e_d;
  has_prev_ = true;

  VelocityCommand out;
  out.omega = std::clamp(gains_.kp_x * e_x + gains_.kd_x * dex, -limits_.omega_max,
                         limits_.omega_max);
  out.v = std::clamp(gains_.kp_d * e_d + gains_.kd_d * ded, limits_.v_min, limits_.v_max);
  cmd_ = out;
  return out;
}

void PdController::reset() {
  cmd_ = {};
  prev_ex_ = 0.0;
  prev_ed_ = 0.0;
  has_prev_ = false;
}

}  // namespace evnav
