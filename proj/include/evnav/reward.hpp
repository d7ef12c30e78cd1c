#pragma once

namespace evnav {

struct RewardParams {
  double k_dist{10.0};
  double k_x{0.01};
  double alpha{1.0};
  double d_col_min{0.5};    // [m]
  double x_target{173.0};   // [px]
  double d_target{2.0};     // [m]
  double success_ex{1.0};   // [px]
  double success_ed{0.1};   // [m]
  double bonus{500.0};
  double d_ped_max{3.0};    // [m]
  double d_ped_min{1.0};    // [m]
};

enum class RewardBranch { Success, Collision, DistanceBound, Shaped };

struct RewardResult {
  double value{0.0};
  bool terminal{false};
  RewardBranch branch{RewardBranch::Shaped};
};

// Piecewise reward, branches evaluated in this order:
//   +bonus (non-terminal)        if |e_x| < success_ex and |e_d| < success_ed
//   -bonus, terminal             if d_obs <= d_col_min
//   -bonus, terminal             if d_ped > d_ped_max or d_ped < d_ped_min
//   -k_dist e_d^2 - (k_x / (1 + alpha e_d^2)) e_x^2   otherwise
RewardResult compute_reward(double e_x, double e_d, double d_obs, double d_ped,
                            const RewardParams& params = {});

}  // namespace evnav
