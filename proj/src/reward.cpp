#include "evnav/reward.hpp"

#include <cmath>

namespace evnav {

RewardResult compute_reward(double e_x, double e_d, double d_obs, double d_ped,
                            const RewardParams& p) {
  if (std::abs(e_x) < p.success_ex && std::abs(e_d) < p.success_ed) {
    return {p.bonus, false, RewardBranch::Success};
  }
  if (d_obs <= p.d_col_min) {
    return {-p.bonus, true, RewardBranch::Collision};
  }
  if (d_ped > p.d_ped_max || d_ped < p.d_ped_min) {
    return {-p.bonus, true, RewardBranch::DistanceBound};
  }
  const double ed2 = e_d * e_d;
  const double value = -p.k_dist * ed2 - (p.k_x / (1.0 + p.alpha * ed2)) * e_x * e_x;
  return {value, false, RewardBranch::Shaped};
}

}  // namespace evnav
