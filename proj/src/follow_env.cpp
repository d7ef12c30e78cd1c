#include "evnav/follow_env.hpp"

#include <cmath>
#include <stdexcept>

namespace evnav {

FollowEnv::FollowEnv(FollowEnvConfig cfg) : cfg_(std::move(cfg)), rng_(1) {
  if (cfg_.control_dt <= 0.0 || cfg_.substep_dt <= 0.0) {
    throw std::invalid_argument("FollowEnv: control_dt and substep_dt must be positive");
  }
  const double ratio = cfg_.control_dt / cfg_.substep_dt;
  if (std::abs(ratio - std::round(ratio)) > 1e-9) {
    throw std::invalid_argument("FollowEnv: control_dt must be a multiple of substep_dt");
  }
  reset(1);
}

std::vector<double> FollowEnv::action_bounds() const {
  return {cfg_.limits.dv_max, cfg_.limits.domega_max};
}

Vec2 FollowEnv::camera_world_position() const {
  const double c = std::cos(pose_.theta);
  const double s = std::sin(pose_.theta);
  const Vec2 off = cfg_.sensing.camera.body_offset;
  return {pose_.x + c * off.x - s * off.y, pose_.y + s * off.x + c * off.y};
}

std::vector<double> FollowEnv::reset(std::uint64_t seed) {
  rng_.seed(seed);
  t_us_ = 0;
  status_ = TerminationStatus::Running;
  cmd_ = {};
  tracker_ = {};
  stream_ = {};

  pose_ = cfg_.scenario.robot_spawn;
  if (cfg_.spawn_jitter_xy > 0.0 || cfg_.spawn_jitter_theta > 0.0) {
    std::uniform_real_distribution<double> jxy(-cfg_.spawn_jitter_xy, cfg_.spawn_jitter_xy);
    std::uniform_real_distribution<double> jth(-cfg_.spawn_jitter_theta, cfg_.spawn_jitter_theta);
    for (int attempt = 0; attempt < 16; ++attempt) {
      RobotPose candidate{cfg_.scenario.robot_spawn.x + jxy(rng_),
                          cfg_.scenario.robot_spawn.y + jxy(rng_),
                          wrap_angle(cfg_.scenario.robot_spawn.theta + jth(rng_))};
      if (cfg_.scenario.map.in_free_space({candidate.x, candidate.y})) {
        pose_ = candidate;
        break;
      }
    }
  }

  ped_ = cfg_.scenario.path.position_clamped(0.0).position;
  x_box_ = cfg_.reward.x_target;
  d_ped_ = cfg_.reward.d_target;
  occupancy_ = render_silhouette(cfg_.sensing.camera, pose_, ped_, cfg_.sensing.ped_width,
                                 cfg_.sensing.ped_height);
  sense();

  scan_ = lidar_scan(cfg_.scenario.map, pose_, cfg_.lidar);
  raw_state_ = build_state(cmd_, x_box_, d_ped_, scan_, false);
  row_ = {};
  row_.x_r = pose_.x;
  row_.y_r = pose_.y;
  row_.theta = pose_.theta;
  row_.x_box = x_box_;
  row_.d_ped = d_ped_;
  row_.d_obs = scan_.d_obs();
  row_.theta_obs = scan_.theta_obs();
  return state_out();
}

// Detector pass over the SAE window ending at the current tick. A keyframe
// refresh of the current silhouette is injected first so a well-tracked
// (pixel-static) pedestrian still produces a detectable surface.
void FollowEnv::sense() {
  const auto kf = keyframe_events(occupancy_, t_us_);
  stream_.append(kf);
  if (sink_) sink_(kf);

  const auto window = stream_.window_by_time(t_us_, cfg_.sensing.window_us);
  sae_ = build_sae(window, t_us_ - cfg_.sensing.window_us, cfg_.sensing.window_us,
                   cfg_.sensing.camera.width, cfg_.sensing.camera.height);
  std::optional<BoundingBox> box;
  if (cfg_.sensing.use_oracle_detector) {
    box = oracle_detect(cfg_.sensing.camera, pose_, ped_, cfg_.sensing.ped_width,
                        cfg_.sensing.ped_height);
  } else {
    box = detect_pedestrian_sae(sae_, cfg_.sensing.sae_threshold, cfg_.sensing.min_area);
  }

  detected_ = false;
  if (box.has_value()) {
    const double true_range = (ped_ - camera_world_position()).norm();
    const auto depth =
        estimate_depth(cfg_.sensing.event_to_depth, {box->cx, box->cy}, true_range,
                       cfg_.sensing.depth_sigma, rng_, cfg_.sensing.camera.width,
                       cfg_.sensing.camera.height);
    x_box_ = box->cx;
    if (depth.has_value()) {
      d_ped_ = *depth;
      detected_ = true;
    }
  }
  tracker_.update(detected_, time());
  stream_.drop_before(t_us_ - cfg_.sensing.retention_us);
}

std::vector<double> FollowEnv::state_out() const {
  const StateVector s = cfg_.normalize_state ? normalize_state(raw_state_) : raw_state_;
  const auto a = s.to_array();
  return {a.begin(), a.end()};
}

StepOutcome FollowEnv::step(std::span<const double> action) {
  if (status_ != TerminationStatus::Running) {
    throw std::logic_error("FollowEnv: step() called on a terminated episode");
  }
  if (action.size() != 2) throw std::invalid_argument("FollowEnv: action must be 2-D");

  cmd_ = clamp_increments(cmd_, action[0], action[1], cfg_.limits);

  const int substeps = static_cast<int>(std::round(cfg_.control_dt / cfg_.substep_dt));
  const auto substep_us = static_cast<std::int64_t>(std::round(cfg_.substep_dt * 1e6));
  for (int k = 0; k < substeps; ++k) {
    const std::int64_t t0 = t_us_;
    t_us_ += substep_us;
    pose_ = step_kinematics(pose_, cmd_, cfg_.substep_dt);
    ped_ = cfg_.scenario.path.position_clamped(time()).position;
    OccupancyImage occ = render_silhouette(cfg_.sensing.camera, pose_, ped_,
                                           cfg_.sensing.ped_width, cfg_.sensing.ped_height);
    const auto batch =
        synthesize_events(occupancy_, occ, t0, t_us_, cfg_.sensing.event_noise_rate, rng_);
    stream_.append(batch);
    if (sink_) sink_(batch);
    occupancy_ = std::move(occ);
  }

  sense();
  scan_ = lidar_scan(cfg_.scenario.map, pose_, cfg_.lidar);

  const double e_x = cfg_.reward.x_target - x_box_;
  const double e_d = d_ped_ - cfg_.reward.d_target;
  const RewardResult rr = compute_reward(e_x, e_d, scan_.d_obs(), d_ped_, cfg_.reward);

  TerminationInputs ti;
  ti.ped_elapsed = time();
  ti.ped_duration = cfg_.scenario.path.duration();
  ti.lost_duration = tracker_.lost_duration();
  ti.d_ped = d_ped_;
  ti.d_obs = scan_.d_obs();
  ti.feature_lost_timeout = cfg_.feature_lost_timeout;
  ti.d_ped_max = cfg_.reward.d_ped_max;
  ti.d_ped_min = cfg_.reward.d_ped_min;
  ti.d_obs_min = cfg_.reward.d_col_min;
  status_ = check_termination(ti);

  raw_state_ = build_state(cmd_, x_box_, d_ped_, scan_, false);
  row_ = {time(),   pose_.x,  pose_.y,        pose_.theta,        cmd_.v,   cmd_.omega,
          x_box_,   d_ped_,   scan_.d_obs(),  scan_.theta_obs(),  rr.value, status_};

  StepOutcome out;
  out.state = state_out();
  out.reward = rr.value;
  out.terminal = status_ != TerminationStatus::Running;
  out.status = status_;
  return out;
}

}  // namespace evnav
