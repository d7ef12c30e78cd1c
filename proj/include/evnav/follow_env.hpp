#pragma once

#include <functional>
#include <optional>

#include "evnav/camera.hpp"
#include "evnav/ddpg.hpp"
#include "evnav/event_synth.hpp"
#include "evnav/events.hpp"
#include "evnav/perception.hpp"
#include "evnav/reward.hpp"
#include "evnav/world.hpp"

namespace evnav {

struct SensingConfig {
  CameraModel camera{};
  Homography event_to_depth{};  // identity: co-located simulated cameras
  double ped_width{0.5};
  double ped_height{1.7};
  double event_noise_rate{0.1};  // background events / pixel / s
  double depth_sigma{0.02};      // [m]
  int sae_threshold{50};
  int min_area{15};
  std::int64_t window_us{10'000};
  std::int64_t retention_us{50'000};
  bool use_oracle_detector{false};
};

struct FollowEnvConfig {
  Scenario scenario{default_scenario()};
  SensingConfig sensing{};
  RewardParams reward{};
  LidarConfig lidar{};
  ActionLimits limits{};
  double control_dt{0.1};    // [s]
  double substep_dt{0.001};  // [s], physics + event synthesis step
  double feature_lost_timeout{4.0};
  double spawn_jitter_xy{0.0};
  double spawn_jitter_theta{0.0};
  bool normalize_state{true};
};

// One logged control tick; matches the trajectory CSV schema.
struct LogRow {
  double t{0.0};
  double x_r{0.0};
  double y_r{0.0};
  double theta{0.0};
  double v_r{0.0};
  double omega_r{0.0};
  double x_box{0.0};
  double d_ped{0.0};
  double d_obs{0.0};
  double theta_obs{0.0};
  double reward{0.0};
  TerminationStatus status{TerminationStatus::Running};
};

// The complete simulated pipeline: 1 ms world/event substeps, a 10 ms SAE
// window feeding detection at every 0.1 s control tick, lidar at control rate,
// and the shaped reward + termination logic. All randomness (spawn jitter,
// event timestamps, background noise, depth noise) flows from the reset seed.
class FollowEnv : public Environment {
 public:
  explicit FollowEnv(FollowEnvConfig cfg);

  int state_size() const override { return 6; }
  int action_size() const override { return 2; }
  std::vector<double> action_bounds() const override;
  std::vector<double> reset(std::uint64_t seed) override;
  StepOutcome step(std::span<const double> action) override;

  const FollowEnvConfig& config() const { return cfg_; }
  TerminationStatus status() const { return status_; }
  double time() const { return static_cast<double>(t_us_) * 1e-6; }
  RobotPose robot_pose() const { return pose_; }
  Vec2 pedestrian_position() const { return ped_; }
  VelocityCommand command() const { return cmd_; }
  StateVector last_state_raw() const { return raw_state_; }
  bool last_detected() const { return detected_; }
  const LogRow& last_row() const { return row_; }
  const SaeFrame& last_sae() const { return sae_; }

  // Called with every synthesized event batch (debug event-stream dumps).
  void set_event_sink(std::function<void(std::span<const Event>)> sink) {
    sink_ = std::move(sink);
  }

 private:
  void sense();
  Vec2 camera_world_position() const;
  std::vector<double> state_out() const;

  FollowEnvConfig cfg_;
  Rng rng_;
  std::int64_t t_us_{0};
  RobotPose pose_;
  Vec2 ped_;
  VelocityCommand cmd_;
  OccupancyImage occupancy_;
  EventStream stream_;
  SaeFrame sae_;
  VisibilityTracker tracker_;
  LidarScan scan_;
  double x_box_{173.0};
  double d_ped_{2.0};
  bool detected_{false};
  TerminationStatus status_{TerminationStatus::Running};
  StateVector raw_state_;
  LogRow row_;
  std::function<void(std::span<const Event>)> sink_;
};

}  // namespace evnav
