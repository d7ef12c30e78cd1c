#pragma once

#include <cstdint>
#include <string>

#include "evnav/bc.hpp"
#include "evnav/ddpg.hpp"
#include "evnav/follow_env.hpp"
#include "evnav/ou_noise.hpp"
#include "evnav/pd_controller.hpp"
#include "evnav/reward.hpp"

namespace evnav {

// Raised for malformed or out-of-range configuration; the CLI maps it to
// exit code 1.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct DdpgSettings {
  double gamma{0.99};
  double tau{0.001};
  double actor_lr{1e-4};
  double critic_lr{1e-4};
  int batch_size{64};
  std::size_t buffer_capacity{1'000'000};
  std::size_t warmup{1000};
  int episodes{3000};
  OuParams ou_dv{0.0, 0.0, 0.2};
  OuParams ou_dw{0.0, 0.2, 0.3};
  double spawn_jitter_xy{0.25};
  double spawn_jitter_theta{0.1};
  int goal_streak_stop{50};
};

struct SensingSettings {
  std::string detector{"sae"};  // "sae" | "oracle"
  int threshold{50};
  int min_area{15};
  std::int64_t window_us{10'000};
  double focal_px{140.0};
};

// Parsed experiment configuration. Unknown JSON keys are rejected with a
// message listing them; range violations name the field and bound.
struct RunConfig {
  std::uint64_t seed{1};
  std::string scenario;         // scenario file path (required)
  std::string controller{"pd"}; // "pd" or a path to actor weights
  int episodes{5};
  double event_noise_rate{0.1};
  double depth_sigma{0.02};
  SensingSettings sensing{};
  RewardParams reward{};
  PdGains pd{};
  DdpgSettings ddpg{};
  BcConfig bc{};
};

RunConfig parse_config_text(const std::string& text);
RunConfig load_config(const std::string& path);

// Full effective configuration (defaults filled in), echoed to run dirs.
std::string effective_config_json(const RunConfig& cfg);

// Assemble the environment configuration for one run. `training` enables the
// spawn randomization used by Algorithm-2-style episodes.
FollowEnvConfig make_env_config(const RunConfig& cfg, Scenario scenario, bool training);
DdpgConfig make_ddpg_config(const RunConfig& cfg);

}  // namespace evnav
