#pragma once

#include <array>
#include <memory>
#include <string>
#include <vector>

#include "evnav/bc.hpp"
#include "evnav/follow_env.hpp"
#include "evnav/mlp.hpp"
#include "evnav/pd_controller.hpp"

namespace evnav {

// A navigation controller emits velocity increments once per control tick,
// reading the environment's raw state and detection flag.
class Controller {
 public:
  virtual ~Controller() = default;
  virtual void reset() = 0;
  virtual std::array<double, 2> act(const FollowEnv& env) = 0;
};

// The PD expert. Emits the increment that moves the actual command toward the
// PD output; the environment's increment clamp stays authoritative.
class PdExpertController : public Controller {
 public:
  PdExpertController(PdGains gains, double x_target, double d_target, double dt,
                     ActionLimits limits = {});
  void reset() override;
  std::array<double, 2> act(const FollowEnv& env) override;

 private:
  PdController pd_;
  double dt_;
};

// Wraps a trained actor network (BC or DDPG product).
class ActorController : public Controller {
 public:
  explicit ActorController(Mlp actor);
  void reset() override {}
  std::array<double, 2> act(const FollowEnv& env) override;
  const Mlp& actor() const { return actor_; }

 private:
  Mlp actor_;
};

// Replays a fixed increment every tick; test scaffolding.
class ConstantController : public Controller {
 public:
  ConstantController(double dv, double domega) : action_{dv, domega} {}
  void reset() override {}
  std::array<double, 2> act(const FollowEnv&) override { return action_; }

 private:
  std::array<double, 2> action_;
};

struct EpisodeLog {
  int index{0};
  std::vector<LogRow> rows;
  TerminationStatus final_status{TerminationStatus::Running};
};

// Reset with the given seed, then run until termination (or max_steps), logging
// one row per control tick.
EpisodeLog run_episode(FollowEnv& env, Controller& controller, std::uint64_t seed,
                       int max_steps = 100000);

void write_episode_csv(const EpisodeLog& log, const std::string& path);
EpisodeLog read_episode_csv(const std::string& path);

struct CollectResult {
  BcDataset dataset;
  int episodes_total{0};
  int episodes_kept{0};  // GoalReached only
};

// PD expert rollouts -> (normalized state, applied increment) pairs; only
// episodes that end in GoalReached contribute.
CollectResult collect_expert(FollowEnv& env, PdExpertController& expert, int episodes,
                             std::uint64_t master_seed);

}  // namespace evnav
