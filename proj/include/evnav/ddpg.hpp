#pragma once

#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "evnav/mlp.hpp"
#include "evnav/ou_noise.hpp"
#include "evnav/replay_buffer.hpp"
#include "evnav/rng.hpp"
#include "evnav/world.hpp"

namespace evnav {

struct StepOutcome {
  std::vector<double> state;
  double reward{0.0};
  bool terminal{false};
  TerminationStatus status{TerminationStatus::Running};
};

// Episodic environment with a continuous, per-channel-bounded action space.
class Environment {
 public:
  virtual ~Environment() = default;
  virtual int state_size() const = 0;
  virtual int action_size() const = 0;
  virtual std::vector<double> action_bounds() const = 0;  // |a_i| <= bounds[i]
  virtual std::vector<double> reset(std::uint64_t seed) = 0;
  virtual StepOutcome step(std::span<const double> action) = 0;
};

// theta' <- tau theta + (1 - tau) theta', elementwise over all parameters.
void soft_update(Mlp& target, const Mlp& source, double tau);

struct CriticUpdateResult {
  double loss{0.0};    // TD loss before the step
  double mean_q{0.0};  // mean online Q over the batch
};

// One Adam step on the mean squared TD error with targets
//   y = r + gamma Q'(s', mu'(s'))   (bootstrap dropped on terminal samples).
CriticUpdateResult critic_update(const std::vector<TransitionView>& batch, Mlp& critic,
                                 AdamState& opt_state, const AdamConfig& opt,
                                 const Mlp& actor_target, const Mlp& critic_target, double gamma);

// One Adam ascent step on E[Q(s, mu(s))] through the critic's action input;
// the critic itself is left untouched. Returns the pre-step objective.
double actor_update(const std::vector<TransitionView>& batch, Mlp& actor, AdamState& opt_state,
                    const AdamConfig& opt, const Mlp& critic);

struct DdpgConfig {
  int episodes{3000};
  int max_steps_per_episode{100000};
  double gamma{0.99};
  double tau{0.001};
  AdamConfig actor_opt{1e-4, 0.9, 0.999, 1e-8};
  AdamConfig critic_opt{1e-4, 0.9, 0.999, 1e-8};
  int batch_size{64};
  std::size_t buffer_capacity{1'000'000};
  std::size_t warmup{1000};
  std::vector<OuParams> noise;  // one per action channel; defaulted when empty
  int hidden1{30};
  int hidden2{30};
  double actor_init_scale{0.1};
  std::uint64_t seed{1};
  int goal_streak_stop{50};  // early stop after this many consecutive GoalReached
  std::filesystem::path checkpoint_dir{};  // when set: periodic + best checkpoints
  std::function<void(int /*episode*/, int /*steps*/, double /*return*/, TerminationStatus)>
      on_episode{};
};

struct EpisodeStats {
  int episode{0};
  int steps{0};
  double ret{0.0};
  TerminationStatus status{TerminationStatus::Running};
  double mean_q{0.0};
  double actor_loss{0.0};
  double critic_loss{0.0};
};

struct DdpgResult {
  Mlp actor;
  Mlp critic;
  Mlp actor_target;
  Mlp critic_target;
  Mlp best_actor;
  double best_return{0.0};
  int best_episode{-1};
  std::vector<EpisodeStats> log;
};

// Full training loop: act with OU exploration, store, and after warmup run one
// critic update, one actor update and one soft target update per environment
// step. A non-finite training fault aborts after persisting the last
// checkpoint (when checkpoint_dir is set). init_actor, when given, seeds the
// policy with pre-trained weights.
DdpgResult ddpg_train(Environment& env, const DdpgConfig& cfg, const Mlp* init_actor = nullptr);

void write_training_log_csv(const std::vector<EpisodeStats>& log, const std::string& path);

}  // namespace evnav
