#include "evnav/ddpg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <stdexcept>

namespace evnav {

void soft_update(Mlp& target, const Mlp& source, double tau) {
  if (target.sizes != source.sizes || target.acts != source.acts) {
    throw std::invalid_argument("soft_update: network shapes differ");
  }
  for (int l = 0; l < target.layer_count(); ++l) {
    for (std::size_t i = 0; i < target.w[l].size(); ++i) {
      target.w[l][i] = tau * source.w[l][i] + (1.0 - tau) * target.w[l][i];
    }
    for (std::size_t i = 0; i < target.b[l].size(); ++i) {
      target.b[l][i] = tau * source.b[l][i] + (1.0 - tau) * target.b[l][i];
    }
  }
}

namespace {

std::vector<double> concat(std::span<const double> s, std::span<const double> a) {
  std::vector<double> in;
  in.reserve(s.size() + a.size());
  in.insert(in.end(), s.begin(), s.end());
  in.insert(in.end(), a.begin(), a.end());
  return in;
}

}  // namespace

CriticUpdateResult critic_update(const std::vector<TransitionView>& batch, Mlp& critic,
                                 AdamState& opt_state, const AdamConfig& opt,
                                 const Mlp& actor_target, const Mlp& critic_target,
                                 double gamma) {
  if (batch.empty()) throw std::invalid_argument("critic_update: empty batch");
  const double n = static_cast<double>(batch.size());
  MlpGrad grad = MlpGrad::zeros_like(critic);
  double loss = 0.0;
  double q_sum = 0.0;
  ForwardCache cache;
  for (const auto& t : batch) {
    double y = t.r;
    if (!t.terminal) {
      const std::vector<double> a_next = mlp_forward(actor_target, t.s_next);
      const std::vector<double> in_next = concat(t.s_next, a_next);
      y += gamma * mlp_forward(critic_target, in_next)[0];
    }
    const std::vector<double> in = concat(t.s, t.a);
    const double q = mlp_forward(critic, in, &cache)[0];
    const double err = q - y;
    loss += err * err;
    q_sum += q;
    const double out_grad[1] = {2.0 * err / n};
    mlp_backward(critic, cache, out_grad, grad);
  }
  loss /= n;
  adam_step(critic, grad, opt_state, opt);
  return {loss, q_sum / n};
}

double actor_update(const std::vector<TransitionView>& batch, Mlp& actor, AdamState& opt_state,
                    const AdamConfig& opt, const Mlp& critic) {
  if (batch.empty()) throw std::invalid_argument("actor_update: empty batch");
  const double n = static_cast<double>(batch.size());
  MlpGrad actor_grad = MlpGrad::zeros_like(actor);
  MlpGrad critic_scratch = MlpGrad::zeros_like(critic);  // discarded
  double objective = 0.0;
  ForwardCache actor_cache;
  ForwardCache critic_cache;
  const int sdim = actor.input_size();
  const int adim = actor.output_size();
  for (const auto& t : batch) {
    const std::vector<double> a = mlp_forward(actor, t.s, &actor_cache);
    const std::vector<double> in = concat(t.s, a);
    objective += mlp_forward(critic, in, &critic_cache)[0];
    // minimize -mean Q: dJ/dQ_i = -1/n, chain through the critic input
    const double out_grad[1] = {-1.0 / n};
    const std::vector<double> in_grad =
        mlp_backward(critic, critic_cache, out_grad, critic_scratch);
    mlp_backward(actor, actor_cache, std::span<const double>(in_grad).subspan(sdim, adim),
                 actor_grad);
  }
  adam_step(actor, actor_grad, opt_state, opt);
  return objective / n;
}

DdpgResult ddpg_train(Environment& env, const DdpgConfig& cfg, const Mlp* init_actor) {
  const int sdim = env.state_size();
  const int adim = env.action_size();
  const std::vector<double> bounds = env.action_bounds();
  if (static_cast<int>(bounds.size()) != adim) {
    throw std::invalid_argument("ddpg_train: action bound count mismatch");
  }

  DdpgResult out;
  if (init_actor) {
    if (init_actor->input_size() != sdim || init_actor->output_size() != adim) {
      throw std::invalid_argument("ddpg_train: init actor does not fit the environment");
    }
    out.actor = *init_actor;
  } else {
    out.actor = make_actor(sdim, cfg.hidden1, cfg.hidden2, bounds);
    Rng rng(derive_seed(cfg.seed, seed_stream::kActorInit));
    out.actor.init_uniform(rng, cfg.actor_init_scale);
  }
  out.critic = make_critic(sdim, adim, cfg.hidden1, cfg.hidden2);
  {
    Rng rng(derive_seed(cfg.seed, seed_stream::kCriticInit));
    out.critic.init_uniform(rng);
  }
  out.actor_target = out.actor;
  out.critic_target = out.critic;
  out.best_actor = out.actor;
  out.best_return = -std::numeric_limits<double>::infinity();

  std::vector<OuParams> noise = cfg.noise;
  if (noise.empty()) noise.assign(adim, OuParams{});
  if (static_cast<int>(noise.size()) != adim) {
    throw std::invalid_argument("ddpg_train: one OU channel per action dimension required");
  }
  OuNoise ou(noise, derive_seed(cfg.seed, seed_stream::kOuNoise));
  Rng replay_rng(derive_seed(cfg.seed, seed_stream::kReplay));
  ReplayBuffer buffer(cfg.buffer_capacity, sdim, adim, cfg.warmup);
  AdamState actor_opt_state = AdamState::make(out.actor);
  AdamState critic_opt_state = AdamState::make(out.critic);

  const auto checkpoint = [&](const char* tag) {
    if (cfg.checkpoint_dir.empty()) return;
    std::filesystem::create_directories(cfg.checkpoint_dir);
    save_weights(out.actor, (cfg.checkpoint_dir / (std::string(tag) + "_actor.wts")).string());
    save_weights(out.critic, (cfg.checkpoint_dir / (std::string(tag) + "_critic.wts")).string());
  };

  int goal_streak = 0;
  try {
    for (int ep = 0; ep < cfg.episodes; ++ep) {
      std::vector<double> state = env.reset(derive_seed(cfg.seed, seed_stream::kEpisode, ep));
      ou.reset();
      EpisodeStats stats;
      stats.episode = ep;
      int updates = 0;
      std::vector<double> action(adim);
      for (int step = 0; step < cfg.max_steps_per_episode; ++step) {
        const std::vector<double> policy = mlp_forward(out.actor, state);
        const std::vector<double>& n = ou.step();
        for (int i = 0; i < adim; ++i) {
          action[i] = std::clamp(policy[i] + n[i], -bounds[i], bounds[i]);
        }
        StepOutcome o = env.step(action);
        buffer.push(state, action, o.reward, o.state, o.terminal);
        stats.ret += o.reward;
        stats.steps += 1;
        state = o.state;
        stats.status = o.status;

        if (buffer.warmed_up()) {
          const auto batch = buffer.sample(cfg.batch_size, replay_rng);
          const CriticUpdateResult cu =
              critic_update(batch, out.critic, critic_opt_state, cfg.critic_opt,
                            out.actor_target, out.critic_target, cfg.gamma);
          const double j =
              actor_update(batch, out.actor, actor_opt_state, cfg.actor_opt, out.critic);
          soft_update(out.actor_target, out.actor, cfg.tau);
          soft_update(out.critic_target, out.critic, cfg.tau);
          stats.critic_loss += cu.loss;
          stats.mean_q += cu.mean_q;
          stats.actor_loss += -j;
          ++updates;
        }
        if (o.terminal) break;
      }
      if (updates > 0) {
        stats.critic_loss /= updates;
        stats.mean_q /= updates;
        stats.actor_loss /= updates;
      }
      out.log.push_back(stats);
      if (cfg.on_episode) cfg.on_episode(ep, stats.steps, stats.ret, stats.status);
      if (stats.ret > out.best_return) {
        out.best_return = stats.ret;
        out.best_episode = ep;
        out.best_actor = out.actor;
        checkpoint("best");
      }
      if ((ep + 1) % 100 == 0) checkpoint("last");
      goal_streak = stats.status == TerminationStatus::GoalReached ? goal_streak + 1 : 0;
      if (cfg.goal_streak_stop > 0 && goal_streak >= cfg.goal_streak_stop) break;
    }
  } catch (...) {
    checkpoint("last");
    throw;
  }
  checkpoint("last");
  return out;
}

void write_training_log_csv(const std::vector<EpisodeStats>& log, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("write_training_log_csv: cannot write " + path);
  f << "episode,steps,return,termination,mean_q,actor_loss,critic_loss\n";
  char line[256];
  for (const auto& s : log) {
    std::snprintf(line, sizeof(line), "%d,%d,%.6f,%s,%.6f,%.6f,%.6f\n", s.episode, s.steps, s.ret,
                  to_string(s.status), s.mean_q, s.actor_loss, s.critic_loss);
    f << line;
  }
}

}  // namespace evnav
