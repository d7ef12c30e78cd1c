#include "evnav/harness.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include "evnav/svg_plot.hpp"

namespace evnav {

namespace fs = std::filesystem;

int log_level() {
  const char* v = std::getenv("EVNAV_LOG");
  if (!v) return 1;
  return std::atoi(v);
}

std::unique_ptr<Controller> make_controller(const RunConfig& cfg) {
  if (cfg.controller == "pd") {
    return std::make_unique<PdExpertController>(cfg.pd, cfg.reward.x_target,
                                                cfg.reward.d_target, 0.1);
  }
  return std::make_unique<ActorController>(load_weights(cfg.controller));
}

namespace {

void echo_config(const RunConfig& cfg, const std::string& out_dir) {
  fs::create_directories(out_dir);
  std::ofstream f(fs::path(out_dir) / "config.echo.json");
  f << effective_config_json(cfg);
}

}  // namespace

EvalResult run_eval(const RunConfig& cfg, const std::string& out_dir, bool plots) {
  const Scenario scenario = Scenario::load(cfg.scenario);
  FollowEnv env(make_env_config(cfg, scenario, /*training=*/false));
  const auto controller = make_controller(cfg);

  EvalResult out;
  for (int ep = 0; ep < cfg.episodes; ++ep) {
    EpisodeLog log =
        run_episode(env, *controller, derive_seed(cfg.seed, seed_stream::kEval, ep));
    log.index = ep;
    if (log_level() >= 1) {
      std::cerr << "[eval] episode " << ep << ": " << log.rows.size() << " steps, "
                << to_string(log.final_status) << "\n";
    }
    out.logs.push_back(std::move(log));
  }
  out.metrics = compute_metrics(out.logs);
  if (!out_dir.empty()) {
    echo_config(cfg, out_dir);
    if (plots) {
      render_outputs(out.logs, scenario, out_dir);
    } else {
      fs::create_directories(fs::path(out_dir) / "episodes");
      char name[64];
      for (std::size_t i = 0; i < out.logs.size(); ++i) {
        std::snprintf(name, sizeof(name), "ep%03zu.csv", i);
        write_episode_csv(out.logs[i], (fs::path(out_dir) / "episodes" / name).string());
      }
      std::ofstream mf(fs::path(out_dir) / "metrics.json");
      mf << metrics_to_json(out.metrics);
    }
  }
  return out;
}

CollectArtifacts run_collect_expert(const RunConfig& cfg, const std::string& out_dir) {
  const Scenario scenario = Scenario::load(cfg.scenario);
  FollowEnv env(make_env_config(cfg, scenario, /*training=*/false));
  PdExpertController expert(cfg.pd, cfg.reward.x_target, cfg.reward.d_target, 0.1);

  CollectArtifacts out;
  out.result = collect_expert(env, expert, cfg.episodes, cfg.seed);
  echo_config(cfg, out_dir);
  out.dataset_path = (fs::path(out_dir) / "expert.csv").string();
  write_bc_dataset_csv(out.result.dataset, out.dataset_path);
  if (log_level() >= 1) {
    std::cerr << "[collect] kept " << out.result.episodes_kept << "/"
              << out.result.episodes_total << " episodes, " << out.result.dataset.size()
              << " pairs\n";
  }
  return out;
}

BcArtifacts run_train_bc(const RunConfig& cfg, const std::string& dataset_path,
                         const std::string& out_dir) {
  const BcDataset data = read_bc_dataset_csv(dataset_path);
  Mlp actor = make_actor();
  Rng rng(derive_seed(cfg.seed, seed_stream::kActorInit));
  actor.init_uniform(rng, 0.1);

  BcArtifacts out;
  out.result = bc_train(data, std::move(actor), cfg.bc);
  echo_config(cfg, out_dir);
  out.weights_path = (fs::path(out_dir) / "bc_actor.wts").string();
  save_weights(out.result.actor, out.weights_path);
  write_bc_log_csv(out.result, (fs::path(out_dir) / "bc_log.csv").string());
  if (log_level() >= 1) {
    std::cerr << "[bc] initial mse " << out.result.initial_mse << " -> final "
              << out.result.final_train_mse << " (best val " << out.result.best_val_mse
              << ")\n";
  }
  return out;
}

DdpgArtifacts run_train_ddpg(const RunConfig& cfg, const std::string& init_actor_path,
                             const std::string& out_dir, bool verbose) {
  const Scenario scenario = Scenario::load(cfg.scenario);
  FollowEnv env(make_env_config(cfg, scenario, /*training=*/true));
  DdpgConfig dcfg = make_ddpg_config(cfg);
  dcfg.checkpoint_dir = fs::path(out_dir) / "checkpoints";
  if (verbose || log_level() >= 1) {
    dcfg.on_episode = [](int ep, int steps, double ret, TerminationStatus status) {
      if (ep % 10 == 0 || status == TerminationStatus::GoalReached) {
        std::cerr << "[ddpg] ep " << ep << ": steps " << steps << ", return " << ret << ", "
                  << to_string(status) << "\n";
      }
    };
  }

  std::optional<Mlp> init;
  if (!init_actor_path.empty()) init = load_weights(init_actor_path);

  DdpgArtifacts out;
  echo_config(cfg, out_dir);
  out.result = ddpg_train(env, dcfg, init ? &*init : nullptr);
  out.actor_path = (fs::path(out_dir) / "actor.wts").string();
  out.best_actor_path = (fs::path(out_dir) / "best_actor.wts").string();
  out.log_path = (fs::path(out_dir) / "train_log.csv").string();
  save_weights(out.result.actor, out.actor_path);
  save_weights(out.result.best_actor, out.best_actor_path);
  save_weights(out.result.critic, (fs::path(out_dir) / "critic.wts").string());
  save_weights(out.result.actor_target, (fs::path(out_dir) / "actor_target.wts").string());
  save_weights(out.result.critic_target, (fs::path(out_dir) / "critic_target.wts").string());
  write_training_log_csv(out.result.log, out.log_path);
  return out;
}

}  // namespace evnav
