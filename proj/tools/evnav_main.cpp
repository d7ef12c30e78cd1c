#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "evnav/harness.hpp"
#include "evnav/svg_plot.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitFault = 2;

evnav::RunConfig load(const std::string& config_path, std::uint64_t* seed_override,
                      int* episodes_override, std::string* controller_override) {
  evnav::RunConfig cfg = evnav::load_config(config_path);
  if (seed_override) cfg.seed = *seed_override;
  if (episodes_override) cfg.episodes = *episodes_override;
  if (controller_override) {
    cfg.controller = *controller_override;
    if (cfg.controller != "pd" && !fs::exists(cfg.controller)) {
      throw evnav::ConfigError("controller weights file does not exist: " + cfg.controller);
    }
  }
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"evnav: event-camera human-following simulation and training"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = "runs/out";
  std::optional<std::uint64_t> seed;
  std::optional<int> episodes;
  std::optional<std::string> controller;

  const auto add_common = [&](CLI::App* cmd, bool needs_out) {
    cmd->add_option("--config", config_path, "run configuration JSON")->required();
    cmd->add_option("--seed", seed, "override the config seed");
    if (needs_out) cmd->add_option("--out", out_dir, "output directory");
  };

  auto* sim = app.add_subcommand("sim", "run episodes with a chosen controller");
  add_common(sim, true);
  sim->add_option("--episodes", episodes, "episode count override");
  sim->add_option("--controller", controller, "pd | path to actor weights");
  std::string dump_events;
  sim->add_option("--dump-events", dump_events, "write the synthesized event stream CSV here");
  bool save_sae = false;
  sim->add_flag("--save-sae", save_sae, "export the final SAE composite as PGM");

  auto* collect = app.add_subcommand("collect-expert", "PD rollouts -> BC dataset");
  add_common(collect, true);
  collect->add_option("--episodes", episodes, "episode count override");

  auto* trainbc = app.add_subcommand("train-bc", "behavior cloning on an expert dataset");
  add_common(trainbc, true);
  std::string dataset = "";
  trainbc->add_option("--dataset", dataset, "expert dataset CSV")->required();

  auto* trainddpg = app.add_subcommand("train-ddpg", "DDPG training on the scenario");
  add_common(trainddpg, true);
  std::string init_actor;
  trainddpg->add_option("--init-actor", init_actor, "warm-start actor weights (e.g. BC output)");
  std::optional<int> ddpg_episodes;
  trainddpg->add_option("--episodes", ddpg_episodes, "DDPG episode count override");

  auto* eval = app.add_subcommand("eval", "multi-episode evaluation with metrics");
  add_common(eval, true);
  eval->add_option("--episodes", episodes, "episode count override");
  eval->add_option("--controller", controller, "pd | path to actor weights");

  auto* plot = app.add_subcommand("plot", "re-render plots for an existing run directory");
  std::string run_dir;
  plot->add_option("--run", run_dir, "run directory with episodes/ and config.echo.json")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (sim->parsed() || eval->parsed()) {
      const evnav::RunConfig cfg =
          load(config_path, seed ? &*seed : nullptr, episodes ? &*episodes : nullptr,
               controller ? &*controller : nullptr);
      if (sim->parsed() && (!dump_events.empty() || save_sae)) {
        // debug taps need direct env access; single-episode path
        const evnav::Scenario scenario = evnav::Scenario::load(cfg.scenario);
        evnav::FollowEnv env(evnav::make_env_config(cfg, scenario, false));
        std::ofstream events_file;
        if (!dump_events.empty()) {
          events_file.open(dump_events);
          events_file << "t_us,x,y,p\n";
          env.set_event_sink([&](std::span<const evnav::Event> batch) {
            for (const auto& e : batch) {
              events_file << e.t_us << ',' << e.x << ',' << e.y << ','
                          << static_cast<int>(e.polarity) << '\n';
            }
          });
        }
        const auto ctl = evnav::make_controller(cfg);
        std::vector<evnav::EpisodeLog> logs;
        logs.push_back(evnav::run_episode(env, *ctl,
                                          evnav::derive_seed(cfg.seed, evnav::seed_stream::kEval, 0)));
        fs::create_directories(out_dir);
        if (save_sae) {
          const auto& sae = env.last_sae();
          evnav::write_pgm(sae.composite.data(), sae.width, sae.height,
                           (fs::path(out_dir) / "last_sae.pgm").string());
        }
        evnav::render_outputs(logs, scenario, out_dir);
        std::cout << "episode: " << logs[0].rows.size() << " steps, "
                  << evnav::to_string(logs[0].final_status) << "\n";
      } else {
        const evnav::EvalResult result = evnav::run_eval(cfg, out_dir, true);
        evnav::print_metrics(std::cout, result.metrics);
        std::cout << "outputs: " << out_dir << "\n";
      }
    } else if (collect->parsed()) {
      const evnav::RunConfig cfg = load(config_path, seed ? &*seed : nullptr,
                                        episodes ? &*episodes : nullptr, nullptr);
      const auto artifacts = evnav::run_collect_expert(cfg, out_dir);
      std::cout << "kept " << artifacts.result.episodes_kept << "/"
                << artifacts.result.episodes_total << " episodes, "
                << artifacts.result.dataset.size() << " pairs -> " << artifacts.dataset_path
                << "\n";
    } else if (trainbc->parsed()) {
      const evnav::RunConfig cfg = load(config_path, seed ? &*seed : nullptr, nullptr, nullptr);
      const auto artifacts = evnav::run_train_bc(cfg, dataset, out_dir);
      std::cout << "bc: initial mse " << artifacts.result.initial_mse << " -> final "
                << artifacts.result.final_train_mse << ", weights " << artifacts.weights_path
                << "\n";
    } else if (trainddpg->parsed()) {
      evnav::RunConfig cfg = load(config_path, seed ? &*seed : nullptr, nullptr, nullptr);
      if (ddpg_episodes) cfg.ddpg.episodes = *ddpg_episodes;
      const auto artifacts = evnav::run_train_ddpg(cfg, init_actor, out_dir, true);
      std::cout << "ddpg: best return " << artifacts.result.best_return << " (episode "
                << artifacts.result.best_episode << "), actor " << artifacts.actor_path << "\n";
    } else if (plot->parsed()) {
      const fs::path dir(run_dir);
      const evnav::RunConfig cfg = evnav::load_config((dir / "config.echo.json").string());
      const evnav::Scenario scenario = evnav::Scenario::load(cfg.scenario);
      std::vector<evnav::EpisodeLog> logs;
      for (int i = 0;; ++i) {
        char name[64];
        std::snprintf(name, sizeof(name), "ep%03d.csv", i);
        const fs::path p = dir / "episodes" / name;
        if (!fs::exists(p)) break;
        logs.push_back(evnav::read_episode_csv(p.string()));
      }
      if (logs.empty()) throw evnav::ConfigError("no episodes/epNNN.csv under " + run_dir);
      evnav::render_outputs(logs, scenario, run_dir);
      std::cout << "plots refreshed under " << run_dir << "/plots\n";
    }
  } catch (const evnav::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFault;
  }
  return kExitOk;
}
