#pragma once

#include <memory>
#include <string>
#include <vector>

#include "evnav/episode.hpp"
#include "evnav/metrics.hpp"
#include "evnav/run_config.hpp"

namespace evnav {

// Controller named by the config: "pd" or a path to actor weights.
std::unique_ptr<Controller> make_controller(const RunConfig& cfg);

struct EvalResult {
  std::vector<EpisodeLog> logs;
  MetricsTable metrics;
};

// Run cfg.episodes evaluation episodes (seeds derived from cfg.seed on the
// eval stream) and, when out_dir is non-empty, write the echoed config,
// per-episode CSVs, metrics.json and plots there.
EvalResult run_eval(const RunConfig& cfg, const std::string& out_dir, bool plots = true);

struct CollectArtifacts {
  CollectResult result;
  std::string dataset_path;
};

// PD rollouts -> expert dataset CSV in out_dir.
CollectArtifacts run_collect_expert(const RunConfig& cfg, const std::string& out_dir);

struct BcArtifacts {
  BcResult result;
  std::string weights_path;
};

BcArtifacts run_train_bc(const RunConfig& cfg, const std::string& dataset_path,
                         const std::string& out_dir);

struct DdpgArtifacts {
  DdpgResult result;
  std::string actor_path;       // final online actor
  std::string best_actor_path;  // highest-return checkpoint
  std::string log_path;
};

// Full pipeline training on the scenario environment; init_actor_path may
// point at behavior-cloned weights ("" trains from scratch).
DdpgArtifacts run_train_ddpg(const RunConfig& cfg, const std::string& init_actor_path,
                             const std::string& out_dir, bool verbose = false);

// Log verbosity from EVNAV_LOG (0 = quiet, >=1 progress); default 1.
int log_level();

}  // namespace evnav
