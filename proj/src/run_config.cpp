#include "evnav/run_config.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

#include "json.hpp"

namespace evnav {

namespace {

using nlohmann::json;

void collect_unknown_keys(const json& j, const std::vector<std::string>& known,
                          const std::string& prefix, std::vector<std::string>& unknown) {
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      unknown.push_back(prefix.empty() ? key : prefix + "." + key);
    }
  }
}

[[noreturn]] void fail_range(const std::string& field, const std::string& bound) {
  throw ConfigError(field + " must be " + bound);
}

double get_number(const json& j, const char* key, double fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_number()) throw ConfigError(std::string(key) + " must be a number");
  return j.at(key).get<double>();
}

OuParams get_ou(const json& j, const char* key, OuParams fallback, const std::string& prefix,
                std::vector<std::string>& unknown) {
  if (!j.contains(key)) return fallback;
  const json& o = j.at(key);
  collect_unknown_keys(o, {"mu", "theta", "sigma"}, prefix, unknown);
  OuParams p = fallback;
  p.mu = get_number(o, "mu", p.mu);
  p.theta = get_number(o, "theta", p.theta);
  p.sigma = get_number(o, "sigma", p.sigma);
  if (p.sigma < 0.0) fail_range(prefix + ".sigma", "non-negative");
  if (p.theta < 0.0 || p.theta > 1.0) fail_range(prefix + ".theta", "in [0,1]");
  return p;
}

}  // namespace

RunConfig parse_config_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  std::vector<std::string> unknown;
  collect_unknown_keys(j,
                       {"seed", "scenario", "controller", "episodes", "noise", "sensing",
                        "reward", "pd", "ddpg", "bc"},
                       "", unknown);

  RunConfig cfg;
  if (j.contains("seed")) {
    if (!j.at("seed").is_number_unsigned() && !j.at("seed").is_number_integer()) {
      throw ConfigError("seed must be a non-negative integer");
    }
    cfg.seed = j.at("seed").get<std::uint64_t>();
  }
  if (!j.contains("scenario") || !j.at("scenario").is_string()) {
    throw ConfigError("scenario must be a path string (required)");
  }
  cfg.scenario = j.at("scenario").get<std::string>();
  if (j.contains("controller")) {
    if (!j.at("controller").is_string()) throw ConfigError("controller must be a string");
    cfg.controller = j.at("controller").get<std::string>();
  }
  if (j.contains("episodes")) {
    cfg.episodes = j.at("episodes").get<int>();
    if (cfg.episodes < 1) fail_range("episodes", "at least 1");
  }

  if (j.contains("noise")) {
    const json& n = j.at("noise");
    collect_unknown_keys(n, {"event_rate", "depth_sigma"}, "noise", unknown);
    cfg.event_noise_rate = get_number(n, "event_rate", cfg.event_noise_rate);
    cfg.depth_sigma = get_number(n, "depth_sigma", cfg.depth_sigma);
    if (cfg.event_noise_rate < 0.0) fail_range("noise.event_rate", "non-negative");
    if (cfg.depth_sigma < 0.0) fail_range("noise.depth_sigma", "non-negative");
  }

  if (j.contains("sensing")) {
    const json& s = j.at("sensing");
    collect_unknown_keys(s, {"detector", "threshold", "min_area", "window_us", "focal_px"},
                         "sensing", unknown);
    if (s.contains("detector")) {
      cfg.sensing.detector = s.at("detector").get<std::string>();
      if (cfg.sensing.detector != "sae" && cfg.sensing.detector != "oracle") {
        fail_range("sensing.detector", "\"sae\" or \"oracle\"");
      }
    }
    cfg.sensing.threshold = static_cast<int>(get_number(s, "threshold", cfg.sensing.threshold));
    cfg.sensing.min_area = static_cast<int>(get_number(s, "min_area", cfg.sensing.min_area));
    cfg.sensing.window_us =
        static_cast<std::int64_t>(get_number(s, "window_us", static_cast<double>(cfg.sensing.window_us)));
    cfg.sensing.focal_px = get_number(s, "focal_px", cfg.sensing.focal_px);
    if (cfg.sensing.threshold < 1 || cfg.sensing.threshold > 255) {
      fail_range("sensing.threshold", "in [1,255]");
    }
    if (cfg.sensing.min_area < 1) fail_range("sensing.min_area", "at least 1");
    if (cfg.sensing.window_us <= 0) fail_range("sensing.window_us", "positive");
    if (cfg.sensing.focal_px <= 0.0) fail_range("sensing.focal_px", "positive");
  }

  if (j.contains("reward")) {
    const json& r = j.at("reward");
    collect_unknown_keys(r,
                         {"k_dist", "k_x", "alpha", "d_col_min", "x_target", "d_target",
                          "success_ex_px", "success_ed_m", "bonus", "d_ped_min", "d_ped_max"},
                         "reward", unknown);
    cfg.reward.k_dist = get_number(r, "k_dist", cfg.reward.k_dist);
    cfg.reward.k_x = get_number(r, "k_x", cfg.reward.k_x);
    cfg.reward.alpha = get_number(r, "alpha", cfg.reward.alpha);
    cfg.reward.d_col_min = get_number(r, "d_col_min", cfg.reward.d_col_min);
    cfg.reward.x_target = get_number(r, "x_target", cfg.reward.x_target);
    cfg.reward.d_target = get_number(r, "d_target", cfg.reward.d_target);
    cfg.reward.success_ex = get_number(r, "success_ex_px", cfg.reward.success_ex);
    cfg.reward.success_ed = get_number(r, "success_ed_m", cfg.reward.success_ed);
    cfg.reward.bonus = get_number(r, "bonus", cfg.reward.bonus);
    cfg.reward.d_ped_min = get_number(r, "d_ped_min", cfg.reward.d_ped_min);
    cfg.reward.d_ped_max = get_number(r, "d_ped_max", cfg.reward.d_ped_max);
    if (cfg.reward.k_dist < 0.0) fail_range("reward.k_dist", "non-negative");
    if (cfg.reward.k_x < 0.0) fail_range("reward.k_x", "non-negative");
    if (cfg.reward.alpha < 0.0) fail_range("reward.alpha", "non-negative");
    if (cfg.reward.d_col_min <= 0.0) fail_range("reward.d_col_min", "positive");
    if (cfg.reward.d_ped_min >= cfg.reward.d_ped_max) {
      fail_range("reward.d_ped_min", "less than reward.d_ped_max");
    }
  }

  if (j.contains("pd")) {
    const json& p = j.at("pd");
    collect_unknown_keys(p, {"kp_x", "kd_x", "kp_d", "kd_d"}, "pd", unknown);
    cfg.pd.kp_x = get_number(p, "kp_x", cfg.pd.kp_x);
    cfg.pd.kd_x = get_number(p, "kd_x", cfg.pd.kd_x);
    cfg.pd.kp_d = get_number(p, "kp_d", cfg.pd.kp_d);
    cfg.pd.kd_d = get_number(p, "kd_d", cfg.pd.kd_d);
    if (cfg.pd.kp_x < 0.0 || cfg.pd.kd_x < 0.0 || cfg.pd.kp_d < 0.0 || cfg.pd.kd_d < 0.0) {
      fail_range("pd gains", "non-negative");
    }
  }

  if (j.contains("ddpg")) {
    const json& d = j.at("ddpg");
    collect_unknown_keys(d,
                         {"gamma", "tau", "actor_lr", "critic_lr", "batch_size",
                          "buffer_capacity", "warmup", "episodes", "ou_dv", "ou_dw",
                          "spawn_jitter_xy", "spawn_jitter_theta", "goal_streak_stop"},
                         "ddpg", unknown);
    cfg.ddpg.gamma = get_number(d, "gamma", cfg.ddpg.gamma);
    cfg.ddpg.tau = get_number(d, "tau", cfg.ddpg.tau);
    cfg.ddpg.actor_lr = get_number(d, "actor_lr", cfg.ddpg.actor_lr);
    cfg.ddpg.critic_lr = get_number(d, "critic_lr", cfg.ddpg.critic_lr);
    cfg.ddpg.batch_size = static_cast<int>(get_number(d, "batch_size", cfg.ddpg.batch_size));
    cfg.ddpg.buffer_capacity = static_cast<std::size_t>(
        get_number(d, "buffer_capacity", static_cast<double>(cfg.ddpg.buffer_capacity)));
    cfg.ddpg.warmup =
        static_cast<std::size_t>(get_number(d, "warmup", static_cast<double>(cfg.ddpg.warmup)));
    cfg.ddpg.episodes = static_cast<int>(get_number(d, "episodes", cfg.ddpg.episodes));
    cfg.ddpg.ou_dv = get_ou(d, "ou_dv", cfg.ddpg.ou_dv, "ddpg.ou_dv", unknown);
    cfg.ddpg.ou_dw = get_ou(d, "ou_dw", cfg.ddpg.ou_dw, "ddpg.ou_dw", unknown);
    cfg.ddpg.spawn_jitter_xy = get_number(d, "spawn_jitter_xy", cfg.ddpg.spawn_jitter_xy);
    cfg.ddpg.spawn_jitter_theta =
        get_number(d, "spawn_jitter_theta", cfg.ddpg.spawn_jitter_theta);
    cfg.ddpg.goal_streak_stop =
        static_cast<int>(get_number(d, "goal_streak_stop", cfg.ddpg.goal_streak_stop));
    if (cfg.ddpg.tau <= 0.0 || cfg.ddpg.tau > 1.0) fail_range("tau", "in (0,1]");
    if (cfg.ddpg.gamma < 0.0 || cfg.ddpg.gamma >= 1.0) fail_range("gamma", "in [0,1)");
    if (cfg.ddpg.actor_lr <= 0.0) fail_range("ddpg.actor_lr", "positive");
    if (cfg.ddpg.critic_lr <= 0.0) fail_range("ddpg.critic_lr", "positive");
    if (cfg.ddpg.batch_size < 1) fail_range("ddpg.batch_size", "at least 1");
    if (cfg.ddpg.buffer_capacity < 1) fail_range("ddpg.buffer_capacity", "at least 1");
    if (cfg.ddpg.warmup < 1) fail_range("ddpg.warmup", "at least 1");
    if (cfg.ddpg.episodes < 0) fail_range("ddpg.episodes", "non-negative");
    if (cfg.ddpg.spawn_jitter_xy < 0.0) fail_range("ddpg.spawn_jitter_xy", "non-negative");
    if (cfg.ddpg.spawn_jitter_theta < 0.0) fail_range("ddpg.spawn_jitter_theta", "non-negative");
  }

  if (j.contains("bc")) {
    const json& b = j.at("bc");
    collect_unknown_keys(b, {"epochs", "batch_size", "lr", "val_split"}, "bc", unknown);
    cfg.bc.epochs = static_cast<int>(get_number(b, "epochs", cfg.bc.epochs));
    cfg.bc.batch_size = static_cast<int>(get_number(b, "batch_size", cfg.bc.batch_size));
    cfg.bc.lr = get_number(b, "lr", cfg.bc.lr);
    cfg.bc.val_split = get_number(b, "val_split", cfg.bc.val_split);
    if (cfg.bc.epochs < 1) fail_range("bc.epochs", "at least 1");
    if (cfg.bc.batch_size < 1) fail_range("bc.batch_size", "at least 1");
    if (cfg.bc.lr <= 0.0) fail_range("bc.lr", "positive");
    if (cfg.bc.val_split < 0.0 || cfg.bc.val_split >= 1.0) fail_range("bc.val_split", "in [0,1)");
  }

  if (!unknown.empty()) {
    std::string msg = "unknown config keys: ";
    for (std::size_t i = 0; i < unknown.size(); ++i) {
      msg += unknown[i];
      if (i + 1 < unknown.size()) msg += ", ";
    }
    throw ConfigError(msg);
  }
  cfg.bc.seed = cfg.seed;
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open config file: " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  RunConfig cfg = parse_config_text(ss.str());
  // resolve the scenario path relative to the config file's directory
  const std::filesystem::path base = std::filesystem::path(path).parent_path();
  const std::filesystem::path sc(cfg.scenario);
  if (sc.is_relative() && !std::filesystem::exists(sc) && std::filesystem::exists(base / sc)) {
    cfg.scenario = (base / sc).string();
  }
  if (!std::filesystem::exists(cfg.scenario)) {
    throw ConfigError("scenario file does not exist: " + cfg.scenario);
  }
  if (cfg.controller != "pd" && !std::filesystem::exists(cfg.controller)) {
    throw ConfigError("controller weights file does not exist: " + cfg.controller);
  }
  return cfg;
}

std::string effective_config_json(const RunConfig& cfg) {
  json j;
  j["seed"] = cfg.seed;
  j["scenario"] = cfg.scenario;
  j["controller"] = cfg.controller;
  j["episodes"] = cfg.episodes;
  j["noise"] = {{"event_rate", cfg.event_noise_rate}, {"depth_sigma", cfg.depth_sigma}};
  j["sensing"] = {{"detector", cfg.sensing.detector},
                  {"threshold", cfg.sensing.threshold},
                  {"min_area", cfg.sensing.min_area},
                  {"window_us", cfg.sensing.window_us},
                  {"focal_px", cfg.sensing.focal_px}};
  j["reward"] = {{"k_dist", cfg.reward.k_dist},
                 {"k_x", cfg.reward.k_x},
                 {"alpha", cfg.reward.alpha},
                 {"d_col_min", cfg.reward.d_col_min},
                 {"x_target", cfg.reward.x_target},
                 {"d_target", cfg.reward.d_target},
                 {"success_ex_px", cfg.reward.success_ex},
                 {"success_ed_m", cfg.reward.success_ed},
                 {"bonus", cfg.reward.bonus},
                 {"d_ped_min", cfg.reward.d_ped_min},
                 {"d_ped_max", cfg.reward.d_ped_max}};
  j["pd"] = {{"kp_x", cfg.pd.kp_x},
             {"kd_x", cfg.pd.kd_x},
             {"kp_d", cfg.pd.kp_d},
             {"kd_d", cfg.pd.kd_d}};
  j["ddpg"] = {{"gamma", cfg.ddpg.gamma},
               {"tau", cfg.ddpg.tau},
               {"actor_lr", cfg.ddpg.actor_lr},
               {"critic_lr", cfg.ddpg.critic_lr},
               {"batch_size", cfg.ddpg.batch_size},
               {"buffer_capacity", cfg.ddpg.buffer_capacity},
               {"warmup", cfg.ddpg.warmup},
               {"episodes", cfg.ddpg.episodes},
               {"ou_dv", {{"mu", cfg.ddpg.ou_dv.mu}, {"theta", cfg.ddpg.ou_dv.theta}, {"sigma", cfg.ddpg.ou_dv.sigma}}},
               {"ou_dw", {{"mu", cfg.ddpg.ou_dw.mu}, {"theta", cfg.ddpg.ou_dw.theta}, {"sigma", cfg.ddpg.ou_dw.sigma}}},
               {"spawn_jitter_xy", cfg.ddpg.spawn_jitter_xy},
               {"spawn_jitter_theta", cfg.ddpg.spawn_jitter_theta},
               {"goal_streak_stop", cfg.ddpg.goal_streak_stop}};
  j["bc"] = {{"epochs", cfg.bc.epochs},
             {"batch_size", cfg.bc.batch_size},
             {"lr", cfg.bc.lr},
             {"val_split", cfg.bc.val_split}};
  return j.dump(2) + "\n";
}

FollowEnvConfig make_env_config(const RunConfig& cfg, Scenario scenario, bool training) {
  FollowEnvConfig env;
  env.scenario = std::move(scenario);
  env.sensing.camera.focal_px = cfg.sensing.focal_px;
  env.sensing.event_noise_rate = cfg.event_noise_rate;
  env.sensing.depth_sigma = cfg.depth_sigma;
  env.sensing.sae_threshold = cfg.sensing.threshold;
  env.sensing.min_area = cfg.sensing.min_area;
  env.sensing.window_us = cfg.sensing.window_us;
  env.sensing.use_oracle_detector = cfg.sensing.detector == "oracle";
  env.reward = cfg.reward;
  if (training) {
    env.spawn_jitter_xy = cfg.ddpg.spawn_jitter_xy;
    env.spawn_jitter_theta = cfg.ddpg.spawn_jitter_theta;
  }
  return env;
}

DdpgConfig make_ddpg_config(const RunConfig& cfg) {
  DdpgConfig d;
  d.episodes = cfg.ddpg.episodes;
  d.gamma = cfg.ddpg.gamma;
  d.tau = cfg.ddpg.tau;
  d.actor_opt.lr = cfg.ddpg.actor_lr;
  d.critic_opt.lr = cfg.ddpg.critic_lr;
  d.batch_size = cfg.ddpg.batch_size;
  d.buffer_capacity = cfg.ddpg.buffer_capacity;
  d.warmup = cfg.ddpg.warmup;
  d.noise = {cfg.ddpg.ou_dv, cfg.ddpg.ou_dw};
  d.seed = cfg.seed;
  d.goal_streak_stop = cfg.ddpg.goal_streak_stop;
  return d;
}

}  // namespace evnav
