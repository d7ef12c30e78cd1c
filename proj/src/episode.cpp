#include "evnav/episode.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "evnav/perception.hpp"
#include "evnav/rng.hpp"

namespace evnav {

PdExpertController::PdExpertController(PdGains gains, double x_target, double d_target,
                                       double dt, ActionLimits limits)
    : pd_(gains, x_target, d_target, limits), dt_(dt) {}

void PdExpertController::reset() { pd_.reset(); }

std::array<double, 2> PdExpertController::act(const FollowEnv& env) {
  const StateVector raw = env.last_state_raw();
  const bool detected = env.last_detected();
  const VelocityCommand desired =
      pd_.update(detected ? std::optional<double>(raw.x_box) : std::nullopt,
                 detected ? std::optional<double>(raw.d_ped) : std::nullopt, dt_);
  return {desired.v - raw.v, desired.omega - raw.omega};
}

ActorController::ActorController(Mlp actor) : actor_(std::move(actor)) {
  if (actor_.input_size() != 6 || actor_.output_size() != 2) {
    throw std::invalid_argument("ActorController: expected a 6-input, 2-output network");
  }
}

std::array<double, 2> ActorController::act(const FollowEnv& env) {
  const auto s = normalize_state(env.last_state_raw()).to_array();
  const std::vector<double> a = mlp_forward(actor_, s);
  return {a[0], a[1]};
}

EpisodeLog run_episode(FollowEnv& env, Controller& controller, std::uint64_t seed,
                       int max_steps) {
  EpisodeLog log;
  env.reset(seed);
  controller.reset();
  for (int step = 0; step < max_steps; ++step) {
    const auto action = controller.act(env);
    const StepOutcome o = env.step(action);
    log.rows.push_back(env.last_row());
    if (o.terminal) break;
  }
  log.final_status = env.status();
  return log;
}

void write_episode_csv(const EpisodeLog& log, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("write_episode_csv: cannot write " + path);
  f << "t,x_r,y_r,theta,v_r,omega_r,x_box,d_ped,d_obs,theta_obs,reward,status\n";
  char line[320];
  for (const auto& r : log.rows) {
    std::snprintf(line, sizeof(line),
                  "%.1f,%.6f,%.6f,%.6f,%.6f,%.6f,%.6f,%.6f,%.6f,%.6f,%.6f,%s\n", r.t, r.x_r,
                  r.y_r, r.theta, r.v_r, r.omega_r, r.x_box, r.d_ped, r.d_obs, r.theta_obs,
                  r.reward, to_string(r.status));
    f << line;
  }
}

EpisodeLog read_episode_csv(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("read_episode_csv: cannot open " + path);
  EpisodeLog log;
  std::string line;
  if (!std::getline(f, line)) throw std::runtime_error("read_episode_csv: empty file " + path);
  while (std::getline(f, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    LogRow r;
    double* fields[] = {&r.t,     &r.x_r,   &r.y_r,   &r.theta,     &r.v_r,   &r.omega_r,
                        &r.x_box, &r.d_ped, &r.d_obs, &r.theta_obs, &r.reward};
    for (double* field : fields) {
      if (!std::getline(ss, cell, ',')) {
        throw std::runtime_error("read_episode_csv: malformed row in " + path);
      }
      *field = std::stod(cell);
    }
    if (!std::getline(ss, cell, ',')) {
      throw std::runtime_error("read_episode_csv: missing status in " + path);
    }
    const auto status = termination_from_string(cell);
    if (!status) throw std::runtime_error("read_episode_csv: bad status '" + cell + "'");
    r.status = *status;
    log.rows.push_back(r);
  }
  if (!log.rows.empty()) log.final_status = log.rows.back().status;
  return log;
}

CollectResult collect_expert(FollowEnv& env, PdExpertController& expert, int episodes,
                             std::uint64_t master_seed) {
  CollectResult out;
  out.dataset.state_dim = 6;
  out.dataset.action_dim = 2;
  for (int ep = 0; ep < episodes; ++ep) {
    env.reset(derive_seed(master_seed, seed_stream::kCollect, ep));
    expert.reset();
    BcDataset episode_pairs;
    for (int step = 0; step < 100000; ++step) {
      const StateVector before_raw = env.last_state_raw();
      const auto s_norm = normalize_state(before_raw).to_array();
      const auto action = expert.act(env);
      const StepOutcome o = env.step(action);
      // label with the increment that was actually applied
      const VelocityCommand now = env.command();
      const std::array<double, 2> applied{now.v - before_raw.v, now.omega - before_raw.omega};
      episode_pairs.push(s_norm, applied);
      if (o.terminal) break;
    }
    ++out.episodes_total;
    if (env.status() == TerminationStatus::GoalReached) {
      ++out.episodes_kept;
      out.dataset.states.insert(out.dataset.states.end(), episode_pairs.states.begin(),
                                episode_pairs.states.end());
      out.dataset.actions.insert(out.dataset.actions.end(), episode_pairs.actions.begin(),
                                 episode_pairs.actions.end());
    }
  }
  return out;
}

}  // namespace evnav
