#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "evnav/mlp.hpp"

namespace evnav {

// Flat expert dataset of (state, action) pairs.
struct BcDataset {
  int state_dim{6};
  int action_dim{2};
  std::vector<double> states;   // size() * state_dim
  std::vector<double> actions;  // size() * action_dim

  std::size_t size() const { return state_dim ? states.size() / state_dim : 0; }
  void push(std::span<const double> s, std::span<const double> a);
};

// CSV form "s1..sN,a1..aM" with a header row; states stored normalized.
void write_bc_dataset_csv(const BcDataset& data, const std::string& path);
BcDataset read_bc_dataset_csv(const std::string& path, int state_dim = 6, int action_dim = 2);

struct BcConfig {
  int epochs{500};
  int batch_size{64};
  double lr{1e-3};
  double val_split{0.1};
  std::uint64_t seed{1};
  double divergence_loss{1e6};
};

struct BcResult {
  Mlp actor;               // parameters with the best held-out loss
  double initial_mse{0.0}; // full-train-set MSE before any update
  double final_train_mse{0.0};
  double best_val_mse{0.0};
  std::vector<double> train_mse;  // per epoch
  std::vector<double> val_mse;    // per epoch
};

// Mini-batch regression of the actor onto expert pairs (Adam on the batch-mean
// squared L2 error). The dataset is shuffled once, split 1-val_split/val_split,
// and reshuffled per epoch; training aborts with std::runtime_error when the
// epoch loss exceeds divergence_loss.
BcResult bc_train(const BcDataset& data, Mlp actor, const BcConfig& cfg);

void write_bc_log_csv(const BcResult& result, const std::string& path);

}  // namespace evnav
