#include "evnav/bc.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "evnav/rng.hpp"

namespace evnav {

void BcDataset::push(std::span<const double> s, std::span<const double> a) {
  if (static_cast<int>(s.size()) != state_dim || static_cast<int>(a.size()) != action_dim) {
    throw std::invalid_argument("BcDataset: pair dimension mismatch");
  }
  states.insert(states.end(), s.begin(), s.end());
  actions.insert(actions.end(), a.begin(), a.end());
}

void write_bc_dataset_csv(const BcDataset& data, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("write_bc_dataset_csv: cannot write " + path);
  for (int i = 0; i < data.state_dim; ++i) f << "s" << (i + 1) << ',';
  for (int i = 0; i < data.action_dim; ++i) f << "a" << (i + 1) << (i + 1 < data.action_dim ? "," : "");
  f << '\n';
  char cell[32];
  for (std::size_t row = 0; row < data.size(); ++row) {
    for (int i = 0; i < data.state_dim; ++i) {
      std::snprintf(cell, sizeof(cell), "%.9g,", data.states[row * data.state_dim + i]);
      f << cell;
    }
    for (int i = 0; i < data.action_dim; ++i) {
      std::snprintf(cell, sizeof(cell), i + 1 < data.action_dim ? "%.9g," : "%.9g",
                    data.actions[row * data.action_dim + i]);
      f << cell;
    }
    f << '\n';
  }
}

BcDataset read_bc_dataset_csv(const std::string& path, int state_dim, int action_dim) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("read_bc_dataset_csv: cannot open " + path);
  BcDataset data;
  data.state_dim = state_dim;
  data.action_dim = action_dim;
  std::string line;
  if (!std::getline(f, line)) throw std::runtime_error("read_bc_dataset_csv: empty file " + path);
  const int cols = state_dim + action_dim;
  while (std::getline(f, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    int c = 0;
    while (std::getline(ss, cell, ',')) {
      const double v = std::stod(cell);
      if (c < state_dim) {
        data.states.push_back(v);
      } else {
        data.actions.push_back(v);
      }
      ++c;
    }
    if (c != cols) throw std::runtime_error("read_bc_dataset_csv: malformed row in " + path);
  }
  return data;
}

namespace {

double dataset_mse(const Mlp& actor, const BcDataset& data, const std::vector<std::size_t>& idx) {
  if (idx.empty()) return 0.0;
  double loss = 0.0;
  for (const std::size_t row : idx) {
    const std::span<const double> s(data.states.data() + row * data.state_dim,
                                    static_cast<std::size_t>(data.state_dim));
    const std::vector<double> pred = mlp_forward(actor, s);
    for (int j = 0; j < data.action_dim; ++j) {
      const double e = pred[j] - data.actions[row * data.action_dim + j];
      loss += e * e;
    }
  }
  return loss / static_cast<double>(idx.size());
}

}  // namespace

BcResult bc_train(const BcDataset& data, Mlp actor, const BcConfig& cfg) {
  if (data.size() == 0) throw std::invalid_argument("bc_train: empty dataset");
  if (actor.input_size() != data.state_dim || actor.output_size() != data.action_dim) {
    throw std::invalid_argument("bc_train: actor does not fit the dataset");
  }
  Rng rng(derive_seed(cfg.seed, seed_stream::kBc));
  std::vector<std::size_t> order(data.size());
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  const auto val_count =
      static_cast<std::size_t>(static_cast<double>(data.size()) * cfg.val_split);
  std::vector<std::size_t> val(order.end() - val_count, order.end());
  std::vector<std::size_t> train(order.begin(), order.end() - val_count);
  if (train.empty()) throw std::invalid_argument("bc_train: no training rows after split");

  BcResult out;
  out.initial_mse = dataset_mse(actor, data, train);
  out.best_val_mse = val.empty() ? out.initial_mse : dataset_mse(actor, data, val);
  Mlp best = actor;

  AdamState opt_state = AdamState::make(actor);
  const AdamConfig opt{cfg.lr, 0.9, 0.999, 1e-8};
  MlpGrad grad = MlpGrad::zeros_like(actor);
  ForwardCache cache;

  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    std::shuffle(train.begin(), train.end(), rng);
    for (std::size_t at = 0; at < train.size(); at += cfg.batch_size) {
      const std::size_t n = std::min<std::size_t>(cfg.batch_size, train.size() - at);
      grad.zero();
      for (std::size_t k = 0; k < n; ++k) {
        const std::size_t row = train[at + k];
        const std::span<const double> s(data.states.data() + row * data.state_dim,
                                        static_cast<std::size_t>(data.state_dim));
        const std::vector<double> pred = mlp_forward(actor, s, &cache);
        std::vector<double> out_grad(data.action_dim);
        for (int j = 0; j < data.action_dim; ++j) {
          out_grad[j] =
              2.0 * (pred[j] - data.actions[row * data.action_dim + j]) / static_cast<double>(n);
        }
        mlp_backward(actor, cache, out_grad, grad);
      }
      adam_step(actor, grad, opt_state, opt);
    }
    const double train_mse = dataset_mse(actor, data, train);
    const double val_mse = val.empty() ? train_mse : dataset_mse(actor, data, val);
    out.train_mse.push_back(train_mse);
    out.val_mse.push_back(val_mse);
    if (train_mse > cfg.divergence_loss) {
      throw std::runtime_error("bc_train: diverged at epoch " + std::to_string(epoch));
    }
    if (val_mse <= out.best_val_mse) {
      out.best_val_mse = val_mse;
      best = actor;
    }
  }
  out.final_train_mse = out.train_mse.empty() ? out.initial_mse : out.train_mse.back();
  out.actor = std::move(best);
  return out;
}

void write_bc_log_csv(const BcResult& result, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("write_bc_log_csv: cannot write " + path);
  f << "epoch,train_mse,val_mse\n";
  char line[96];
  for (std::size_t i = 0; i < result.train_mse.size(); ++i) {
    std::snprintf(line, sizeof(line), "%zu,%.9g,%.9g\n", i, result.train_mse[i],
                  result.val_mse[i]);
    f << line;
  }
}

}  // namespace evnav
