#include "evnav/mlp.hpp"

#include <cmath>
#include <stdexcept>

namespace evnav {

Mlp Mlp::make(std::vector<int> sizes, std::vector<Activation> acts,
              std::vector<double> out_bounds) {
  if (sizes.size() < 2) throw std::invalid_argument("Mlp: need at least input and output sizes");
  if (acts.size() != sizes.size() - 1) {
    throw std::invalid_argument("Mlp: one activation per layer required");
  }
  for (int s : sizes) {
    if (s <= 0) throw std::invalid_argument("Mlp: layer sizes must be positive");
  }
  Mlp net;
  net.sizes = std::move(sizes);
  net.acts = std::move(acts);
  if (net.acts.back() == Activation::ScaledTanh) {
    if (static_cast<int>(out_bounds.size()) != net.sizes.back()) {
      throw std::invalid_argument("Mlp: ScaledTanh output needs one bound per output unit");
    }
    for (double bound : out_bounds) {
      if (bound <= 0.0) throw std::invalid_argument("Mlp: output bounds must be positive");
    }
  }
  net.out_bounds = std::move(out_bounds);
  net.w.resize(net.layer_count());
  net.b.resize(net.layer_count());
  for (int l = 0; l < net.layer_count(); ++l) {
    net.w[l].assign(static_cast<std::size_t>(net.sizes[l + 1]) * net.sizes[l], 0.0);
    net.b[l].assign(net.sizes[l + 1], 0.0);
  }
  return net;
}

std::size_t Mlp::parameter_count() const {
  std::size_t n = 0;
  for (int l = 0; l < layer_count(); ++l) n += w[l].size() + b[l].size();
  return n;
}

void Mlp::init_uniform(Rng& rng, double last_layer_scale) {
  for (int l = 0; l < layer_count(); ++l) {
    const double bound = 1.0 / std::sqrt(static_cast<double>(sizes[l]));
    const double scale = (l == layer_count() - 1) ? last_layer_scale : 1.0;
    std::uniform_real_distribution<double> dist(-bound * scale, bound * scale);
    for (auto& x : w[l]) x = dist(rng);
    for (auto& x : b[l]) x = dist(rng);
  }
}

Mlp make_actor(int state_dim, int hidden1, int hidden2, std::vector<double> bounds) {
  return Mlp::make({state_dim, hidden1, hidden2, static_cast<int>(bounds.size())},
                   {Activation::Relu, Activation::Relu, Activation::ScaledTanh},
                   std::move(bounds));
}

Mlp make_critic(int state_dim, int action_dim, int hidden1, int hidden2) {
  return Mlp::make({state_dim + action_dim, hidden1, hidden2, 1},
                   {Activation::Relu, Activation::Relu, Activation::Linear});
}

std::vector<double> mlp_forward(const Mlp& net, std::span<const double> input,
                                ForwardCache* cache) {
  if (static_cast<int>(input.size()) != net.input_size()) {
    throw std::invalid_argument("mlp_forward: input size mismatch");
  }
  std::vector<double> a(input.begin(), input.end());
  if (cache) {
    cache->pre.assign(net.layer_count(), {});
    cache->act.assign(net.layer_count() + 1, {});
    cache->act[0] = a;
  }
  for (int l = 0; l < net.layer_count(); ++l) {
    const int rows = net.sizes[l + 1];
    const int cols = net.sizes[l];
    std::vector<double> z(rows);
    for (int r = 0; r < rows; ++r) {
      const double* wr = net.w[l].data() + static_cast<std::size_t>(r) * cols;
      double acc = net.b[l][r];
      for (int c = 0; c < cols; ++c) acc += wr[c] * a[c];
      z[r] = acc;
    }
    if (cache) cache->pre[l] = z;
    switch (net.acts[l]) {
      case Activation::Linear:
        a = z;
        break;
      case Activation::Relu:
        a = z;
        for (auto& x : a) x = x > 0.0 ? x : 0.0;
        break;
      case Activation::ScaledTanh:
        a.resize(z.size());
        for (std::size_t i = 0; i < z.size(); ++i) a[i] = net.out_bounds[i] * std::tanh(z[i]);
        break;
    }
    if (cache) cache->act[l + 1] = a;
  }
  return a;
}

MlpGrad MlpGrad::zeros_like(const Mlp& net) {
  MlpGrad g;
  g.w.resize(net.layer_count());
  g.b.resize(net.layer_count());
  for (int l = 0; l < net.layer_count(); ++l) {
    g.w[l].assign(net.w[l].size(), 0.0);
    g.b[l].assign(net.b[l].size(), 0.0);
  }
  return g;
}

void MlpGrad::zero() {
  for (auto& layer : w) std::fill(layer.begin(), layer.end(), 0.0);
  for (auto& layer : b) std::fill(layer.begin(), layer.end(), 0.0);
}

void MlpGrad::scale(double s) {
  for (auto& layer : w) {
    for (auto& x : layer) x *= s;
  }
  for (auto& layer : b) {
    for (auto& x : layer) x *= s;
  }
}

bool MlpGrad::finite() const {
  for (const auto& layer : w) {
    for (double x : layer) {
      if (!std::isfinite(x)) return false;
    }
  }
  for (const auto& layer : b) {
    for (double x : layer) {
      if (!std::isfinite(x)) return false;
    }
  }
  return true;
}

std::vector<double> mlp_backward(const Mlp& net, const ForwardCache& cache,
                                 std::span<const double> output_grad, MlpGrad& grad) {
  if (static_cast<int>(output_grad.size()) != net.output_size()) {
    throw std::invalid_argument("mlp_backward: output gradient size mismatch");
  }
  if (static_cast<int>(cache.pre.size()) != net.layer_count()) {
    throw std::invalid_argument("mlp_backward: cache does not match the network");
  }
  if (static_cast<int>(grad.w.size()) != net.layer_count()) {
    throw std::invalid_argument("mlp_backward: gradient accumulator shape mismatch");
  }
  std::vector<double> delta(output_grad.begin(), output_grad.end());
  for (int l = net.layer_count() - 1; l >= 0; --l) {
    const int rows = net.sizes[l + 1];
    const int cols = net.sizes[l];
    const auto& z = cache.pre[l];
    // delta = dL/da(l+1) -> dL/dz(l)
    switch (net.acts[l]) {
      case Activation::Linear:
        break;
      case Activation::Relu:
        for (int r = 0; r < rows; ++r) {
          if (z[r] <= 0.0) delta[r] = 0.0;  // subgradient at 0 is 0
        }
        break;
      case Activation::ScaledTanh:
        for (int r = 0; r < rows; ++r) {
          const double th = std::tanh(z[r]);
          delta[r] *= net.out_bounds[r] * (1.0 - th * th);
        }
        break;
    }
    const auto& a_in = cache.act[l];
    double* gw = grad.w[l].data();
    for (int r = 0; r < rows; ++r) {
      const double d = delta[r];
      grad.b[l][r] += d;
      double* gr = gw + static_cast<std::size_t>(r) * cols;
      for (int c = 0; c < cols; ++c) gr[c] += d * a_in[c];
    }
    if (l == 0) {
      std::vector<double> input_grad(cols, 0.0);
      for (int r = 0; r < rows; ++r) {
        const double d = delta[r];
        const double* wr = net.w[l].data() + static_cast<std::size_t>(r) * cols;
        for (int c = 0; c < cols; ++c) input_grad[c] += d * wr[c];
      }
      return input_grad;
    }
    std::vector<double> next(cols, 0.0);
    for (int r = 0; r < rows; ++r) {
      const double d = delta[r];
      const double* wr = net.w[l].data() + static_cast<std::size_t>(r) * cols;
      for (int c = 0; c < cols; ++c) next[c] += d * wr[c];
    }
    delta = std::move(next);
  }
  return {};
}

double mse_loss(const std::vector<std::vector<double>>& pred,
                const std::vector<std::vector<double>>& target,
                std::vector<std::vector<double>>* grad) {
  if (pred.empty()) throw std::invalid_argument("mse_loss: empty batch");
  if (pred.size() != target.size()) throw std::invalid_argument("mse_loss: batch size mismatch");
  const double n = static_cast<double>(pred.size());
  if (grad) grad->assign(pred.size(), {});
  double loss = 0.0;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    if (pred[i].size() != target[i].size()) {
      throw std::invalid_argument("mse_loss: element size mismatch");
    }
    if (grad) (*grad)[i].resize(pred[i].size());
    for (std::size_t j = 0; j < pred[i].size(); ++j) {
      const double e = pred[i][j] - target[i][j];
      loss += e * e;
      if (grad) (*grad)[i][j] = 2.0 * e / n;
    }
  }
  return loss / n;
}

AdamState AdamState::make(const Mlp& net) {
  AdamState st;
  st.m = MlpGrad::zeros_like(net);
  st.v = MlpGrad::zeros_like(net);
  return st;
}

void adam_step(Mlp& net, const MlpGrad& grad, AdamState& state, const AdamConfig& cfg) {
  for (int l = 0; l < net.layer_count(); ++l) {
    for (double g : grad.w[l]) {
      if (!std::isfinite(g)) {
        throw std::runtime_error("adam_step: non-finite weight gradient in layer " +
                                 std::to_string(l));
      }
    }
    for (double g : grad.b[l]) {
      if (!std::isfinite(g)) {
        throw std::runtime_error("adam_step: non-finite bias gradient in layer " +
                                 std::to_string(l));
      }
    }
  }
  state.step += 1;
  const double bc1 = 1.0 - std::pow(cfg.beta1, static_cast<double>(state.step));
  const double bc2 = 1.0 - std::pow(cfg.beta2, static_cast<double>(state.step));
  const auto update = [&](std::vector<double>& param, const std::vector<double>& g,
                          std::vector<double>& m, std::vector<double>& v) {
    for (std::size_t i = 0; i < param.size(); ++i) {
      m[i] = cfg.beta1 * m[i] + (1.0 - cfg.beta1) * g[i];
      v[i] = cfg.beta2 * v[i] + (1.0 - cfg.beta2) * g[i] * g[i];
      const double mhat = m[i] / bc1;
      const double vhat = v[i] / bc2;
      param[i] -= cfg.lr * mhat / (std::sqrt(vhat) + cfg.eps);
    }
  };
  for (int l = 0; l < net.layer_count(); ++l) {
    update(net.w[l], grad.w[l], state.m.w[l], state.v.w[l]);
    update(net.b[l], grad.b[l], state.m.b[l], state.v.b[l]);
  }
}

}  // namespace evnav
