#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "evnav/rng.hpp"

namespace evnav {

enum class Activation : std::uint8_t {
  Linear = 0,
  Relu = 1,
  ScaledTanh = 2,  // bound * tanh(z), per-output bound
};

// Dense MLP with 64-bit parameters. w[l] is sizes[l+1] x sizes[l] row-major,
// b[l] has sizes[l+1] entries; acts[l] is applied after layer l.
struct Mlp {
  std::vector<int> sizes;
  std::vector<Activation> acts;
  std::vector<std::vector<double>> w;
  std::vector<std::vector<double>> b;
  std::vector<double> out_bounds;  // per output unit, used by ScaledTanh

  static Mlp make(std::vector<int> sizes, std::vector<Activation> acts,
                  std::vector<double> out_bounds = {});

  int input_size() const { return sizes.front(); }
  int output_size() const { return sizes.back(); }
  int layer_count() const { return static_cast<int>(sizes.size()) - 1; }
  std::size_t parameter_count() const;

  // Uniform(-1/sqrt(fan_in), 1/sqrt(fan_in)) per layer; the last layer is
  // additionally scaled by last_layer_scale so fresh policies act near zero.
  void init_uniform(Rng& rng, double last_layer_scale = 1.0);
};

// Standard actor/critic shapes: 6-30-30-2 with bounded tanh outputs and
// (6+2)-30-30-1 with a linear head.
Mlp make_actor(int state_dim = 6, int hidden1 = 30, int hidden2 = 30,
               std::vector<double> bounds = {0.2, 0.5});
Mlp make_critic(int state_dim = 6, int action_dim = 2, int hidden1 = 30, int hidden2 = 30);

// Per-layer pre-activations and activations kept for the backward pass;
// act[0] is the input.
struct ForwardCache {
  std::vector<std::vector<double>> pre;
  std::vector<std::vector<double>> act;
};

std::vector<double> mlp_forward(const Mlp& net, std::span<const double> input,
                                ForwardCache* cache = nullptr);

// Parameter-shaped gradient accumulator.
struct MlpGrad {
  std::vector<std::vector<double>> w;
  std::vector<std::vector<double>> b;

  static MlpGrad zeros_like(const Mlp& net);
  void zero();
  void scale(double s);
  bool finite() const;
};

// Exact reverse-mode gradients for the cached forward pass. Parameter
// gradients are accumulated into `grad`; returns d(loss)/d(input). The ReLU
// subgradient at 0 is 0.
std::vector<double> mlp_backward(const Mlp& net, const ForwardCache& cache,
                                 std::span<const double> output_grad, MlpGrad& grad);

// Mean over the batch of squared L2 norms, 1/N sum ||pred_i - target_i||^2.
// When grad is given it receives 2 (pred - target) / N per sample.
double mse_loss(const std::vector<std::vector<double>>& pred,
                const std::vector<std::vector<double>>& target,
                std::vector<std::vector<double>>* grad = nullptr);

struct AdamConfig {
  double lr{1e-4};
  double beta1{0.9};
  double beta2{0.999};
  double eps{1e-8};
};

struct AdamState {
  std::uint64_t step{0};
  MlpGrad m;
  MlpGrad v;

  static AdamState make(const Mlp& net);
};

// Bias-corrected Adam update. Throws std::runtime_error (with the offending
// layer in the message) when a gradient is non-finite.
void adam_step(Mlp& net, const MlpGrad& grad, AdamState& state, const AdamConfig& cfg);

// Versioned little-endian binary weight file with a CRC32 trailer.
void save_weights(const Mlp& net, const std::string& path);
Mlp load_weights(const std::string& path);

}  // namespace evnav
