#include "evnav/ou_noise.hpp"

namespace evnav {

OuNoise::OuNoise(std::vector<OuParams> params, std::uint64_t seed)
    : params_(std::move(params)), rng_(seed) {
  x_.resize(params_.size());
  reset();
}

void OuNoise::reset() {
  for (std::size_t i = 0; i < params_.size(); ++i) x_[i] = params_[i].mu;
}

const std::vector<double>& OuNoise::step() {
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (std::size_t i = 0; i < params_.size(); ++i) {
    const auto& p = params_[i];
    const double n = p.sigma > 0.0 ? gauss(rng_) : 0.0;
    x_[i] = x_[i] + p.theta * (p.mu - x_[i]) + p.sigma * n;
  }
  return x_;
}

}  // namespace evnav
