#pragma once

#include <vector>

#include "evnav/rng.hpp"

namespace evnav {

struct OuParams {
  double mu{0.0};
  double theta{0.0};
  double sigma{0.2};
};

// Discrete Ornstein-Uhlenbeck process, one value per action channel:
//   x <- x + theta (mu - x) + sigma N(0, 1)
// with dt absorbed into one control tick. reset() returns every channel to mu
// at episode start.
class OuNoise {
 public:
  OuNoise(std::vector<OuParams> params, std::uint64_t seed);

  void reset();
  const std::vector<double>& step();
  const std::vector<double>& value() const { return x_; }
  int channels() const { return static_cast<int>(params_.size()); }

 private:
  std::vector<OuParams> params_;
  std::vector<double> x_;
  Rng rng_;
};

}  // namespace evnav
