#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "evnav/rng.hpp"

namespace evnav {

// Non-owning view into one stored transition.
struct TransitionView {
  std::span<const double> s;
  std::span<const double> a;
  double r{0.0};
  std::span<const double> s_next;
  bool terminal{false};
};

// FIFO ring of (s, a, r, s', terminal) tuples stored contiguously. Sampling is
// uniform with replacement and refuses to run before `warmup` transitions have
// been stored.
class ReplayBuffer {
 public:
  ReplayBuffer(std::size_t capacity, int state_dim, int action_dim, std::size_t warmup = 1000);

  void push(std::span<const double> s, std::span<const double> a, double r,
            std::span<const double> s_next, bool terminal);

  std::vector<TransitionView> sample(std::size_t n, Rng& rng) const;
  TransitionView view(std::size_t logical_index) const;  // 0 = oldest retained

  std::size_t size() const { return size_; }
  std::size_t capacity() const { return capacity_; }
  std::size_t warmup() const { return warmup_; }
  bool warmed_up() const { return size_ >= warmup_; }

 private:
  std::size_t capacity_;
  int state_dim_;
  int action_dim_;
  std::size_t warmup_;
  std::size_t row_len_;
  std::size_t size_{0};
  std::size_t head_{0};  // next write slot
  std::vector<double> data_;
  std::vector<std::uint8_t> terminal_;
};

}  // namespace evnav
