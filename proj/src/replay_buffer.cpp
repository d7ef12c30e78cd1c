#include "evnav/replay_buffer.hpp"

#include <algorithm>
#include <stdexcept>

namespace evnav {

ReplayBuffer::ReplayBuffer(std::size_t capacity, int state_dim, int action_dim,
                           std::size_t warmup)
    : capacity_(capacity),
      state_dim_(state_dim),
      action_dim_(action_dim),
      warmup_(warmup),
      row_len_(2 * static_cast<std::size_t>(state_dim) + action_dim + 1) {
  if (capacity == 0) throw std::invalid_argument("ReplayBuffer: capacity must be positive");
  if (state_dim <= 0 || action_dim <= 0) {
    throw std::invalid_argument("ReplayBuffer: dimensions must be positive");
  }
}

void ReplayBuffer::push(std::span<const double> s, std::span<const double> a, double r,
                        std::span<const double> s_next, bool terminal) {
  if (static_cast<int>(s.size()) != state_dim_ || static_cast<int>(s_next.size()) != state_dim_ ||
      static_cast<int>(a.size()) != action_dim_) {
    throw std::invalid_argument("ReplayBuffer: transition dimension mismatch");
  }
  if (data_.size() < capacity_ * row_len_) {
    // grow lazily so small experiments never touch the full capacity
    const std::size_t needed = (head_ + 1) * row_len_;
    if (data_.size() < needed) data_.resize(std::min(capacity_ * row_len_, needed * 2));
    if (terminal_.size() <= head_) terminal_.resize(std::min(capacity_, (head_ + 1) * 2));
  }
  double* row = data_.data() + head_ * row_len_;
  std::copy(s.begin(), s.end(), row);
  std::copy(a.begin(), a.end(), row + state_dim_);
  row[state_dim_ + action_dim_] = r;
  std::copy(s_next.begin(), s_next.end(), row + state_dim_ + action_dim_ + 1);
  terminal_[head_] = terminal ? 1 : 0;
  head_ = (head_ + 1) % capacity_;
  size_ = std::min(size_ + 1, capacity_);
}

TransitionView ReplayBuffer::view(std::size_t logical_index) const {
  if (logical_index >= size_) throw std::out_of_range("ReplayBuffer: index out of range");
  const std::size_t slot =
      size_ < capacity_ ? logical_index : (head_ + logical_index) % capacity_;
  const double* row = data_.data() + slot * row_len_;
  TransitionView t;
  t.s = {row, static_cast<std::size_t>(state_dim_)};
  t.a = {row + state_dim_, static_cast<std::size_t>(action_dim_)};
  t.r = row[state_dim_ + action_dim_];
  t.s_next = {row + state_dim_ + action_dim_ + 1, static_cast<std::size_t>(state_dim_)};
  t.terminal = terminal_[slot] != 0;
  return t;
}

std::vector<TransitionView> ReplayBuffer::sample(std::size_t n, Rng& rng) const {
  if (!warmed_up()) {
    throw std::logic_error("ReplayBuffer: sampled before the warmup threshold");
  }
  std::uniform_int_distribution<std::size_t> pick(0, size_ - 1);
  std::vector<TransitionView> batch;
  batch.reserve(n);
  for (std::size_t i = 0; i < n; ++i) batch.push_back(view(pick(rng)));
  return batch;
}

}  // namespace evnav
