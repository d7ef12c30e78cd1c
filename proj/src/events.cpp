#include "evnav/events.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

namespace evnav {

void EventStream::append(std::span<const Event> batch) {
  for (const auto& e : batch) append(e);
}

void EventStream::append(const Event& e) {
  if (!events_.empty() && e.t_us < events_.back().t_us) {
    throw std::invalid_argument("EventStream: timestamps must be non-decreasing");
  }
  events_.push_back(e);
}

namespace {
bool ts_less(const Event& e, std::int64_t t) { return e.t_us < t; }
}  // namespace

std::span<const Event> EventStream::window_by_time(std::int64_t t_us, std::int64_t dt_us) const {
  if (dt_us <= 0) throw std::invalid_argument("window_by_time: dt must be positive");
  // strict lower bound: t - dt < t_k, inclusive upper: t_k <= t
  const auto first = std::lower_bound(events_.begin(), events_.end(), t_us - dt_us + 1, ts_less);
  const auto last = std::lower_bound(first, events_.end(), t_us + 1, ts_less);
  return {events_.data() + (first - events_.begin()), static_cast<std::size_t>(last - first)};
}

std::span<const Event> EventStream::window_by_count(std::int64_t t_us, std::size_t n) const {
  if (n == 0) throw std::invalid_argument("window_by_count: n must be positive");
  const auto last = std::lower_bound(events_.begin(), events_.end(), t_us + 1, ts_less);
  const std::size_t available = static_cast<std::size_t>(last - events_.begin());
  const std::size_t take = std::min(n, available);
  return {events_.data() + (available - take), take};
}

void EventStream::drop_before(std::int64_t t_us) {
  const auto it = std::lower_bound(events_.begin(), events_.end(), t_us, ts_less);
  events_.erase(events_.begin(), it);
}

SaeFrame build_sae(std::span<const Event> events, std::int64_t t_init_us, std::int64_t dt_us,
                   int width, int height) {
  if (dt_us <= 0) throw std::invalid_argument("build_sae: dt must be positive");
  SaeFrame f;
  f.width = width;
  f.height = height;
  f.t_init_us = t_init_us;
  f.dt_us = dt_us;
  const std::size_t n = static_cast<std::size_t>(width) * height;
  f.neg.assign(n, 0);
  f.pos.assign(n, 0);
  f.composite.assign(n, 0);
  for (const auto& e : events) {
    if (e.t_us < t_init_us || e.t_us > t_init_us + dt_us) {
      throw std::invalid_argument("build_sae: event outside [t_init, t_init + dt]");
    }
    if (static_cast<int>(e.x) >= width || static_cast<int>(e.y) >= height) {
      throw std::invalid_argument("build_sae: event outside the frame");
    }
    const double scaled = 255.0 * static_cast<double>(e.t_us - t_init_us) / dt_us;
    const auto value = static_cast<std::uint8_t>(std::floor(scaled + 0.5));
    const std::size_t idx = static_cast<std::size_t>(e.y) * width + e.x;
    // events arrive time-ordered, so plain overwrite keeps the last one
    if (e.polarity < 0) {
      f.neg[idx] = value;
    } else {
      f.pos[idx] = value;
    }
    f.composite[idx] = std::max(f.neg[idx], f.pos[idx]);
  }
  return f;
}

void write_pgm(const std::uint8_t* data, int width, int height, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("write_pgm: cannot write " + path);
  f << "P5\n" << width << " " << height << "\n255\n";
  f.write(reinterpret_cast<const char*>(data), static_cast<std::streamsize>(width) * height);
}

void write_event_csv(std::span<const Event> events, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("write_event_csv: cannot write " + path);
  f << "t_us,x,y,p\n";
  for (const auto& e : events) {
    f << e.t_us << ',' << e.x << ',' << e.y << ',' << static_cast<int>(e.polarity) << '\n';
  }
}

}  // namespace evnav
