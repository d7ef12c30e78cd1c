#include "evnav/event_synth.hpp"

#include <algorithm>
#include <stdexcept>

namespace evnav {

namespace {

bool event_order(const Event& a, const Event& b) {
  if (a.t_us != b.t_us) return a.t_us < b.t_us;
  if (a.y != b.y) return a.y < b.y;
  if (a.x != b.x) return a.x < b.x;
  return a.polarity < b.polarity;
}

}  // namespace

std::vector<Event> synthesize_events(const OccupancyImage& prev, const OccupancyImage& curr,
                                     std::int64_t t0_us, std::int64_t t1_us, double noise_rate,
                                     Rng& rng) {
  if (t1_us <= t0_us) throw std::invalid_argument("synthesize_events: need t1 > t0");
  if (prev.width() != curr.width() || prev.height() != curr.height()) {
    throw std::invalid_argument("synthesize_events: image sizes differ");
  }
  std::vector<Event> out;
  std::uniform_int_distribution<std::int64_t> stamp(t0_us + 1, t1_us);

  const auto emit = [&](int x, int y, std::int8_t p) {
    out.push_back({stamp(rng), static_cast<std::uint16_t>(x), static_cast<std::uint16_t>(y), p});
  };
  for (int y = 0; y < curr.height(); ++y) {
    const auto& a = prev.row(y);
    const auto& b = curr.row(y);
    if (a.begin == b.begin && a.end == b.end) continue;
    // covered = b \ a, uncovered = a \ b; each difference of two intervals
    for (int x = b.begin; x < b.end; ++x) {
      if (x < a.begin || x >= a.end) emit(x, y, -1);
    }
    for (int x = a.begin; x < a.end; ++x) {
      if (x < b.begin || x >= b.end) emit(x, y, +1);
    }
  }

  if (noise_rate > 0.0) {
    const double pixels = static_cast<double>(curr.width()) * curr.height();
    const double mean = noise_rate * pixels * static_cast<double>(t1_us - t0_us) * 1e-6;
    std::poisson_distribution<int> count(mean);
    std::uniform_int_distribution<int> px(0, curr.width() - 1);
    std::uniform_int_distribution<int> py(0, curr.height() - 1);
    std::uniform_int_distribution<int> pol(0, 1);
    const int n = count(rng);
    for (int i = 0; i < n; ++i) {
      out.push_back({stamp(rng), static_cast<std::uint16_t>(px(rng)),
                     static_cast<std::uint16_t>(py(rng)),
                     static_cast<std::int8_t>(pol(rng) == 0 ? -1 : 1)});
    }
  }

  std::sort(out.begin(), out.end(), event_order);
  return out;
}

std::vector<Event> keyframe_events(const OccupancyImage& occ, std::int64_t t_us) {
  std::vector<Event> out;
  out.reserve(static_cast<std::size_t>(occ.active_pixels()));
  for (int y = 0; y < occ.height(); ++y) {
    const auto& run = occ.row(y);
    for (int x = run.begin; x < run.end; ++x) {
      out.push_back({t_us, static_cast<std::uint16_t>(x), static_cast<std::uint16_t>(y), -1});
    }
  }
  return out;
}

}  // namespace evnav
