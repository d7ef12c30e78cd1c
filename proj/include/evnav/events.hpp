#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace evnav {

// One asynchronous brightness-change record. Polarity is -1 (darker) or +1.
struct Event {
  std::int64_t t_us{0};
  std::uint16_t x{0};
  std::uint16_t y{0};
  std::int8_t polarity{1};
};

constexpr int kDavisWidth = 346;
constexpr int kDavisHeight = 260;

// Time-ordered event buffer with time-window and count-window queries.
// Timestamps must be appended non-decreasing; drop_before bounds retention.
class EventStream {
 public:
  void append(std::span<const Event> batch);
  void append(const Event& e);

  // Fixed-time window: events with t - dt < t_k <= t, original order.
  std::span<const Event> window_by_time(std::int64_t t_us, std::int64_t dt_us) const;
  // Fixed-count window: the most recent min(n, available) events at or before t.
  std::span<const Event> window_by_count(std::int64_t t_us, std::size_t n) const;

  void drop_before(std::int64_t t_us);
  std::size_t size() const { return events_.size(); }
  bool empty() const { return events_.empty(); }
  std::span<const Event> all() const { return events_; }

 private:
  std::vector<Event> events_;
};

// Surface of Active Events over one window. Per pixel and polarity channel the
// value is round(255 * (t_e - t_init) / dt) of the last event, half up; pixels
// without an event stay 0. The composite is the per-pixel max of the channels.
struct SaeFrame {
  int width{kDavisWidth};
  int height{kDavisHeight};
  std::int64_t t_init_us{0};
  std::int64_t dt_us{0};
  std::vector<std::uint8_t> neg;        // polarity -1
  std::vector<std::uint8_t> pos;        // polarity +1
  std::vector<std::uint8_t> composite;  // max(neg, pos)

  std::uint8_t neg_at(int x, int y) const { return neg[static_cast<std::size_t>(y) * width + x]; }
  std::uint8_t pos_at(int x, int y) const { return pos[static_cast<std::size_t>(y) * width + x]; }
  std::uint8_t composite_at(int x, int y) const {
    return composite[static_cast<std::size_t>(y) * width + x];
  }
};

// Build the SAE for events inside [t_init, t_init + dt]; an event outside the
// window violates the input contract and throws std::invalid_argument.
SaeFrame build_sae(std::span<const Event> events, std::int64_t t_init_us, std::int64_t dt_us,
                   int width = kDavisWidth, int height = kDavisHeight);

// Binary (P5) PGM export for offline inspection.
void write_pgm(const std::uint8_t* data, int width, int height, const std::string& path);

// PEDRo-like text dump, one "t_us,x,y,p" line per event.
void write_event_csv(std::span<const Event> events, const std::string& path);

}  // namespace evnav
