#pragma once

#include <cstdint>
#include <vector>

#include "evnav/camera.hpp"
#include "evnav/events.hpp"
#include "evnav/rng.hpp"

namespace evnav {

// Occupancy-change event model. A pixel turning covered (0 -> 1) emits
// polarity -1 (silhouette darker than background), turning uncovered emits +1.
// Change events get timestamps drawn uniformly from (t0, t1]; background noise
// fires as a Poisson process at noise_rate events/pixel/s with random polarity.
// The returned batch is sorted by (t, y, x, polarity).
std::vector<Event> synthesize_events(const OccupancyImage& prev, const OccupancyImage& curr,
                                     std::int64_t t0_us, std::int64_t t1_us, double noise_rate,
                                     Rng& rng);

// Full refresh of the currently covered pixels, all stamped exactly t_us with
// polarity -1. Models the periodic frame-assisted resync of the sensor: with a
// plain change-detection model a well-tracked (nearly static) silhouette stops
// producing events, which no real sensor stack tolerates; the detector window
// that ends at a control tick always contains one such refresh.
std::vector<Event> keyframe_events(const OccupancyImage& occ, std::int64_t t_us);

}  // namespace evnav
