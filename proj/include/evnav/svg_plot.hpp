#pragma once

#include <functional>
#include <string>
#include <vector>

#include "evnav/episode.hpp"
#include "evnav/world.hpp"

namespace evnav {

// XY view of the run: map boundary, obstacles, pedestrian path, robot
// trajectories. Fixed 900x540 canvas at 40 px per meter, world y up.
void write_trajectory_svg(const std::vector<EpisodeLog>& logs, const Scenario& scenario,
                          const std::string& path);

// One quantity against time, one polyline per episode.
void write_timeseries_svg(const std::vector<EpisodeLog>& logs,
                          const std::function<double(const LogRow&)>& value,
                          const std::string& label, const std::string& path);

// Full artifact export for a run: episodes/epNNN.csv, metrics.json and the
// four time-series plots plus the trajectory plot under plots/.
void render_outputs(const std::vector<EpisodeLog>& logs, const Scenario& scenario,
                    const std::string& out_dir);

}  // namespace evnav
