#include "evnav/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>

#include "evnav/metrics.hpp"

namespace evnav {

namespace {

constexpr double kScale = 40.0;  // px per meter
constexpr int kTrajW = 900;
constexpr int kTrajH = 540;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

const char* episode_color(int i) {
  static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                  "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};
  return palette[i % 8];
}

}  // namespace

void write_trajectory_svg(const std::vector<EpisodeLog>& logs, const Scenario& scenario,
                          const std::string& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("write_trajectory_svg: cannot write " + path);
  const double mx = (kTrajW - scenario.map.width * kScale) / 2.0;
  const double my = (kTrajH - scenario.map.height * kScale) / 2.0;
  const auto X = [&](double wx) { return mx + wx * kScale; };
  const auto Y = [&](double wy) { return kTrajH - my - wy * kScale; };

  f << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kTrajW << "\" height=\""
    << kTrajH << "\">\n";
  f << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  f << "<rect x=\"" << fmt(X(0)) << "\" y=\"" << fmt(Y(scenario.map.height)) << "\" width=\""
    << fmt(scenario.map.width * kScale) << "\" height=\"" << fmt(scenario.map.height * kScale)
    << "\" fill=\"none\" stroke=\"black\" stroke-width=\"2\"/>\n";
  for (const auto& o : scenario.map.obstacles) {
    f << "<rect x=\"" << fmt(X(o.x)) << "\" y=\"" << fmt(Y(o.y + o.h)) << "\" width=\""
      << fmt(o.w * kScale) << "\" height=\"" << fmt(o.h * kScale)
      << "\" fill=\"#c8c8c8\" stroke=\"#555555\"/>\n";
  }

  // pedestrian reference path, sampled over one lap
  f << "<polyline fill=\"none\" stroke=\"#999999\" stroke-dasharray=\"6,4\" points=\"";
  const int samples = 400;
  const double lap_t = scenario.path.lap_length() / std::max(scenario.path.speed(), 1e-9);
  for (int i = 0; i <= samples; ++i) {
    const double t = std::min(lap_t, scenario.path.duration()) * i / samples;
    const Vec2 p = scenario.path.position_clamped(t).position;
    f << fmt(X(p.x)) << ',' << fmt(Y(p.y)) << ' ';
  }
  f << "\"/>\n";

  for (std::size_t i = 0; i < logs.size(); ++i) {
    f << "<polyline fill=\"none\" stroke=\"" << episode_color(static_cast<int>(i))
      << "\" stroke-width=\"1.5\" points=\"";
    for (const auto& r : logs[i].rows) f << fmt(X(r.x_r)) << ',' << fmt(Y(r.y_r)) << ' ';
    f << "\"/>\n";
  }
  f << "<text x=\"10\" y=\"20\" font-size=\"14\">robot trajectories (grid "
    << scenario.map.width << "x" << scenario.map.height << " m)</text>\n";
  f << "</svg>\n";
}

void write_timeseries_svg(const std::vector<EpisodeLog>& logs,
                          const std::function<double(const LogRow&)>& value,
                          const std::string& label, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("write_timeseries_svg: cannot write " + path);
  const int W = 900, H = 300;
  const double ml = 60, mr = 15, mt = 15, mb = 35;
  double t_max = 0.0;
  double v_min = std::numeric_limits<double>::infinity();
  double v_max = -std::numeric_limits<double>::infinity();
  for (const auto& log : logs) {
    for (const auto& r : log.rows) {
      t_max = std::max(t_max, r.t);
      v_min = std::min(v_min, value(r));
      v_max = std::max(v_max, value(r));
    }
  }
  if (!(t_max > 0.0)) t_max = 1.0;
  if (!(v_max > v_min)) {
    v_max = v_min + 1.0;
    v_min -= 1.0;
  }
  const double pad = 0.05 * (v_max - v_min);
  v_min -= pad;
  v_max += pad;
  const auto X = [&](double t) { return ml + (W - ml - mr) * t / t_max; };
  const auto Y = [&](double v) { return H - mb - (H - mt - mb) * (v - v_min) / (v_max - v_min); };

  f << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
    << "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  f << "<line x1=\"" << fmt(ml) << "\" y1=\"" << fmt(H - mb) << "\" x2=\"" << fmt(W - mr)
    << "\" y2=\"" << fmt(H - mb) << "\" stroke=\"black\"/>\n";
  f << "<line x1=\"" << fmt(ml) << "\" y1=\"" << fmt(mt) << "\" x2=\"" << fmt(ml) << "\" y2=\""
    << fmt(H - mb) << "\" stroke=\"black\"/>\n";
  for (std::size_t i = 0; i < logs.size(); ++i) {
    f << "<polyline fill=\"none\" stroke=\"" << episode_color(static_cast<int>(i))
      << "\" stroke-width=\"1\" points=\"";
    for (const auto& r : logs[i].rows) f << fmt(X(r.t)) << ',' << fmt(Y(value(r))) << ' ';
    f << "\"/>\n";
  }
  f << "<text x=\"5\" y=\"" << fmt(mt + 10) << "\" font-size=\"12\">" << fmt(v_max + pad)
    << "</text>\n";
  f << "<text x=\"5\" y=\"" << fmt(H - mb) << "\" font-size=\"12\">" << fmt(v_min - pad)
    << "</text>\n";
  f << "<text x=\"" << fmt(W / 2.0) << "\" y=\"" << fmt(H - 8.0) << "\" font-size=\"13\">"
    << label << " vs t [s]</text>\n";
  f << "</svg>\n";
}

void render_outputs(const std::vector<EpisodeLog>& logs, const Scenario& scenario,
                    const std::string& out_dir) {
  namespace fs = std::filesystem;
  fs::create_directories(fs::path(out_dir) / "episodes");
  fs::create_directories(fs::path(out_dir) / "plots");
  char name[64];
  for (std::size_t i = 0; i < logs.size(); ++i) {
    std::snprintf(name, sizeof(name), "ep%03zu.csv", i);
    write_episode_csv(logs[i], (fs::path(out_dir) / "episodes" / name).string());
  }
  {
    std::ofstream mf(fs::path(out_dir) / "metrics.json");
    mf << metrics_to_json(compute_metrics(logs));
  }
  const fs::path plots = fs::path(out_dir) / "plots";
  write_trajectory_svg(logs, scenario, (plots / "trajectory.svg").string());
  write_timeseries_svg(logs, [](const LogRow& r) { return r.v_r; }, "v_r [m/s]",
                       (plots / "v_r.svg").string());
  write_timeseries_svg(logs, [](const LogRow& r) { return r.omega_r; }, "omega_r [rad/s]",
                       (plots / "omega_r.svg").string());
  write_timeseries_svg(logs, [](const LogRow& r) { return r.x_box; }, "x_box [px]",
                       (plots / "x_box.svg").string());
  write_timeseries_svg(logs, [](const LogRow& r) { return r.d_ped; }, "d_ped [m]",
                       (plots / "d_ped.svg").string());
}

}  // namespace evnav
