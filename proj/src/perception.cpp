#include "evnav/perception.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace evnav {

std::optional<BoundingBox> detect_pedestrian_sae(const SaeFrame& frame, int threshold,
                                                 int min_area) {
  const int w = frame.width;
  const int h = frame.height;
  const auto& img = frame.composite;
  std::vector<std::uint8_t> visited(static_cast<std::size_t>(w) * h, 0);
  std::vector<int> stack;

  int best_area = 0;
  int best_x0 = 0, best_x1 = 0, best_y0 = 0, best_y1 = 0;
  for (int sy = 0; sy < h; ++sy) {
    for (int sx = 0; sx < w; ++sx) {
      const std::size_t sidx = static_cast<std::size_t>(sy) * w + sx;
      if (visited[sidx] || img[sidx] < threshold) continue;
      // flood one 4-connected component
      int area = 0;
      int x0 = sx, x1 = sx, y0 = sy, y1 = sy;
      visited[sidx] = 1;
      stack.push_back(static_cast<int>(sidx));
      while (!stack.empty()) {
        const int idx = stack.back();
        stack.pop_back();
        const int x = idx % w;
        const int y = idx / w;
        ++area;
        x0 = std::min(x0, x);
        x1 = std::max(x1, x);
        y0 = std::min(y0, y);
        y1 = std::max(y1, y);
        const int nbr[4][2] = {{x - 1, y}, {x + 1, y}, {x, y - 1}, {x, y + 1}};
        for (const auto& n : nbr) {
          if (n[0] < 0 || n[0] >= w || n[1] < 0 || n[1] >= h) continue;
          const std::size_t ni = static_cast<std::size_t>(n[1]) * w + n[0];
          if (!visited[ni] && img[ni] >= threshold) {
            visited[ni] = 1;
            stack.push_back(static_cast<int>(ni));
          }
        }
      }
      if (area >= min_area && area > best_area) {
        best_area = area;
        best_x0 = x0;
        best_x1 = x1;
        best_y0 = y0;
        best_y1 = y1;
      }
    }
  }
  if (best_area == 0) return std::nullopt;
  BoundingBox box;
  box.width = best_x1 - best_x0 + 1;
  box.height = best_y1 - best_y0 + 1;
  box.cx = (best_x0 + best_x1) / 2.0;
  box.cy = (best_y0 + best_y1) / 2.0;
  box.confidence = static_cast<double>(best_area) / (static_cast<double>(box.width) * box.height);
  return box;
}

std::optional<BoundingBox> oracle_detect(const CameraModel& cam, const RobotPose& robot,
                                         const Vec2& pedestrian, double ped_width,
                                         double ped_height) {
  const OccupancyImage occ = render_silhouette(cam, robot, pedestrian, ped_width, ped_height);
  int x0 = occ.width(), x1 = -1, y0 = occ.height(), y1 = -1;
  for (int y = 0; y < occ.height(); ++y) {
    const auto& run = occ.row(y);
    if (run.begin >= run.end) continue;
    x0 = std::min(x0, run.begin);
    x1 = std::max(x1, run.end - 1);
    y0 = std::min(y0, y);
    y1 = std::max(y1, y);
  }
  if (x1 < 0) return std::nullopt;
  BoundingBox box;
  box.width = x1 - x0 + 1;
  box.height = y1 - y0 + 1;
  box.cx = (x0 + x1) / 2.0;
  box.cy = (y0 + y1) / 2.0;
  box.confidence = 1.0;
  return box;
}

namespace {
constexpr double kXBoxScale = 1.0 / 346.0;
constexpr double kDPedScale = 1.0 / 3.0;
constexpr double kDObsScale = 1.0 / 5.0;
const double kThetaScale = 1.0 / M_PI;
}  // namespace

StateVector normalize_state(const StateVector& raw) {
  return {raw.v,
          raw.omega,
          raw.x_box * kXBoxScale,
          raw.d_ped * kDPedScale,
          raw.d_obs * kDObsScale,
          raw.theta_obs * kThetaScale};
}

StateVector denormalize_state(const StateVector& n) {
  return {n.v,
          n.omega,
          n.x_box / kXBoxScale,
          n.d_ped / kDPedScale,
          n.d_obs / kDObsScale,
          n.theta_obs / kThetaScale};
}

StateVector build_state(const VelocityCommand& cmd, double x_box, double d_ped, double d_obs,
                        double theta_obs, bool normalize) {
  const StateVector raw{cmd.v, cmd.omega, x_box, d_ped, d_obs, theta_obs};
  return normalize ? normalize_state(raw) : raw;
}

StateVector build_state(const VelocityCommand& cmd, double x_box, double d_ped,
                        const LidarScan& scan, bool normalize) {
  return build_state(cmd, x_box, d_ped, scan.d_obs(), scan.theta_obs(), normalize);
}

void VisibilityTracker::update(bool detected, double now) {
  if (detected) {
    last_seen_ = now;
    lost_ = 0.0;
  } else {
    lost_ = now - last_seen_;
  }
}

void write_detection_overlay(const SaeFrame& frame, const BoundingBox& box,
                             const std::string& path) {
  std::vector<std::uint8_t> img = frame.composite;
  const int w = frame.width;
  const int x0 = std::clamp(static_cast<int>(std::lround(box.x_min())), 0, w - 1);
  const int y0 = std::clamp(static_cast<int>(std::lround(box.y_min())), 0, frame.height - 1);
  const int x1 = std::clamp(x0 + box.width - 1, 0, w - 1);
  const int y1 = std::clamp(y0 + box.height - 1, 0, frame.height - 1);
  for (int x = x0; x <= x1; ++x) {
    img[static_cast<std::size_t>(y0) * w + x] = 255;
    img[static_cast<std::size_t>(y1) * w + x] = 255;
  }
  for (int y = y0; y <= y1; ++y) {
    img[static_cast<std::size_t>(y) * w + x0] = 255;
    img[static_cast<std::size_t>(y) * w + x1] = 255;
  }
  write_pgm(img.data(), frame.width, frame.height, path);
}

}  // namespace evnav
