#include "evnav/camera.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace evnav {

namespace {

constexpr double kMinDepth = 1e-3;

// World point in camera coordinates: X right, Y down, Z forward.
Point3 world_to_camera(const CameraModel& cam, const RobotPose& robot, const Point3& w) {
  const double c = std::cos(robot.theta);
  const double s = std::sin(robot.theta);
  const double dx = w.x - robot.x;
  const double dy = w.y - robot.y;
  const double bx = c * dx + s * dy - cam.body_offset.x;   // body forward
  const double by = -s * dx + c * dy - cam.body_offset.y;  // body left
  return {-by, cam.mount_height - w.z, bx};
}

}  // namespace

std::optional<PixelPoint> project_point(const CameraModel& cam, const RobotPose& robot,
                                        const Point3& world) {
  const Point3 c = world_to_camera(cam, robot, world);
  if (c.z <= kMinDepth) return std::nullopt;
  const PixelPoint p{cam.cx + cam.focal_px * c.x / c.z, cam.cy + cam.focal_px * c.y / c.z};
  if (p.u < 0.0 || p.u >= cam.width || p.v < 0.0 || p.v >= cam.height) return std::nullopt;
  return p;
}

Homography::Homography(const std::array<double, 9>& m) : m_(m) {
  if (std::abs(det()) <= 1e-12) throw std::invalid_argument("Homography: singular matrix");
  if (std::abs(m_[8]) <= 1e-12) throw std::invalid_argument("Homography: cannot normalize, m[8] ~ 0");
  for (auto& v : m_) v /= m[8];
}

Homography Homography::translation(double dx, double dy) {
  return Homography({1, 0, dx, 0, 1, dy, 0, 0, 1});
}

double Homography::det() const {
  const auto& m = m_;
  return m[0] * (m[4] * m[8] - m[5] * m[7]) - m[1] * (m[3] * m[8] - m[5] * m[6]) +
         m[2] * (m[3] * m[7] - m[4] * m[6]);
}

Homography Homography::inverse() const {
  const auto& m = m_;
  const double d = det();
  std::array<double, 9> inv{
      (m[4] * m[8] - m[5] * m[7]) / d, (m[2] * m[7] - m[1] * m[8]) / d,
      (m[1] * m[5] - m[2] * m[4]) / d, (m[5] * m[6] - m[3] * m[8]) / d,
      (m[0] * m[8] - m[2] * m[6]) / d, (m[2] * m[3] - m[0] * m[5]) / d,
      (m[3] * m[7] - m[4] * m[6]) / d, (m[1] * m[6] - m[0] * m[7]) / d,
      (m[0] * m[4] - m[1] * m[3]) / d,
  };
  return Homography(inv);
}

PixelPoint apply_homography(const Homography& h, const PixelPoint& p) {
  const auto& m = h.coeffs();
  const double w = m[6] * p.u + m[7] * p.v + m[8];
  if (std::abs(w) < 1e-12) throw std::domain_error("apply_homography: degenerate point");
  return {(m[0] * p.u + m[1] * p.v + m[2]) / w, (m[3] * p.u + m[4] * p.v + m[5]) / w};
}

void OccupancyImage::set_row(int y, int begin, int end) {
  begin = std::clamp(begin, 0, width_);
  end = std::clamp(end, begin, width_);
  rows_[y] = {begin, end};
}

int OccupancyImage::active_pixels() const {
  int n = 0;
  for (const auto& r : rows_) n += r.end - r.begin;
  return n;
}

void OccupancyImage::clear() {
  std::fill(rows_.begin(), rows_.end(), Run{});
}

OccupancyImage render_silhouette(const CameraModel& cam, const RobotPose& robot,
                                 const Vec2& pedestrian, double ped_width, double ped_height) {
  OccupancyImage img(cam.width, cam.height);
  // Billboard perpendicular to the horizontal sight line.
  const double c = std::cos(robot.theta);
  const double s = std::sin(robot.theta);
  const Vec2 cam_pos{robot.x + c * cam.body_offset.x - s * cam.body_offset.y,
                     robot.y + s * cam.body_offset.x + c * cam.body_offset.y};
  const Vec2 to_ped = pedestrian - cam_pos;
  const double dist = to_ped.norm();
  if (dist < 1e-6) return img;
  const Vec2 perp{-to_ped.y / dist, to_ped.x / dist};
  const Vec2 left = pedestrian + perp * (ped_width / 2.0);
  const Vec2 right = pedestrian - perp * (ped_width / 2.0);

  // Project the four corners without the image-bounds rejection so partially
  // visible silhouettes still rasterize.
  std::array<Point3, 4> corners{{{left.x, left.y, 0.0},
                                 {right.x, right.y, 0.0},
                                 {right.x, right.y, ped_height},
                                 {left.x, left.y, ped_height}}};
  std::array<PixelPoint, 4> px;
  for (int i = 0; i < 4; ++i) {
    const Point3 pc = world_to_camera(cam, robot, corners[i]);
    if (pc.z <= 0.05) return img;  // near-plane clipping not needed at tracking distances
    px[i] = {cam.cx + cam.focal_px * pc.x / pc.z, cam.cy + cam.focal_px * pc.y / pc.z};
  }

  // Convex-quad scanline fill over pixel centers.
  double v_min = px[0].v, v_max = px[0].v;
  for (const auto& p : px) {
    v_min = std::min(v_min, p.v);
    v_max = std::max(v_max, p.v);
  }
  const int y0 = std::max(0, static_cast<int>(std::ceil(v_min - 0.5)));
  const int y1 = std::min(cam.height - 1, static_cast<int>(std::floor(v_max - 0.5)));
  for (int y = y0; y <= y1; ++y) {
    const double vy = y + 0.5;
    double x_lo = std::numeric_limits<double>::infinity();
    double x_hi = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < 4; ++i) {
      const PixelPoint& a = px[i];
      const PixelPoint& b = px[(i + 1) % 4];
      if ((a.v <= vy && b.v >= vy) || (b.v <= vy && a.v >= vy)) {
        if (std::abs(b.v - a.v) < 1e-12) {
          x_lo = std::min({x_lo, a.u, b.u});
          x_hi = std::max({x_hi, a.u, b.u});
        } else {
          const double t = (vy - a.v) / (b.v - a.v);
          const double x = a.u + t * (b.u - a.u);
          x_lo = std::min(x_lo, x);
          x_hi = std::max(x_hi, x);
        }
      }
    }
    if (x_lo > x_hi) continue;
    const int begin = std::max(0, static_cast<int>(std::ceil(x_lo - 0.5)));
    const int end = std::min(cam.width, static_cast<int>(std::floor(x_hi - 0.5)) + 1);
    if (begin < end) img.set_row(y, begin, end);
  }
  return img;
}

std::optional<double> estimate_depth(const Homography& event_to_depth, const PixelPoint& center,
                                     double true_range, double sigma, Rng& rng, int width,
                                     int height) {
  const PixelPoint mapped = apply_homography(event_to_depth, center);
  if (mapped.u < 0.0 || mapped.u >= width || mapped.v < 0.0 || mapped.v >= height) {
    return std::nullopt;
  }
  double range = true_range;
  if (sigma > 0.0) {
    std::normal_distribution<double> noise(0.0, sigma);
    range += noise(rng);
  }
  return std::max(0.1, range);
}

}  // namespace evnav
