#pragma once

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "evnav/events.hpp"
#include "evnav/geometry.hpp"
#include "evnav/kinematics.hpp"
#include "evnav/rng.hpp"

namespace evnav {

// Pinhole camera rigidly mounted on the robot body, looking along +x of the
// body frame from mount_height above the ground. Image x grows to the right,
// image y grows downward.
struct CameraModel {
  int width{kDavisWidth};
  int height{kDavisHeight};
  double focal_px{140.0};
  double cx{173.0};
  double cy{130.0};
  double mount_height{0.8};
  Vec2 body_offset{0.0, 0.0};  // camera position in the body frame
};

struct PixelPoint {
  double u{0.0};
  double v{0.0};
};

// Project a world point; nullopt when the point is behind the camera or the
// projection falls outside the image.
std::optional<PixelPoint> project_point(const CameraModel& cam, const RobotPose& robot,
                                        const Point3& world);

// 3x3 pixel-to-pixel projective map, stored row-major with m[8] normalized to 1.
class Homography {
 public:
  Homography() : m_{1, 0, 0, 0, 1, 0, 0, 0, 1} {}
  // Normalizes so m[8] == 1 and rejects singular matrices (|det| <= 1e-12).
  explicit Homography(const std::array<double, 9>& m);

  static Homography identity() { return Homography{}; }
  static Homography translation(double dx, double dy);

  Homography inverse() const;
  const std::array<double, 9>& coeffs() const { return m_; }
  double det() const;

 private:
  std::array<double, 9> m_;
};

// Homogeneous multiply + perspective divide; throws std::domain_error when the
// mapped w coordinate is degenerate (|w| < 1e-12).
PixelPoint apply_homography(const Homography& h, const PixelPoint& p);

// Binary occupancy image stored as one [begin,end) column run per row; the
// silhouette projection is convex so a single run per row is exact.
class OccupancyImage {
 public:
  struct Run {
    int begin{0};
    int end{0};  // half open; begin==end means empty
  };

  OccupancyImage(int width = kDavisWidth, int height = kDavisHeight)
      : width_(width), height_(height), rows_(height) {}

  int width() const { return width_; }
  int height() const { return height_; }
  bool at(int x, int y) const {
    const Run& r = rows_[y];
    return x >= r.begin && x < r.end;
  }
  void set_row(int y, int begin, int end);
  const Run& row(int y) const { return rows_[y]; }
  int active_pixels() const;
  bool empty() const { return active_pixels() == 0; }
  void clear();

 private:
  int width_;
  int height_;
  std::vector<Run> rows_;
};

// Rasterize the pedestrian as an upright rectangle (width x height meters)
// standing on the ground, oriented perpendicular to the camera-pedestrian
// sight line. A pixel is covered when its center falls inside the projected
// quad. Deterministic; out-of-view pedestrians give an empty image.
OccupancyImage render_silhouette(const CameraModel& cam, const RobotPose& robot,
                                 const Vec2& pedestrian, double ped_width = 0.5,
                                 double ped_height = 1.7);

// Simulated depth lookup: maps the detection center into the depth frame via
// the extrinsic homography, and returns the true range corrupted by N(0,
// sigma^2), clamped to >= 0.1 m. nullopt when the mapped pixel leaves the
// frame (no measurement; feeds the lost-feature timer).
std::optional<double> estimate_depth(const Homography& event_to_depth, const PixelPoint& center,
                                     double true_range, double sigma, Rng& rng,
                                     int width = kDavisWidth, int height = kDavisHeight);

}  // namespace evnav
