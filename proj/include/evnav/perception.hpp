#pragma once

#include <array>
#include <optional>
#include <string>

#include "evnav/camera.hpp"
#include "evnav/events.hpp"
#include "evnav/kinematics.hpp"
#include "evnav/world.hpp"

namespace evnav {

struct BoundingBox {
  double cx{0.0};  // center column [px]
  double cy{0.0};  // center row [px]
  int width{1};
  int height{1};
  double confidence{0.0};  // component area / box area

  double x_min() const { return cx - (width - 1) / 2.0; }
  double y_min() const { return cy - (height - 1) / 2.0; }
};

// Stand-in for the learned detector: binarize the SAE composite at
// `threshold`, label 4-connected components, and return the bounding box of
// the largest component with area >= min_area. nullopt when nothing qualifies.
std::optional<BoundingBox> detect_pedestrian_sae(const SaeFrame& frame, int threshold = 50,
                                                 int min_area = 15);

// Ground-truth detector: bounding box of the rasterized silhouette.
std::optional<BoundingBox> oracle_detect(const CameraModel& cam, const RobotPose& robot,
                                         const Vec2& pedestrian, double ped_width = 0.5,
                                         double ped_height = 1.7);

// The 6-D MDP state [v_r, omega_r, x_box, d_ped, d_obs, theta_obs].
struct StateVector {
  double v{0.0};
  double omega{0.0};
  double x_box{0.0};
  double d_ped{0.0};
  double d_obs{0.0};
  double theta_obs{0.0};

  std::array<double, 6> to_array() const { return {v, omega, x_box, d_ped, d_obs, theta_obs}; }
  static StateVector from_array(const std::array<double, 6>& a) {
    return {a[0], a[1], a[2], a[3], a[4], a[5]};
  }
};

// Fixed diagonal scaling for network inputs: x_box/346, d_ped/3, d_obs/5,
// theta_obs/pi; velocities pass through.
StateVector normalize_state(const StateVector& raw);
StateVector denormalize_state(const StateVector& normalized);

// Assemble the state from the current command and sensor values. x_box and
// d_ped are the held last-seen values when the detector has nothing.
StateVector build_state(const VelocityCommand& cmd, double x_box, double d_ped,
                        const LidarScan& scan, bool normalize);
StateVector build_state(const VelocityCommand& cmd, double x_box, double d_ped, double d_obs,
                        double theta_obs, bool normalize);

// Tracks how long the pedestrian has been out of detection.
class VisibilityTracker {
 public:
  // `now` must be monotone; detection resets the timer, a miss accumulates
  // now - last detection time.
  void update(bool detected, double now);
  double lost_duration() const { return lost_; }
  double last_detection_time() const { return last_seen_; }

 private:
  double last_seen_{0.0};
  double lost_{0.0};
};

// Debug overlay: SAE composite with the box border drawn at full intensity.
void write_detection_overlay(const SaeFrame& frame, const BoundingBox& box,
                             const std::string& path);

}  // namespace evnav
