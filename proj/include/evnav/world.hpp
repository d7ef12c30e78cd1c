#pragma once

#include <optional>
#include <string>
#include <vector>

#include "evnav/geometry.hpp"
#include "evnav/kinematics.hpp"

namespace evnav {

// Rectangular room with axis-aligned box obstacles. Room walls count as
// obstacles for raycasting.
struct WorldMap {
  double width{21.0};
  double height{12.0};
  std::vector<Rect> obstacles;

  bool inside(const Vec2& p) const {
    return p.x >= 0.0 && p.x <= width && p.y >= 0.0 && p.y <= height;
  }
  bool in_obstacle(const Vec2& p) const {
    for (const auto& r : obstacles) {
      if (r.contains(p)) return true;
    }
    return false;
  }
  bool in_free_space(const Vec2& p) const { return inside(p) && !in_obstacle(p); }
};

struct PathPoint {
  Vec2 position;
  double heading{0.0};  // walking direction [rad]
};

// Figure-eight (Gerono lemniscate) walked at constant speed:
//   P(u) = (cx + a sin u, cy + b sin u cos u),  u in [0, 2pi).
// The curve is reparameterized by arc length with a cumulative chord-length
// table (kTableSize samples, linear interpolation); position(t) advances
// s = speed * t along the curve, wrapping when the lap is complete.
class PedestrianPath {
 public:
  static constexpr int kTableSize = 2048;

  PedestrianPath(Vec2 center, double a, double b, double speed = 0.7,
                 double duration = 100.0);

  // nullopt once t leaves [0, duration] (episode-over signal).
  std::optional<PathPoint> position(double t) const;
  // Same, with t clamped into [0, duration]; used while integrating past the end.
  PathPoint position_clamped(double t) const;

  double speed() const { return speed_; }
  double duration() const { return duration_; }
  double lap_length() const { return cumulative_.back(); }
  bool finished(double t) const { return t >= duration_; }

  Vec2 center() const { return center_; }
  double a() const { return a_; }
  double b() const { return b_; }

 private:
  PathPoint at_arclength(double s) const;
  Vec2 point_at(double u) const;
  Vec2 tangent_at(double u) const;

  Vec2 center_;
  double a_;
  double b_;
  double speed_;
  double duration_;
  std::vector<double> cumulative_;  // cumulative chord length at u_i = 2pi i / kTableSize
};

struct LidarConfig {
  int beam_count{181};
  double span{M_PI};      // total angular span, centered on the heading
  double max_range{5.0};  // [m]
};

struct LidarScan {
  std::vector<double> ranges;   // [m], capped at max_range
  std::vector<double> bearings; // body-frame beam angles, CCW positive
  double max_range{5.0};
  double min_range{5.0};   // d_obs
  double min_bearing{0.0}; // theta_obs

  double d_obs() const { return min_range; }
  double theta_obs() const { return min_bearing; }
};

// Cast beam_count rays from the pose; each range is the nearest hit among the
// map walls and the obstacle boxes, capped at max_range. A pose inside an
// obstacle (or outside the map) returns all-zero ranges, which downstream
// termination reads as ObstacleTooClose.
LidarScan lidar_scan(const WorldMap& map, const RobotPose& pose, const LidarConfig& cfg);

enum class TerminationStatus {
  Running,
  GoalReached,
  FeatureLost,
  DistanceBound,
  ObstacleTooClose,
};

const char* to_string(TerminationStatus s);
std::optional<TerminationStatus> termination_from_string(const std::string& s);

// Inputs for the per-step termination decision.
struct TerminationInputs {
  double ped_elapsed{0.0};   // pedestrian clock [s]
  double ped_duration{100.0};
  double lost_duration{0.0}; // time since last detection [s]
  double d_ped{2.0};         // estimated camera-pedestrian distance [m]
  double d_obs{5.0};         // nearest lidar return [m]
  double feature_lost_timeout{4.0};
  double d_ped_max{3.0};
  double d_ped_min{1.0};
  double d_obs_min{0.5};
};

// First matching condition wins, in this order: goal, feature lost,
// distance bound, obstacle too close.
TerminationStatus check_termination(const TerminationInputs& in);

// A complete scenario: map, path, and the nominal robot spawn pose.
struct Scenario {
  WorldMap map;
  PedestrianPath path{{10.5, 6.0}, 8.0, 8.0};
  RobotPose robot_spawn;

  // Parse/serialize the scenario JSON schema:
  // {width, height, obstacles:[{x,y,w,h}], path:{type:"lemniscate",cx,cy,a,b,
  //  speed?,duration?}, robot_spawn:{x,y,theta}}.
  static Scenario from_json_text(const std::string& text);
  static Scenario load(const std::string& path);
  std::string to_json_text() const;
  void save(const std::string& path) const;
};

// The 21x12 m room used throughout: four box obstacles and a lemniscate
// fitted to the free corridor, walked at 0.7 m/s for 100 s. The robot spawns
// 2 m behind the path start, facing along it.
Scenario default_scenario();

}  // namespace evnav
