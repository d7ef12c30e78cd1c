#include "evnav/world.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace evnav {

PedestrianPath::PedestrianPath(Vec2 center, double a, double b, double speed,
                               double duration)
    : center_(center), a_(a), b_(b), speed_(speed), duration_(duration) {
  if (a <= 0.0 || b <= 0.0) throw std::invalid_argument("lemniscate: a and b must be positive");
  if (speed < 0.0) throw std::invalid_argument("lemniscate: speed must be non-negative");
  if (duration <= 0.0) throw std::invalid_argument("lemniscate: duration must be positive");
  cumulative_.resize(kTableSize + 1);
  cumulative_[0] = 0.0;
  Vec2 prev = point_at(0.0);
  for (int i = 1; i <= kTableSize; ++i) {
    const double u = 2.0 * M_PI * i / kTableSize;
    const Vec2 p = point_at(u);
    cumulative_[i] = cumulative_[i - 1] + (p - prev).norm();
    prev = p;
  }
}

Vec2 PedestrianPath::point_at(double u) const {
  const double s = std::sin(u);
  const double c = std::cos(u);
  return {center_.x + a_ * s, center_.y + b_ * s * c};
}

Vec2 PedestrianPath::tangent_at(double u) const {
  // dP/du = (a cos u, b cos 2u)
  return {a_ * std::cos(u), b_ * std::cos(2.0 * u)};
}

PathPoint PedestrianPath::at_arclength(double s) const {
  const double total = cumulative_.back();
  s = std::fmod(s, total);
  if (s < 0.0) s += total;
  const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), s);
  int hi = static_cast<int>(it - cumulative_.begin());
  hi = std::clamp(hi, 1, kTableSize);
  const int lo = hi - 1;
  const double seg = cumulative_[hi] - cumulative_[lo];
  const double frac = seg > 0.0 ? (s - cumulative_[lo]) / seg : 0.0;
  const double u = 2.0 * M_PI * (lo + frac) / kTableSize;
  const Vec2 tan = tangent_at(u);
  return {point_at(u), std::atan2(tan.y, tan.x)};
}

std::optional<PathPoint> PedestrianPath::position(double t) const {
  if (t < 0.0 || t > duration_) return std::nullopt;
  return at_arclength(speed_ * t);
}

PathPoint PedestrianPath::position_clamped(double t) const {
  return at_arclength(speed_ * std::clamp(t, 0.0, duration_));
}

namespace {

// Distance along the ray at which it leaves [0,w]x[0,h]; origin assumed inside.
double ray_box_exit(const Vec2& o, const Vec2& d, double w, double h) {
  double t = std::numeric_limits<double>::infinity();
  if (d.x > 0.0) t = std::min(t, (w - o.x) / d.x);
  if (d.x < 0.0) t = std::min(t, (0.0 - o.x) / d.x);
  if (d.y > 0.0) t = std::min(t, (h - o.y) / d.y);
  if (d.y < 0.0) t = std::min(t, (0.0 - o.y) / d.y);
  return t;
}

// Slab test: entry distance of the ray into the box, or infinity.
double ray_box_enter(const Vec2& o, const Vec2& d, const Rect& r) {
  double t0 = 0.0;
  double t1 = std::numeric_limits<double>::infinity();
  const double inv_x = 1.0 / d.x;  // IEEE inf handles axis-parallel rays
  double tx0 = (r.x - o.x) * inv_x;
  double tx1 = (r.x + r.w - o.x) * inv_x;
  if (tx0 > tx1) std::swap(tx0, tx1);
  if (d.x != 0.0) {
    t0 = std::max(t0, tx0);
    t1 = std::min(t1, tx1);
  } else if (o.x < r.x || o.x > r.x + r.w) {
    return std::numeric_limits<double>::infinity();
  }
  const double inv_y = 1.0 / d.y;
  double ty0 = (r.y - o.y) * inv_y;
  double ty1 = (r.y + r.h - o.y) * inv_y;
  if (ty0 > ty1) std::swap(ty0, ty1);
  if (d.y != 0.0) {
    t0 = std::max(t0, ty0);
    t1 = std::min(t1, ty1);
  } else if (o.y < r.y || o.y > r.y + r.h) {
    return std::numeric_limits<double>::infinity();
  }
  if (t0 > t1) return std::numeric_limits<double>::infinity();
  return t0;
}

}  // namespace

LidarScan lidar_scan(const WorldMap& map, const RobotPose& pose, const LidarConfig& cfg) {
  LidarScan scan;
  scan.max_range = cfg.max_range;
  scan.ranges.resize(cfg.beam_count);
  scan.bearings.resize(cfg.beam_count);
  const Vec2 origin{pose.x, pose.y};
  const bool blocked = !map.in_free_space(origin);
  double best = std::numeric_limits<double>::infinity();
  int best_i = 0;
  for (int i = 0; i < cfg.beam_count; ++i) {
    const double bearing =
        cfg.beam_count > 1 ? -cfg.span / 2.0 + cfg.span * i / (cfg.beam_count - 1) : 0.0;
    scan.bearings[i] = bearing;
    if (blocked) {
      scan.ranges[i] = 0.0;
      continue;
    }
    const double ang = pose.theta + bearing;
    const Vec2 dir{std::cos(ang), std::sin(ang)};
    double r = ray_box_exit(origin, dir, map.width, map.height);
    for (const auto& box : map.obstacles) {
      r = std::min(r, ray_box_enter(origin, dir, box));
    }
    r = std::min(r, cfg.max_range);
    scan.ranges[i] = r;
    if (r < best) {
      best = r;
      best_i = i;
    }
  }
  if (blocked) {
    scan.min_range = 0.0;
    scan.min_bearing = 0.0;
  } else {
    scan.min_range = scan.ranges[best_i];
    scan.min_bearing = scan.bearings[best_i];
  }
  return scan;
}

const char* to_string(TerminationStatus s) {
  switch (s) {
    case TerminationStatus::Running: return "Running";
    case TerminationStatus::GoalReached: return "GoalReached";
    case TerminationStatus::FeatureLost: return "FeatureLost";
    case TerminationStatus::DistanceBound: return "DistanceBound";
    case TerminationStatus::ObstacleTooClose: return "ObstacleTooClose";
  }
  return "Unknown";
}

std::optional<TerminationStatus> termination_from_string(const std::string& s) {
  if (s == "Running") return TerminationStatus::Running;
  if (s == "GoalReached") return TerminationStatus::GoalReached;
  if (s == "FeatureLost") return TerminationStatus::FeatureLost;
  if (s == "DistanceBound") return TerminationStatus::DistanceBound;
  if (s == "ObstacleTooClose") return TerminationStatus::ObstacleTooClose;
  return std::nullopt;
}

TerminationStatus check_termination(const TerminationInputs& in) {
  if (in.ped_elapsed >= in.ped_duration) return TerminationStatus::GoalReached;
  if (in.lost_duration > in.feature_lost_timeout) return TerminationStatus::FeatureLost;
  if (in.d_ped > in.d_ped_max || in.d_ped < in.d_ped_min) return TerminationStatus::DistanceBound;
  if (in.d_obs < in.d_obs_min) return TerminationStatus::ObstacleTooClose;
  return TerminationStatus::Running;
}

namespace {

Rect rect_from_json(const nlohmann::json& j) {
  return {j.at("x").get<double>(), j.at("y").get<double>(), j.at("w").get<double>(),
          j.at("h").get<double>()};
}

void validate(const Scenario& sc) {
  for (const auto& r : sc.map.obstacles) {
    if (r.w <= 0.0 || r.h <= 0.0) throw std::invalid_argument("scenario: obstacle with non-positive size");
    if (r.x < 0.0 || r.y < 0.0 || r.x + r.w > sc.map.width || r.y + r.h > sc.map.height) {
      throw std::invalid_argument("scenario: obstacle outside map bounds");
    }
  }
  if (!sc.map.in_free_space({sc.robot_spawn.x, sc.robot_spawn.y})) {
    throw std::invalid_argument("scenario: robot_spawn inside an obstacle or outside the map");
  }
}

}  // namespace

Scenario Scenario::from_json_text(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  Scenario sc;
  sc.map.width = j.at("width").get<double>();
  sc.map.height = j.at("height").get<double>();
  sc.map.obstacles.clear();
  if (j.contains("obstacles")) {
    for (const auto& o : j.at("obstacles")) sc.map.obstacles.push_back(rect_from_json(o));
  }
  const auto& p = j.at("path");
  const std::string type = p.at("type").get<std::string>();
  if (type != "lemniscate") {
    throw std::invalid_argument("scenario: unsupported path type '" + type + "'");
  }
  sc.path = PedestrianPath({p.at("cx").get<double>(), p.at("cy").get<double>()},
                           p.at("a").get<double>(), p.at("b").get<double>(),
                           p.value("speed", 0.7), p.value("duration", 100.0));
  const auto& s = j.at("robot_spawn");
  sc.robot_spawn = {s.at("x").get<double>(), s.at("y").get<double>(),
                    wrap_angle(s.at("theta").get<double>())};
  validate(sc);
  return sc;
}

Scenario Scenario::load(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("scenario: cannot open " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return from_json_text(ss.str());
}

std::string Scenario::to_json_text() const {
  nlohmann::json j;
  j["width"] = map.width;
  j["height"] = map.height;
  j["obstacles"] = nlohmann::json::array();
  for (const auto& r : map.obstacles) {
    j["obstacles"].push_back({{"x", r.x}, {"y", r.y}, {"w", r.w}, {"h", r.h}});
  }
  j["path"] = {{"type", "lemniscate"}, {"cx", path.center().x}, {"cy", path.center().y},
               {"a", path.a()},        {"b", path.b()},         {"speed", path.speed()},
               {"duration", path.duration()}};
  j["robot_spawn"] = {{"x", robot_spawn.x}, {"y", robot_spawn.y}, {"theta", robot_spawn.theta}};
  return j.dump(2) + "\n";
}

void Scenario::save(const std::string& path) const {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("scenario: cannot write " + path);
  f << to_json_text();
}

Scenario default_scenario() {
  Scenario sc;
  sc.map.width = 21.0;
  sc.map.height = 12.0;
  // Two blocks inside the lemniscate lobes, two hugging the long walls.
  sc.map.obstacles = {
      {4.5, 5.0, 2.0, 2.0},
      {14.5, 5.0, 2.0, 2.0},
      {9.5, 0.0, 2.0, 1.0},
      {9.5, 11.0, 2.0, 1.0},
  };
  sc.path = PedestrianPath({10.5, 6.0}, 8.0, 8.0, 0.7, 100.0);
  // 2 m behind the path start along the initial walking direction (45 deg).
  const double c = std::sqrt(0.5);
  sc.robot_spawn = {10.5 - 2.0 * c, 6.0 - 2.0 * c, std::atan2(c, c)};
  return sc;
}

}  // namespace evnav
