#include "evnav/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#include "json.hpp"

namespace evnav {

QuantityStats compute_stats(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("compute_stats: no values");
  QuantityStats s;
  const double n = static_cast<double>(values.size());
  double sum = 0.0;
  for (double v : values) sum += v;
  s.mean = sum / n;
  double var = 0.0;
  for (double v : values) var += (v - s.mean) * (v - s.mean);
  s.std_dev = std::sqrt(var / n);
  std::sort(values.begin(), values.end());
  s.min = values.front();
  s.max = values.back();
  const std::size_t mid = values.size() / 2;
  s.median = values.size() % 2 == 1 ? values[mid] : 0.5 * (values[mid - 1] + values[mid]);
  return s;
}

MetricsTable compute_metrics(const std::vector<EpisodeLog>& logs) {
  std::vector<double> v, w, x, d;
  for (const auto& log : logs) {
    for (const auto& r : log.rows) {
      v.push_back(r.v_r);
      w.push_back(r.omega_r);
      x.push_back(r.x_box);
      d.push_back(r.d_ped);
    }
  }
  if (v.empty()) throw std::invalid_argument("compute_metrics: no rows");
  MetricsTable m;
  m.rows = v.size();
  m.v_r = compute_stats(std::move(v));
  m.omega_r = compute_stats(std::move(w));
  m.x_box = compute_stats(std::move(x));
  m.d_ped = compute_stats(std::move(d));
  return m;
}

namespace {

nlohmann::json stats_to_json(const QuantityStats& s) {
  return {{"mean", s.mean}, {"median", s.median}, {"std_dev", s.std_dev}, {"min", s.min},
          {"max", s.max}};
}

QuantityStats stats_from_json(const nlohmann::json& j) {
  return {j.at("mean").get<double>(), j.at("median").get<double>(),
          j.at("std_dev").get<double>(), j.at("min").get<double>(), j.at("max").get<double>()};
}

}  // namespace

std::string metrics_to_json(const MetricsTable& m) {
  nlohmann::json j;
  j["rows"] = m.rows;
  j["v_r"] = stats_to_json(m.v_r);
  j["omega_r"] = stats_to_json(m.omega_r);
  j["x_box"] = stats_to_json(m.x_box);
  j["d_ped"] = stats_to_json(m.d_ped);
  return j.dump(2) + "\n";
}

MetricsTable metrics_from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  MetricsTable m;
  m.rows = j.at("rows").get<std::size_t>();
  m.v_r = stats_from_json(j.at("v_r"));
  m.omega_r = stats_from_json(j.at("omega_r"));
  m.x_box = stats_from_json(j.at("x_box"));
  m.d_ped = stats_from_json(j.at("d_ped"));
  return m;
}

void print_metrics(std::ostream& os, const MetricsTable& m) {
  char line[160];
  os << "            v_r [m/s]  omega_r [rad/s]  x_box [px]   d_ped [m]\n";
  const auto row = [&](const char* name, double a, double b, double c, double d) {
    std::snprintf(line, sizeof(line), "%-10s %10.4f  %14.4f  %10.4f  %10.4f\n", name, a, b, c, d);
    os << line;
  };
  row("Mean", m.v_r.mean, m.omega_r.mean, m.x_box.mean, m.d_ped.mean);
  row("Median", m.v_r.median, m.omega_r.median, m.x_box.median, m.d_ped.median);
  row("Std.Dev.", m.v_r.std_dev, m.omega_r.std_dev, m.x_box.std_dev, m.d_ped.std_dev);
  row("Min", m.v_r.min, m.omega_r.min, m.x_box.min, m.d_ped.min);
  row("Max", m.v_r.max, m.omega_r.max, m.x_box.max, m.d_ped.max);
  os << "rows: " << m.rows << "\n";
}

}  // namespace evnav
