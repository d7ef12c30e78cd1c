#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "evnav/episode.hpp"

namespace evnav {

struct QuantityStats {
  double mean{0.0};
  double median{0.0};
  double std_dev{0.0};  // population convention
  double min{0.0};
  double max{0.0};
};

// Pooled statistics over every logged control tick of the provided episodes,
// for the four quantities reported by the evaluation tables.
struct MetricsTable {
  std::size_t rows{0};
  QuantityStats v_r;
  QuantityStats omega_r;
  QuantityStats x_box;
  QuantityStats d_ped;
};

QuantityStats compute_stats(std::vector<double> values);  // throws on empty
MetricsTable compute_metrics(const std::vector<EpisodeLog>& logs);

std::string metrics_to_json(const MetricsTable& m);
MetricsTable metrics_from_json(const std::string& text);

void print_metrics(std::ostream& os, const MetricsTable& m);

}  // namespace evnav
