#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <variant>

namespace tetot {

using MetaValue = std::variant<std::int64_t, double, bool, std::string>;

/// Named scalar result plus the settings that produced it.
/// metric_name is one of "tetot", "tetot_approx", "entropy", "accuracy".
struct MetricReport {
  std::string metric_name;
  double value = 0.0;
  std::map<std::string, MetaValue> meta;
};

}  // namespace tetot
