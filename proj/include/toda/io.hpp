#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "toda/hierarchy.hpp"

namespace toda {

using json = nlohmann::json;

// JacobiWindow <-> {"sites": N, "boundary": "periodic"|"eventually_free",
//                   "a": [...], "b": [...]}
json to_json(const JacobiWindow& J);
JacobiWindow window_from_json(const json& j);

// FlowState <-> {"J": {...}, "t": ..., "dt": ..., "steps": ...}
json to_json(const FlowState& s);
FlowState flow_state_from_json(const json& j);

struct CheckRecord {
  std::string check_name;
  json parameters;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

json to_json(const CheckRecord& r);

// 17 significant digits; round-trips doubles exactly.
std::string format_float17(double v);

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace toda
