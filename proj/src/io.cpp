#include "toda/io.hpp"

#include <cstdio>
#include <fstream>

#include "toda/errors.hpp"

namespace toda {

namespace {

std::string boundary_name(Boundary b) {
  return b == Boundary::Periodic ? "periodic" : "eventually_free";
}

Boundary boundary_from_name(const std::string& s) {
  if (s == "periodic") return Boundary::Periodic;
  if (s == "eventually_free") return Boundary::EventuallyFree;
  throw config_error("boundary: expected \"periodic\" or \"eventually_free\", got \"" +
                     s + "\"");
}

}  // namespace

json to_json(const JacobiWindow& J) {
  return json{{"sites", J.sites()},
              {"boundary", boundary_name(J.boundary)},
              {"a", J.a},
              {"b", J.b}};
}

JacobiWindow window_from_json(const json& j) {
  for (const char* field : {"sites", "boundary", "a", "b"}) {
    if (!j.contains(field))
      throw config_error(std::string("operator: missing field \"") + field + "\"");
  }
  const int sites = j.at("sites").get<int>();
  const Boundary bd = boundary_from_name(j.at("boundary").get<std::string>());
  auto a = j.at("a").get<std::vector<double>>();
  auto b = j.at("b").get<std::vector<double>>();
  if (static_cast<int>(a.size()) != sites || static_cast<int>(b.size()) != sites)
    throw config_error("operator: a[] and b[] must each hold `sites` entries");
  try {
    return JacobiWindow(bd, std::move(a), std::move(b));
  } catch (const error& e) {
    throw config_error(std::string("operator: ") + e.what());
  }
}

json to_json(const FlowState& s) {
  return json{{"J", to_json(s.J)}, {"t", s.t}, {"dt", s.dt}, {"steps", s.steps}};
}

FlowState flow_state_from_json(const json& j) {
  for (const char* field : {"J", "t", "dt", "steps"}) {
    if (!j.contains(field))
      throw config_error(std::string("flow state: missing field \"") + field + "\"");
  }
  return FlowState{window_from_json(j.at("J")), j.at("t").get<double>(),
                   j.at("dt").get<double>(), j.at("steps").get<long>()};
}

json to_json(const CheckRecord& r) {
  return json{{"check_name", r.check_name},
              {"parameters", r.parameters},
              {"residual", r.residual},
              {"tolerance", r.tolerance},
              {"pass", r.pass}};
}

std::string format_float17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return std::string(buf);
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
  std::ofstream out(path);
  if (!out) throw error("cannot open " + path + " for writing");
  for (size_t i = 0; i < header.size(); ++i) {
    if (i) out << ',';
    out << header[i];
  }
  out << '\n';
  for (const auto& row : rows) {
    for (size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      out << format_float17(row[i]);
    }
    out << '\n';
  }
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw error("cannot open " + path + " for writing");
  out << content;
}

}  // namespace toda
