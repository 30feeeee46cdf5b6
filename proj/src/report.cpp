#include "mrfcut/report.hpp"

namespace mrfcut {

nlohmann::json make_report(const std::string& command) {
  return {{"schema", "mrfcut.report"}, {"schema_version", kReportSchemaVersion},
          {"command", command}};
}

nlohmann::json levels_json(const std::vector<LevelStats>& levels) {
  nlohmann::json out = nlohmann::json::array();
  for (const LevelStats& s : levels) {
    nlohmann::json cells = nlohmann::json::array();
    for (const CellStats& c : s.cells)
      cells.push_back({{"n", c.nodes}, {"m", c.arcs}, {"a", c.boundary_arcs}, {"fixed", c.fixed}});
    out.push_back({{"level", s.level},
                   {"direct", s.direct},
                   {"unresolved", s.unresolved},
                   {"fixed", s.fixed},
                   {"fixed_fraction", s.fixed_fraction},
                   {"wall_ms", s.wall_ms},
                   {"cells", std::move(cells)}});
  }
  return out;
}

nlohmann::json metrics_json(const Metrics& m) {
  return {{"pixels", m.pixels},       {"differing", m.differing}, {"abs_error", m.abs_error},
          {"error_rate", m.error_rate}, {"mae", m.mae}};
}

}  // namespace mrfcut
