#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "mrfcut/filters.hpp"
#include "mrfcut/mnfc.hpp"

namespace mrfcut {

inline constexpr int kReportSchemaVersion = 1;

/// Skeleton of a run report: schema tag, version and command name.
nlohmann::json make_report(const std::string& command);

/// Per level: level, direct, unresolved, fixed, fixed_fraction, wall_ms and
/// cells [{n, m, a, fixed}] (node, arc and boundary-arc counts).
nlohmann::json levels_json(const std::vector<LevelStats>& levels);

nlohmann::json metrics_json(const Metrics& m);

}  // namespace mrfcut
