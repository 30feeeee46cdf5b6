#pragma once

#include <cstdint>

#include <json.hpp>

namespace mrfcut::cli {

/// Enumeration cross-checks of every solver against the oracles on tiny
/// random instances. Returns a report with per-check instance and mismatch
/// counts; "ok" is false when anything disagreed.
nlohmann::json run_small_suite(std::uint64_t seed, int threads);

}  // namespace mrfcut::cli
