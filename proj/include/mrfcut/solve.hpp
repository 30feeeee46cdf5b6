#pragma once

#include <optional>
#include <vector>

#include "mrfcut/maxflow.hpp"
#include "mrfcut/mnfc.hpp"
#include "mrfcut/network.hpp"

namespace mrfcut {

enum class SolverKind { baseline, mnfc };

struct SolverOptions {
  SolverKind kind = SolverKind::baseline;
  /// Used when kind == mnfc. Its grid, pick and worker_count are filled in
  /// per call by the pipelines.
  MnfcConfig mnfc;
  int threads = 1;
};

struct CutSolution {
  Labeling x;
  Capacity cut_value = 0;  // including the network offset
  std::vector<LevelStats> levels;  // empty for the baseline solver
};

/// Canonical minimum cut of g by the requested back-end. Both back-ends
/// return the identical labeling for the same pick.
CutSolution solve_min_cut(const GNetwork& g, const SolverOptions& opts, CutPick pick,
                          std::optional<GridShape> grid = std::nullopt);

}  // namespace mrfcut
