#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "mrfcut/maxflow.hpp"
#include "mrfcut/network.hpp"

namespace mrfcut {

/// Pixel layout of an image-derived network: node index is
/// layer * width * height + row * width + col.
struct GridShape {
  std::int32_t width = 0;
  std::int32_t height = 0;
  std::int32_t layers = 1;

  std::int64_t pixels() const { return std::int64_t{width} * height; }
  std::int64_t nodes() const { return pixels() * layers; }
};

enum class PartitionStrategy {
  automatic,  // tiles when a grid is known, ranges otherwise
  tiles,      // tile_side x tile_side pixel blocks, all layers of a pixel together
  ranges,     // consecutive runs of cell_size unresolved nodes
  pyramidal,  // runs of 2^level nodes; keeps climbing when a level fixes nothing
};

struct MnfcConfig {
  PartitionStrategy strategy = PartitionStrategy::automatic;
  std::optional<GridShape> grid;
  std::int32_t tile_side = 64;
  std::int32_t cell_size = 1024;
  /// Unresolved sets of at most this many nodes are solved directly.
  std::int32_t fallback_threshold = 4096;
  std::int32_t max_levels = 64;
  int worker_count = 1;
  /// Canonical cut returned by the final direct solve.
  CutPick pick = CutPick::minimal;

  void validate(std::int32_t num_usual) const;
};

struct Partition {
  std::vector<std::vector<NodeIndex>> cells;
};

struct CellStats {
  std::int64_t nodes = 0;          // n_i(l)
  std::int64_t arcs = 0;           // m_i(l), arcs of the modified subnetwork
  std::int64_t boundary_arcs = 0;  // a_i(l)
  std::int64_t fixed = 0;
};

struct LevelStats {
  std::int32_t level = 1;
  bool direct = false;  // solved by one max-flow instead of partitioning
  std::int64_t unresolved = 0;  // |S(l)|
  std::int64_t fixed = 0;       // |R(l)|
  double fixed_fraction = 0.0;  // |R(l)| / |S(l)|
  double wall_ms = 0.0;
  std::vector<CellStats> cells;
};

struct MnfcResult {
  Labeling x;
  Capacity cut_value = 0;
  std::vector<LevelStats> levels;
  /// Level at which each node was fixed by the sandwich rule; 0 for nodes
  /// decided by the final direct solve.
  std::vector<std::int32_t> fixed_level;
  bool fell_back = false;  // a level fixed nothing and the remainder was solved directly
};

/// Multiresolution minimum cut. Each level solves every cell twice, under an
/// all-zeros frontier (minimal cut) and an all-ones frontier (maximal cut),
/// with already fixed nodes contributing their values. Nodes on which both
/// extremes agree keep that value in every global minimum cut and are removed;
/// the remainder moves to the next level. Cells of a level run concurrently.
MnfcResult run_mnfc(const GNetwork& g, const MnfcConfig& cfg);

/// Splits the unresolved set (sorted ascending) into disjoint covering cells.
/// Returns a single cell when |unresolved| <= fallback_threshold.
/// On even levels tiles are shifted by half a tile so that the previous
/// level's tile borders land inside cells.
Partition partition_level(std::span<const NodeIndex> unresolved, const GNetwork& g,
                          const MnfcConfig& cfg, std::int32_t level = 1);

struct LocalEstimates {
  Labeling x0;  // minimal cut, undecided outside nodes at 0
  Labeling x1;  // maximal cut, undecided outside nodes at 1
  LocalCounts counts;
};

/// `fixed` has one entry per usual node: 0/1 for decided nodes, -1 otherwise.
/// Throws InternalError if the sandwich x0 <= x1 fails.
LocalEstimates local_estimates(const GNetwork& g, std::span<const NodeIndex> cell,
                               std::span<const std::int8_t> fixed);
LocalEstimates local_estimates(RestrictedSolver& solver, std::span<const NodeIndex> cell,
                               std::span<const std::int8_t> fixed);

struct FixedNode {
  NodeIndex node = 0;
  std::uint8_t value = 0;

  friend bool operator==(const FixedNode&, const FixedNode&) = default;
};

/// Nodes with x1 = 0 are fixed to 0, nodes with x0 = 1 to 1.
std::vector<FixedNode> fix_nodes(std::span<const NodeIndex> cell, std::span<const std::uint8_t> x0,
                                 std::span<const std::uint8_t> x1);

enum class Fixability { fixable_to_1, fixable_to_0, undecided };

/// Tests whether flipping all of D decides it under the extreme frontiers:
///   to 1: sum_D lambda_i (1 - 2 y_i) + sum_{D x D^c} beta <= 0
///   to 0: sum_D lambda_i (1 - 2 y_i) - sum_{D^c x D} beta >= 0
/// Undecided when neither or both hold (ties, empty D).
Fixability check_fixable_subset(const GNetwork& g, std::span<const NodeIndex> subset);

}  // namespace mrfcut
