#include "mrfcut/mnfc.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <numeric>
#include <string>

#include "mrfcut/parallel.hpp"

namespace mrfcut {

void MnfcConfig::validate(std::int32_t num_usual) const {
  if (tile_side < 1) throw InputError("tile_side must be >= 1");
  if (cell_size < 1) throw InputError("cell_size must be >= 1");
  if (fallback_threshold < 1) throw InputError("fallback_threshold must be >= 1");
  if (max_levels < 1) throw InputError("max_levels must be >= 1");
  if (grid) {
    if (grid->width < 1 || grid->height < 1 || grid->layers < 1)
      throw InputError("grid dimensions must be positive");
    if (grid->nodes() != num_usual)
      throw InputError("grid shape covers " + std::to_string(grid->nodes()) +
                       " nodes, network has " + std::to_string(num_usual));
  } else if (strategy == PartitionStrategy::tiles) {
    throw InputError("tile partition needs a grid shape");
  }
}

namespace {

PartitionStrategy effective_strategy(const MnfcConfig& cfg) {
  if (cfg.strategy != PartitionStrategy::automatic) return cfg.strategy;
  return cfg.grid ? PartitionStrategy::tiles : PartitionStrategy::ranges;
}

Partition chunk(std::span<const NodeIndex> nodes, std::int64_t size) {
  Partition p;
  for (std::size_t k = 0; k < nodes.size(); k += static_cast<std::size_t>(size)) {
    const auto end = std::min(nodes.size(), k + static_cast<std::size_t>(size));
    p.cells.emplace_back(nodes.begin() + static_cast<std::ptrdiff_t>(k),
                         nodes.begin() + static_cast<std::ptrdiff_t>(end));
  }
  return p;
}

Partition tile(std::span<const NodeIndex> nodes, const GridShape& grid, std::int32_t side,
               std::int32_t level) {
  const std::int64_t shift = (level % 2 == 0) ? side / 2 : 0;
  const std::int64_t tiles_across = (grid.width + shift + side - 1) / side;
  std::map<std::int64_t, std::vector<NodeIndex>> by_tile;
  for (const NodeIndex v : nodes) {
    const std::int64_t p = v % grid.pixels();
    const std::int64_t r = p / grid.width;
    const std::int64_t c = p % grid.width;
    by_tile[((r + shift) / side) * tiles_across + (c + shift) / side].push_back(v);
  }
  Partition out;
  out.cells.reserve(by_tile.size());
  for (auto& [key, cell] : by_tile) out.cells.push_back(std::move(cell));
  return out;
}

double elapsed_ms(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - since)
      .count();
}

}  // namespace

Partition partition_level(std::span<const NodeIndex> unresolved, const GNetwork& g,
                          const MnfcConfig& cfg, std::int32_t level) {
  cfg.validate(g.num_usual());
  if (static_cast<std::int64_t>(unresolved.size()) <= cfg.fallback_threshold)
    return Partition{{std::vector<NodeIndex>(unresolved.begin(), unresolved.end())}};
  switch (effective_strategy(cfg)) {
    case PartitionStrategy::tiles:
      return tile(unresolved, *cfg.grid, cfg.tile_side, level);
    case PartitionStrategy::pyramidal:
      return chunk(unresolved, std::int64_t{1} << std::min(level, 30));
    case PartitionStrategy::ranges:
    case PartitionStrategy::automatic:
      break;
  }
  return chunk(unresolved, cfg.cell_size);
}

LocalEstimates local_estimates(RestrictedSolver& solver, std::span<const NodeIndex> cell,
                               std::span<const std::int8_t> fixed) {
  RestrictedSolution lo = solver.solve({cell, fixed, Fill::zeros}, CutPick::minimal);
  RestrictedSolution hi = solver.solve({cell, fixed, Fill::ones}, CutPick::maximal);
  for (std::size_t k = 0; k < cell.size(); ++k)
    if (lo.x[k] > hi.x[k])
      throw InternalError("local estimates violate x0 <= x1 at node " + std::to_string(cell[k]));
  return {std::move(lo.x), std::move(hi.x), lo.counts};
}

LocalEstimates local_estimates(const GNetwork& g, std::span<const NodeIndex> cell,
                               std::span<const std::int8_t> fixed) {
  RestrictedSolver solver(g);
  return local_estimates(solver, cell, fixed);
}

std::vector<FixedNode> fix_nodes(std::span<const NodeIndex> cell, std::span<const std::uint8_t> x0,
                                 std::span<const std::uint8_t> x1) {
  if (x0.size() != cell.size() || x1.size() != cell.size())
    throw InputError("local estimate length differs from cell size");
  std::vector<FixedNode> fixed;
  for (std::size_t k = 0; k < cell.size(); ++k) {
    if (x0[k] > x1[k]) throw InputError("local estimates are not ordered");
    if (x1[k] == 0)
      fixed.push_back({cell[k], 0});
    else if (x0[k] == 1)
      fixed.push_back({cell[k], 1});
  }
  return fixed;
}

Fixability check_fixable_subset(const GNetwork& g, std::span<const NodeIndex> subset) {
  if (subset.empty()) return Fixability::undecided;
  std::vector<std::uint8_t> in_subset(static_cast<std::size_t>(g.num_usual()), 0);
  for (const NodeIndex i : subset) {
    if (i < 0 || i >= g.num_usual()) throw InputError("subset node out of range");
    in_subset[i] = 1;
  }
  std::int64_t unary = 0;
  std::int64_t leaving = 0;
  std::int64_t entering = 0;
  const auto lambda = g.lambda();
  const auto y = g.y();
  for (NodeIndex i = 0; i < g.num_usual(); ++i) {
    if (!in_subset[i]) continue;
    unary = y[i] ? checked_sub(unary, lambda[i]) : checked_add(unary, lambda[i]);
    for (const Neighbor& nb : g.out_arcs(i))
      if (!in_subset[nb.node]) leaving = checked_add(leaving, nb.cap);
    for (const Neighbor& nb : g.in_arcs(i))
      if (!in_subset[nb.node]) entering = checked_add(entering, nb.cap);
  }
  const bool to_one = checked_add(unary, leaving) <= 0;
  const bool to_zero = checked_sub(unary, entering) >= 0;
  if (to_one && !to_zero) return Fixability::fixable_to_1;
  if (to_zero && !to_one) return Fixability::fixable_to_0;
  return Fixability::undecided;
}

MnfcResult run_mnfc(const GNetwork& g, const MnfcConfig& cfg) {
  cfg.validate(g.num_usual());
  const auto n = static_cast<std::size_t>(g.num_usual());
  MnfcResult result;
  result.fixed_level.assign(n, 0);
  PartialLabeling fixed(n, -1);
  std::vector<NodeIndex> unresolved(n);
  std::iota(unresolved.begin(), unresolved.end(), 0);

  const int workers = std::max(1, cfg.worker_count);
  std::vector<RestrictedSolver> solvers;
  solvers.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) solvers.emplace_back(g);

  auto solve_directly = [&](std::int32_t level) {
    const auto start = std::chrono::steady_clock::now();
    RestrictedSolution rest = solvers.front().solve({unresolved, fixed, Fill::zeros}, cfg.pick);
    for (std::size_t k = 0; k < unresolved.size(); ++k)
      fixed[unresolved[k]] = static_cast<std::int8_t>(rest.x[k]);
    LevelStats stats;
    stats.level = level;
    stats.direct = true;
    stats.unresolved = static_cast<std::int64_t>(unresolved.size());
    stats.fixed = stats.unresolved;
    stats.fixed_fraction = 1.0;
    stats.cells.push_back(
        {rest.counts.nodes, rest.counts.arcs, rest.counts.boundary_arcs, stats.unresolved});
    stats.wall_ms = elapsed_ms(start);
    result.levels.push_back(std::move(stats));
    unresolved.clear();
  };

  for (std::int32_t level = 1; !unresolved.empty(); ++level) {
    if (level > cfg.max_levels) {
      result.fell_back = true;
      solve_directly(level);
      break;
    }
    Partition part = partition_level(unresolved, g, cfg, level);
    if (part.cells.size() == 1) {
      solve_directly(level);
      break;
    }

    const auto start = std::chrono::steady_clock::now();
    std::vector<LocalEstimates> estimates(part.cells.size());
    parallel_for(part.cells.size(), workers, [&](std::size_t c, std::size_t worker) {
      estimates[c] = local_estimates(solvers[worker], part.cells[c], fixed);
    });

    LevelStats stats;
    stats.level = level;
    stats.unresolved = static_cast<std::int64_t>(unresolved.size());
    std::vector<FixedNode> newly;
    for (std::size_t c = 0; c < part.cells.size(); ++c) {
      const auto decided = fix_nodes(part.cells[c], estimates[c].x0, estimates[c].x1);
      const LocalCounts& lc = estimates[c].counts;
      stats.cells.push_back({lc.nodes, lc.arcs, lc.boundary_arcs,
                             static_cast<std::int64_t>(decided.size())});
      newly.insert(newly.end(), decided.begin(), decided.end());
    }
    stats.fixed = static_cast<std::int64_t>(newly.size());
    stats.fixed_fraction =
        static_cast<double>(stats.fixed) / static_cast<double>(stats.unresolved);
    stats.wall_ms = elapsed_ms(start);
    result.levels.push_back(std::move(stats));

    if (newly.empty()) {
      if (effective_strategy(cfg) == PartitionStrategy::pyramidal) continue;
      result.fell_back = true;
      solve_directly(level + 1);
      break;
    }
    for (const FixedNode& f : newly) {
      fixed[f.node] = static_cast<std::int8_t>(f.value);
      result.fixed_level[f.node] = level;
    }
    std::erase_if(unresolved, [&](NodeIndex v) { return fixed[v] >= 0; });
  }

  result.x.resize(n);
  for (std::size_t i = 0; i < n; ++i) result.x[i] = static_cast<std::uint8_t>(fixed[i]);
  result.cut_value = cut_capacity(g, result.x);
  return result;
}

}  // namespace mrfcut
