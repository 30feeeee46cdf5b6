#include "mrfcut/solve.hpp"

namespace mrfcut {

CutSolution solve_min_cut(const GNetwork& g, const SolverOptions& opts, CutPick pick,
                          std::optional<GridShape> grid) {
  CutSolution out;
  if (opts.kind == SolverKind::baseline) {
    const FlowResult fr = max_flow(g);
    out.x = canonical_cut(fr, pick);
    out.cut_value = checked_add(fr.max_flow_value(), g.offset());
    return out;
  }
  MnfcConfig cfg = opts.mnfc;
  cfg.pick = pick;
  cfg.worker_count = opts.threads;
  if (grid && !cfg.grid) cfg.grid = grid;
  MnfcResult r = run_mnfc(g, cfg);
  out.x = std::move(r.x);
  out.cut_value = r.cut_value;
  out.levels = std::move(r.levels);
  return out;
}

}  // namespace mrfcut
