#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "mrfcut/network.hpp"

namespace mrfcut {

/// Outcome of an exact max-flow solve, holding the final residual graph.
///
/// Node ids follow Network: 0 = source, 1..n usual, n+1 = sink. Each input
/// arc k owns a forward residual edge and a paired reverse edge, so the flow
/// on arc k is its capacity minus its forward residual.
class FlowResult {
 public:
  Capacity max_flow_value() const { return value_; }
  std::int32_t num_usual() const { return num_nodes_ - 2; }
  std::size_t num_input_arcs() const { return arc_edge_.size(); }

  /// Flow carried by the k-th input arc.
  Capacity arc_flow(std::size_t k) const;
  /// Remaining forward capacity of the k-th input arc.
  Capacity arc_residual(std::size_t k) const { return residual_[arc_edge_[k]]; }

  /// Outflow minus inflow at a node (zero at usual nodes for a valid flow).
  Capacity net_outflow(NodeId v) const;

 private:
  friend FlowResult solve_max_flow(std::int32_t, std::span<const Arc>);
  friend Labeling min_cut_minimal(const FlowResult&);
  friend Labeling min_cut_maximal(const FlowResult&);

  std::int32_t num_nodes_ = 2;
  Capacity value_ = 0;
  std::vector<std::int32_t> first_;      // CSR offsets, size num_nodes_ + 1
  std::vector<std::int32_t> head_;       // edge target
  std::vector<std::int32_t> mate_;       // paired edge
  std::vector<Capacity> residual_;
  std::vector<Capacity> capacity_;       // original capacity, 0 on reverse edges
  std::vector<std::int32_t> arc_edge_;   // input arc -> forward edge
};

/// Dinic's algorithm on num_usual + 2 nodes; deterministic for a fixed arc order.
FlowResult solve_max_flow(std::int32_t num_usual, std::span<const Arc> arcs);

FlowResult max_flow(const Network& net);

/// Solves the terminal and coupling arcs of g. The flow value excludes
/// g.offset(), so the minimum cut capacity is value + offset.
FlowResult max_flow(const GNetwork& g);

/// Nodes reachable from s in the residual graph: the coordinate-wise least
/// minimum cut.
Labeling min_cut_minimal(const FlowResult& fr);

/// Everything except the nodes that reach t in the residual graph: the
/// coordinate-wise greatest minimum cut.
Labeling min_cut_maximal(const FlowResult& fr);

enum class CutPick { minimal, maximal };

inline Labeling canonical_cut(const FlowResult& fr, CutPick pick) {
  return pick == CutPick::minimal ? min_cut_minimal(fr) : min_cut_maximal(fr);
}

/// Value assumed for undecided nodes outside the solved cell.
enum class Fill : std::uint8_t { zeros, ones };

/// Labeling assumed outside a cell E. For a node j outside E, known[j] (0 or 1)
/// wins; known[j] == -1 falls back to `fill`. Nodes of E must have known == -1.
struct FrontierCondition {
  std::span<const NodeIndex> cell;
  std::span<const std::int8_t> known;
  Fill fill = Fill::zeros;
};

/// Per-cell size counters: nodes, arcs of the modified subnetwork, and arcs
/// crossing the cell boundary in either direction.
struct LocalCounts {
  std::int64_t nodes = 0;
  std::int64_t arcs = 0;
  std::int64_t boundary_arcs = 0;
};

struct RestrictedSolution {
  Labeling x;  // one bit per cell node, in cell order
  LocalCounts counts;
};

/// Solves min over x_E of U(x_E, frontier) on the subnetwork whose terminal
/// capacities absorb the frontier:
///   d_{s,i} = lambda_i y_i + sum_{j outside, x_j=1} beta_{j,i}
///   d_{i,t} = lambda_i (1 - y_i) + sum_{j outside, x_j=0} beta_{i,j}
///
/// Keeps an index scratch of size n so repeated solves cost O(cell + boundary).
/// Not thread-safe; use one instance per worker.
class RestrictedSolver {
 public:
  explicit RestrictedSolver(const GNetwork& g);

  RestrictedSolution solve(const FrontierCondition& fc, CutPick pick);

 private:
  const GNetwork* g_;
  std::vector<std::int32_t> local_;  // global -> cell-local index, -1 outside
};

RestrictedSolution restricted_solve(const GNetwork& g, const FrontierCondition& fc, CutPick pick);

}  // namespace mrfcut
