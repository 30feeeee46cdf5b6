#include "mrfcut/maxflow.hpp"

#include <algorithm>
#include <limits>
#include <string>

namespace mrfcut {

Capacity FlowResult::arc_flow(std::size_t k) const {
  const auto e = arc_edge_[k];
  return capacity_[e] - residual_[e];
}

Capacity FlowResult::net_outflow(NodeId v) const {
  Capacity total = 0;
  for (auto e = first_[v]; e < first_[v + 1]; ++e) {
    // Flow on an edge is original capacity minus residual; on reverse edges
    // this is minus the flow of the paired forward edge.
    total += capacity_[e] - residual_[e];
  }
  return total;
}

FlowResult solve_max_flow(std::int32_t num_usual, std::span<const Arc> arcs) {
  FlowResult fr;
  const std::int32_t nodes = num_usual + 2;
  const NodeId s = 0;
  const NodeId t = num_usual + 1;
  fr.num_nodes_ = nodes;

  fr.first_.assign(static_cast<std::size_t>(nodes) + 1, 0);
  for (const Arc& a : arcs) {
    ++fr.first_[a.from + 1];
    ++fr.first_[a.to + 1];
  }
  for (std::int32_t v = 0; v < nodes; ++v) fr.first_[v + 1] += fr.first_[v];
  const std::size_t edges = 2 * arcs.size();
  fr.head_.resize(edges);
  fr.mate_.resize(edges);
  fr.residual_.resize(edges);
  fr.capacity_.resize(edges);
  fr.arc_edge_.resize(arcs.size());
  std::vector<std::int32_t> fill(fr.first_.begin(), fr.first_.end() - 1);
  Capacity source_cap = 0;
  for (std::size_t k = 0; k < arcs.size(); ++k) {
    const Arc& a = arcs[k];
    const auto fwd = fill[a.from]++;
    const auto rev = fill[a.to]++;
    fr.head_[fwd] = a.to;
    fr.head_[rev] = a.from;
    fr.mate_[fwd] = rev;
    fr.mate_[rev] = fwd;
    fr.residual_[fwd] = a.cap;
    fr.capacity_[fwd] = a.cap;
    fr.arc_edge_[k] = fwd;
    if (a.from == s) source_cap = checked_add(source_cap, a.cap);
  }
  // The flow value never exceeds the total source capacity, which fits.
  (void)source_cap;

  std::vector<std::int32_t> level(nodes);
  std::vector<std::int32_t> current(nodes);
  std::vector<std::int32_t> queue(nodes);
  std::vector<std::int32_t> path;  // edges from s to the current node

  auto build_levels = [&] {
    std::fill(level.begin(), level.end(), -1);
    std::size_t qh = 0;
    std::size_t qt = 0;
    level[s] = 0;
    queue[qt++] = s;
    while (qh < qt) {
      const auto v = queue[qh++];
      for (auto e = fr.first_[v]; e < fr.first_[v + 1]; ++e) {
        const auto w = fr.head_[e];
        if (fr.residual_[e] > 0 && level[w] < 0) {
          level[w] = level[v] + 1;
          if (w == t) return true;
          queue[qt++] = w;
        }
      }
    }
    return level[t] >= 0;
  };

  while (build_levels()) {
    for (std::int32_t v = 0; v < nodes; ++v) current[v] = fr.first_[v];
    path.clear();
    NodeId v = s;
    while (true) {
      if (v == t) {
        Capacity bottleneck = std::numeric_limits<Capacity>::max();
        for (const auto e : path) bottleneck = std::min(bottleneck, fr.residual_[e]);
        std::size_t retreat = path.size();
        for (std::size_t k = 0; k < path.size(); ++k) {
          const auto e = path[k];
          fr.residual_[e] -= bottleneck;
          fr.residual_[fr.mate_[e]] += bottleneck;
          if (fr.residual_[e] == 0 && retreat == path.size()) retreat = k;
        }
        fr.value_ += bottleneck;
        path.resize(retreat);
        v = path.empty() ? s : fr.head_[path.back()];
        continue;
      }
      bool advanced = false;
      for (auto& e = current[v]; e < fr.first_[v + 1]; ++e) {
        const auto w = fr.head_[e];
        if (fr.residual_[e] > 0 && level[w] == level[v] + 1) {
          path.push_back(e);
          v = w;
          advanced = true;
          break;
        }
      }
      if (advanced) continue;
      level[v] = -1;  // dead end for this phase
      if (v == s) break;
      const auto e = path.back();
      path.pop_back();
      v = fr.head_[fr.mate_[e]];
      ++current[v];
    }
  }
  return fr;
}

FlowResult max_flow(const Network& net) {
  validate(net);
  return solve_max_flow(net.num_usual, net.arcs);
}

FlowResult max_flow(const GNetwork& g) {
  const Network net = g.to_network();
  return solve_max_flow(net.num_usual, net.arcs);
}

Labeling min_cut_minimal(const FlowResult& fr) {
  std::vector<std::uint8_t> seen(fr.num_nodes_, 0);
  std::vector<std::int32_t> stack{0};
  seen[0] = 1;
  while (!stack.empty()) {
    const auto v = stack.back();
    stack.pop_back();
    for (auto e = fr.first_[v]; e < fr.first_[v + 1]; ++e) {
      const auto w = fr.head_[e];
      if (fr.residual_[e] > 0 && !seen[w]) {
        seen[w] = 1;
        stack.push_back(w);
      }
    }
  }
  return Labeling(seen.begin() + 1, seen.end() - 1);
}

Labeling min_cut_maximal(const FlowResult& fr) {
  const std::int32_t t = fr.num_nodes_ - 1;
  std::vector<std::uint8_t> reaches(fr.num_nodes_, 0);
  std::vector<std::int32_t> stack{t};
  reaches[t] = 1;
  while (!stack.empty()) {
    const auto w = stack.back();
    stack.pop_back();
    // Edge v->w sits in v's list as the mate of w's edge toward v.
    for (auto e = fr.first_[w]; e < fr.first_[w + 1]; ++e) {
      const auto v = fr.head_[e];
      if (fr.residual_[fr.mate_[e]] > 0 && !reaches[v]) {
        reaches[v] = 1;
        stack.push_back(v);
      }
    }
  }
  Labeling x(static_cast<std::size_t>(fr.num_nodes_ - 2));
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = reaches[i + 1] ? 0 : 1;
  return x;
}

RestrictedSolver::RestrictedSolver(const GNetwork& g)
    : g_(&g), local_(static_cast<std::size_t>(g.num_usual()), -1) {}

RestrictedSolution RestrictedSolver::solve(const FrontierCondition& fc, CutPick pick) {
  const GNetwork& g = *g_;
  const auto n = static_cast<std::size_t>(g.num_usual());
  if (fc.known.size() != n) throw InputError("frontier labeling length differs from node count");

  struct Reset {
    std::vector<std::int32_t>& local;
    std::span<const NodeIndex> cell;
    ~Reset() {
      for (const auto i : cell)
        if (i >= 0 && static_cast<std::size_t>(i) < local.size()) local[i] = -1;
    }
  } reset{local_, fc.cell};

  const auto m = static_cast<std::int32_t>(fc.cell.size());
  for (std::int32_t k = 0; k < m; ++k) {
    const auto i = fc.cell[k];
    if (i < 0 || static_cast<std::size_t>(i) >= n) throw InputError("cell node out of range");
    if (local_[i] >= 0) throw InputError("cell lists node " + std::to_string(i) + " twice");
    if (fc.known[i] >= 0) throw InputError("cell node " + std::to_string(i) + " is already fixed");
    local_[i] = k;
  }

  const std::uint8_t fill = fc.fill == Fill::ones ? 1 : 0;
  auto outside_value = [&](NodeIndex j) -> std::uint8_t {
    return fc.known[j] >= 0 ? static_cast<std::uint8_t>(fc.known[j]) : fill;
  };

  Network sub;
  sub.num_usual = m;
  RestrictedSolution out;
  out.counts.nodes = m;
  const auto lambda = g.lambda();
  const auto y = g.y();
  for (std::int32_t k = 0; k < m; ++k) {
    const auto i = fc.cell[k];
    Capacity to_source = y[i] ? lambda[i] : 0;
    Capacity to_sink = y[i] ? 0 : lambda[i];
    for (const Neighbor& nb : g.in_arcs(i)) {
      if (local_[nb.node] >= 0) continue;
      ++out.counts.boundary_arcs;
      if (outside_value(nb.node) == 1) to_source = checked_add(to_source, nb.cap);
    }
    for (const Neighbor& nb : g.out_arcs(i)) {
      if (local_[nb.node] >= 0) {
        sub.arcs.push_back({k + 1, local_[nb.node] + 1, nb.cap});
        continue;
      }
      ++out.counts.boundary_arcs;
      if (outside_value(nb.node) == 0) to_sink = checked_add(to_sink, nb.cap);
    }
    if (to_source > 0) sub.arcs.push_back({0, k + 1, to_source});
    if (to_sink > 0) sub.arcs.push_back({k + 1, m + 1, to_sink});
  }

  const GNetwork cell_net = normalize_to_G(sub);
  out.counts.arcs = static_cast<std::int64_t>(cell_net.beta_arcs().size());
  for (const auto l : cell_net.lambda())
    if (l > 0) ++out.counts.arcs;
  const FlowResult fr = max_flow(cell_net);
  out.x = canonical_cut(fr, pick);
  return out;
}

RestrictedSolution restricted_solve(const GNetwork& g, const FrontierCondition& fc, CutPick pick) {
  RestrictedSolver solver(g);
  return solver.solve(fc, pick);
}

}  // namespace mrfcut
