#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "mrfcut/errors.hpp"

namespace mrfcut {

/// Node id inside a Network: 0 is the source, 1..n are usual nodes, n+1 is the sink.
using NodeId = std::int32_t;

/// Index of a usual node inside a GNetwork, 0..n-1 (Network id minus one).
using NodeIndex = std::int32_t;

/// Bit per usual node, 1 = source side.
using Labeling = std::vector<std::uint8_t>;

/// Per-node value in {-1, 0, 1}; -1 marks an undecided node.
using PartialLabeling = std::vector<std::int8_t>;

struct Arc {
  NodeId from = 0;
  NodeId to = 0;
  Capacity cap = 0;

  friend bool operator==(const Arc&, const Arc&) = default;
};

/// Directed s-t network with non-negative integer capacities.
struct Network {
  std::int32_t num_usual = 0;
  std::vector<Arc> arcs;

  NodeId source() const { return 0; }
  NodeId sink() const { return num_usual + 1; }
  std::int32_t num_nodes() const { return num_usual + 2; }
};

/// Throws InputError on out-of-range ids, self loops, arcs into s or out of t,
/// or negative capacities.
void validate(const Network& net);

/// Coupling arc between two usual nodes of a GNetwork.
struct BetaArc {
  NodeIndex from = 0;
  NodeIndex to = 0;
  Capacity cap = 0;

  friend bool operator==(const BetaArc&, const BetaArc&) = default;
};

/// Neighbor entry of the CSR adjacency kept by GNetwork.
struct Neighbor {
  NodeIndex node = 0;
  Capacity cap = 0;
};

/// A network in normal form: every usual node owns exactly one terminal arc,
/// a source arc (y_i = 1) or a sink arc (y_i = 0), of capacity lambda_i.
///
/// Parallel coupling arcs are summed and zero-capacity couplings dropped on
/// construction, so beta_arcs() is sorted by (from, to) without duplicates.
/// Immutable after construction.
class GNetwork {
 public:
  GNetwork() = default;
  GNetwork(std::int32_t num_usual, std::vector<Capacity> lambda, std::vector<std::uint8_t> y,
           std::vector<BetaArc> beta_arcs, Capacity offset = 0);

  std::int32_t num_usual() const { return num_usual_; }
  std::span<const Capacity> lambda() const { return lambda_; }
  std::span<const std::uint8_t> y() const { return y_; }
  std::span<const BetaArc> beta_arcs() const { return beta_arcs_; }
  Capacity offset() const { return offset_; }

  /// Sum of lambda_i over source-linked nodes.
  Capacity source_total() const { return source_total_; }

  std::span<const Neighbor> out_arcs(NodeIndex i) const {
    return {out_.data() + out_first_[i], out_.data() + out_first_[i + 1]};
  }
  std::span<const Neighbor> in_arcs(NodeIndex i) const {
    return {in_.data() + in_first_[i], in_.data() + in_first_[i + 1]};
  }

  /// Equivalent Network (offset is not representable and is dropped).
  Network to_network() const;

 private:
  std::int32_t num_usual_ = 0;
  std::vector<Capacity> lambda_;
  std::vector<std::uint8_t> y_;
  std::vector<BetaArc> beta_arcs_;
  Capacity offset_ = 0;
  Capacity source_total_ = 0;
  std::vector<std::int32_t> out_first_{0};
  std::vector<Neighbor> out_;
  std::vector<std::int32_t> in_first_{0};
  std::vector<Neighbor> in_;
};

/// Brings an arbitrary network into normal form. A node with source arc a and
/// sink arc b keeps one arc of capacity |a - b| and min(a, b) moves into the
/// offset; direct s->t arcs go to the offset as well. Min-cut labelings are
/// unchanged.
GNetwork normalize_to_G(const Network& net);

/// Capacity of the s-t cut selected by x (including the offset).
Capacity cut_capacity(const GNetwork& g, std::span<const std::uint8_t> x);

/// U(x) = sum lambda_i (1 - 2 y_i) x_i + sum beta_ij (x_i - x_j) x_i.
/// cut_capacity(g, x) == energy_U(g, x) + g.source_total() + g.offset().
std::int64_t energy_U(const GNetwork& g, std::span<const std::uint8_t> x);

}  // namespace mrfcut
