#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "mrfcut/image.hpp"
#include "mrfcut/ising.hpp"
#include "mrfcut/layers.hpp"
#include "mrfcut/mnfc.hpp"
#include "mrfcut/network.hpp"
#include "mrfcut/solve.hpp"

namespace mrfcut {

/// Default cap on the arc count of a layer network; each neighbor pair alone
/// contributes 2 (L-1)^2 arcs.
inline constexpr std::int64_t kDefaultQArcLimit = std::int64_t{1} << 24;

/// Sum of beta_ij over the neighbors j of every pixel, in linear order.
std::vector<Capacity> coupling_sums(std::int32_t height, std::int32_t width, const EnergyParams& p);

/// d_{i,l} = (2l - 1) lambda_i - 2 lambda_i y_i + (2l - L) sum_j beta_ij, 1 <= l <= L-1.
std::int64_t coeff_d(std::int64_t pixel, std::int32_t layer, const GrayImage& y,
                     const EnergyParams& p);

/// Usual node of (pixel, layer) in the layer network (0-based, layer-major).
inline NodeIndex layer_node(std::int64_t pixel, std::int32_t layer, std::int64_t pixels) {
  return static_cast<NodeIndex>((layer - 1) * pixels + pixel);
}

struct QNetwork {
  Network network;
  GridShape grid;  // width x height x (L - 1)
  /// K = sum of |d_{i,l}| over negative coefficients: cut(x) = Q(x) + K.
  std::int64_t constant = 0;
};

/// (L-1)|S| usual nodes. Arcs: (s, i_l) of capacity -d_{i,l} when d < 0,
/// (i_l, t) of capacity d_{i,l} when d > 0, and for every neighbor pair and
/// every l, m both (i_l, j_m) and (j_m, i_l) of capacity beta_ij.
/// Throws LimitError when the arc count would exceed max_arcs.
QNetwork build_q_network(const GrayImage& y, const EnergyParams& p,
                         std::int64_t max_arcs = kDefaultQArcLimit);

/// Q(x) = sum d_{i,l} x_i(l) + sum_pairs beta_ij sum_{l,m} [x_i(l) != x_j(m) in cut
/// direction] for arbitrary (not necessarily ordered) layer bits.
/// Q - P = 2 sum_i (lambda_i + sum_j beta_ij) sum_{l<m} (1 - x_i(l)) x_i(m).
std::int64_t eval_Q(std::span<const BinaryImage> layers, const GrayImage& y,
                    const EnergyParams& p);

/// Exact integer minimizer of U2 through one min cut on the layer network.
/// Every minimum cut is an ordered stack; this is asserted.
Restoration minimize_U2(const GrayImage& y, const EnergyParams& p, const SolverOptions& opts,
                        std::int64_t max_arcs = kDefaultQArcLimit);

}  // namespace mrfcut
