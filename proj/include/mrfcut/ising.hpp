#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "mrfcut/image.hpp"
#include "mrfcut/network.hpp"

namespace mrfcut {

enum class Neighborhood { four, eight };

struct PixelOffset {
  std::int32_t dr;
  std::int32_t dc;
};

/// Forward offsets, one per unordered neighbor pair: right, down, then the
/// two diagonals for the 8-neighborhood.
std::span<const PixelOffset> neighbor_offsets(Neighborhood nb);

/// Ising energy parameters in fixed-point integer units.
struct EnergyParams {
  Capacity lambda = 1;
  /// Per-pixel lambda_i; overrides `lambda` when present.
  std::optional<PixelMatrix<Capacity>> lambda_map;
  Capacity beta = 1;
  /// Optional per-pair couplings, one map per forward offset: entry (r, c) of
  /// map k couples (r, c) with (r + dr_k, c + dc_k). Empty means uniform beta.
  std::vector<PixelMatrix<Capacity>> beta_maps;
  Neighborhood neighborhood = Neighborhood::four;
  /// Factor that turned real-valued parameters into these integers.
  std::int64_t scale = 1;

  Capacity lambda_at(std::int64_t pixel) const {
    return lambda_map ? lambda_map->data()[pixel] : lambda;
  }

  /// Throws InputError unless every lambda and beta is strictly positive and
  /// the maps match the image shape.
  void validate(std::int32_t height, std::int32_t width) const;
};

/// round(value * scale); throws InputError on negative or non-finite input.
Capacity to_fixed_point(double value, std::int64_t scale);

EnergyParams uniform_params(double lambda, double beta, std::int64_t scale = 65536,
                            Neighborhood nb = Neighborhood::four);

/// Calls fn(i, j, beta) once per unordered neighbor pair, i < j in linear order.
template <typename F>
void for_each_neighbor_pair(std::int32_t height, std::int32_t width, const EnergyParams& p,
                            F&& fn) {
  const auto offsets = neighbor_offsets(p.neighborhood);
  for (std::int32_t r = 0; r < height; ++r) {
    for (std::int32_t c = 0; c < width; ++c) {
      const std::int64_t i = std::int64_t{r} * width + c;
      for (std::size_t k = 0; k < offsets.size(); ++k) {
        const std::int32_t rr = r + offsets[k].dr;
        const std::int32_t cc = c + offsets[k].dc;
        if (rr < 0 || rr >= height || cc < 0 || cc >= width) continue;
        const Capacity beta = p.beta_maps.empty() ? p.beta : p.beta_maps[k](r, c);
        fn(i, std::int64_t{rr} * width + cc, beta);
      }
    }
  }
}

/// U1 = sum_i lambda |y_i - x_i| + sum_{pairs} beta_ij |x_i - x_j|.
std::int64_t eval_U1(const GrayImage& x, const GrayImage& y, const EnergyParams& p);

/// U2 = sum_i lambda_i (y_i - x_i)^2 + sum_{pairs} beta_ij (x_i - x_j)^2.
std::int64_t eval_U2(const GrayImage& x, const GrayImage& y, const EnergyParams& p);

/// One node per pixel; y_i = 1 pixels get a source arc and y_i = 0 pixels a
/// sink arc of capacity lambda_i; every neighbor pair gets both directed arcs
/// of capacity beta_ij. The cut capacity of x equals U1(x) = U2(x).
GNetwork build_binary_map_network(const BinaryImage& y, const EnergyParams& p);

/// True iff beta <= M lambda / (2 (M + 1)): constant components of more than
/// M pixels keep their observed value in the exact MAP. Uniform parameters only.
bool preservation_bound(std::int64_t component_size, const EnergyParams& p);

/// True iff beta <= lambda / 2, the bound for components enclosed by a contour.
bool contour_preservation_bound(const EnergyParams& p);

}  // namespace mrfcut
