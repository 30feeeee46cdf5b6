#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "mrfcut/image.hpp"
#include "mrfcut/ising.hpp"
#include "mrfcut/mnfc.hpp"
#include "mrfcut/solve.hpp"

namespace mrfcut {

/// Binary layers x(1), ..., x(L-1) with x_i(l) = 1 iff x_i >= l.
struct LayerStack {
  std::int32_t levels = 2;
  std::vector<BinaryImage> layers;
};

/// True iff layers share a shape and x(1) >= x(2) >= ... pixel-wise.
bool is_monotone(std::span<const BinaryImage> layers);

LayerStack threshold_decompose(const GrayImage& x);

/// Pixel-wise sum of the layers; throws InputError on a non-monotone stack
/// or a layer count other than levels - 1.
GrayImage stack_sum(const LayerStack& s);

/// u_l(x(l)) = lambda sum |y_i(l) - x_i(l)| + sum beta_ij |x_i(l) - x_j(l)|.
std::int64_t layer_energy(const BinaryImage& xl, const BinaryImage& yl, const EnergyParams& p);

struct Restoration {
  GrayImage x;
  std::int64_t energy = 0;
  /// MNFC statistics per solved cut problem (empty for the baseline solver).
  std::vector<std::vector<LevelStats>> levels;
};

/// Exact integer minimizer of U1. Each layer y(l) is restored independently
/// with the canonical maximal cut, which keeps the solved layers monotone;
/// their sum is the global minimizer. Layers run on opts.threads workers.
Restoration minimize_U1(const GrayImage& y, const EnergyParams& p, const SolverOptions& opts);

}  // namespace mrfcut
