#pragma once

#include <cstdint>
#include <vector>

#include "mrfcut/image.hpp"
#include "mrfcut/ising.hpp"
#include "mrfcut/network.hpp"

namespace mrfcut {

/// Exhaustive reference minimizers. They share only the energy evaluators
/// with the solvers, never the solving code.
struct EnumLimit {
  std::int64_t max_states = std::int64_t{1} << 24;
};

struct CutOracle {
  Capacity value = 0;
  std::vector<Labeling> argmins;  // ascending in binary-counter order
};

/// Minimum of cut_capacity over all 2^n labelings with the full argmin set.
/// Throws LimitError when 2^n exceeds the limit.
CutOracle brute_min_cut(const GNetwork& g, EnumLimit limit = {});

struct ImageOracle {
  std::int64_t value = 0;
  GrayImage argmin;  // first minimizer in odometer order (pixel 0 fastest)
};

/// Minimum of eval_U1 / eval_U2 over all L^n images with y's shape and L.
/// Throws LimitError when L^n exceeds the limit.
ImageOracle brute_min_U1(const GrayImage& y, const EnergyParams& p, EnumLimit limit = {});
ImageOracle brute_min_U2(const GrayImage& y, const EnergyParams& p, EnumLimit limit = {});

}  // namespace mrfcut
