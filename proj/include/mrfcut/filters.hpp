#pragma once

#include <cstdint>

#include "mrfcut/image.hpp"
#include "mrfcut/ising.hpp"
#include "mrfcut/solve.hpp"

namespace mrfcut {

/// 3x3 windows with replicate padding. The average rounds half up.
GrayImage moving_average_3x3(const GrayImage& img);
GrayImage moving_median_3x3(const GrayImage& img);

struct Metrics {
  std::int64_t pixels = 0;
  std::int64_t differing = 0;
  std::int64_t abs_error = 0;
  double error_rate = 0.0;  // differing / pixels
  double mae = 0.0;         // abs_error / pixels
};

/// Throws InputError on a shape mismatch.
Metrics metrics(const GrayImage& a, const GrayImage& b);

enum class Model { u1, u2 };

/// Restores each channel independently with minimize_U1 or minimize_U2.
ColorImage restore_color(const ColorImage& img, const EnergyParams& p, Model which,
                         const SolverOptions& opts);

}  // namespace mrfcut
