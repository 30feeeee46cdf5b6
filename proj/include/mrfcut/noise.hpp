#pragma once

#include <cstdint>
#include <optional>

#include "mrfcut/image.hpp"

namespace mrfcut {

enum class NoiseKind { bernoulli_flip, exponential_additive };

struct NoiseSpec {
  NoiseKind kind = NoiseKind::bernoulli_flip;
  double p = 0.0;  // flip probability
  /// Exponential rate; unset means 8 / L (mean noise L / 8).
  std::optional<double> rate;
  /// 0 draws a seed from std::random_device.
  std::uint64_t seed = 1;

  void validate() const;
};

/// Uniform double in [0, 1) from the top 53 bits of a 64-bit draw. Bit-exact
/// on every platform, unlike std::uniform_real_distribution.
double unit_uniform(std::uint64_t bits);

/// Pixels are visited in row-major order, one engine draw each, from
/// std::mt19937_64 seeded with spec.seed. bernoulli_flip needs a binary image;
/// exponential_additive adds round(-ln(1 - u) / rate) clamped to L - 1.
GrayImage apply_noise(const GrayImage& img, const NoiseSpec& spec);

/// Channels r, g, b in turn share one engine.
ColorImage apply_noise(const ColorImage& img, const NoiseSpec& spec);

}  // namespace mrfcut
