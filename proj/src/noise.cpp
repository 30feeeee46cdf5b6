#include "mrfcut/noise.hpp"

#include <cmath>
#include <random>

namespace mrfcut {

void NoiseSpec::validate() const {
  if (!(p >= 0.0 && p <= 1.0)) throw InputError("flip probability must lie in [0, 1]");
  if (rate && !(*rate > 0.0 && std::isfinite(*rate))) throw InputError("rate must be positive");
}

double unit_uniform(std::uint64_t bits) { return static_cast<double>(bits >> 11) * 0x1.0p-53; }

namespace {

std::uint64_t resolve_seed(std::uint64_t seed) {
  if (seed != 0) return seed;
  std::random_device rd;
  return (std::uint64_t{rd()} << 32) ^ rd();
}

GrayImage noisy(const GrayImage& img, const NoiseSpec& spec, std::mt19937_64& engine) {
  PixelMatrix<std::int32_t> out = img.pixels();
  if (spec.kind == NoiseKind::bernoulli_flip) {
    if (!img.is_binary()) throw InputError("bernoulli flip noise needs a binary image");
    for (std::int64_t i = 0; i < out.size(); ++i)
      if (unit_uniform(engine()) < spec.p) out.data()[i] = 1 - out.data()[i];
  } else {
    const double rate = spec.rate.value_or(8.0 / img.levels());
    const double top = img.levels() - 1;
    for (std::int64_t i = 0; i < out.size(); ++i) {
      const double e = -std::log1p(-unit_uniform(engine())) / rate;
      const double v = std::min(top, out.data()[i] + std::round(e));
      out.data()[i] = static_cast<std::int32_t>(v);
    }
  }
  return GrayImage(std::move(out), img.levels());
}

}  // namespace

GrayImage apply_noise(const GrayImage& img, const NoiseSpec& spec) {
  spec.validate();
  std::mt19937_64 engine(resolve_seed(spec.seed));
  return noisy(img, spec, engine);
}

ColorImage apply_noise(const ColorImage& img, const NoiseSpec& spec) {
  spec.validate();
  std::mt19937_64 engine(resolve_seed(spec.seed));
  GrayImage r = noisy(img.channel(0), spec, engine);
  GrayImage g = noisy(img.channel(1), spec, engine);
  GrayImage b = noisy(img.channel(2), spec, engine);
  return ColorImage(std::move(r), std::move(g), std::move(b));
}

}  // namespace mrfcut
