#include "mrfcut/ising.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace mrfcut {

namespace {

constexpr std::array<PixelOffset, 4> kOffsets{{{0, 1}, {1, 0}, {1, 1}, {1, -1}}};

Capacity absolute(std::int64_t v) { return v < 0 ? -v : v; }

void require_uniform(const EnergyParams& p) {
  if (p.lambda_map || !p.beta_maps.empty())
    throw InputError("preservation bounds need uniform lambda and beta");
}

}  // namespace

std::span<const PixelOffset> neighbor_offsets(Neighborhood nb) {
  return {kOffsets.data(), nb == Neighborhood::four ? 2u : 4u};
}

void EnergyParams::validate(std::int32_t height, std::int32_t width) const {
  if (scale < 1) throw InputError("fixed-point scale must be >= 1");
  if (lambda_map) {
    if (lambda_map->rows() != height || lambda_map->cols() != width)
      throw InputError("lambda map shape differs from image");
    if (lambda_map->size() > 0 && lambda_map->minCoeff() <= 0)
      throw InputError("lambda_i must be positive");
  } else if (lambda <= 0) {
    throw InputError("lambda must be positive");
  }
  if (beta_maps.empty()) {
    if (beta <= 0) throw InputError("beta must be positive");
    return;
  }
  const auto offsets = neighbor_offsets(neighborhood);
  if (beta_maps.size() != offsets.size())
    throw InputError("expected " + std::to_string(offsets.size()) + " beta maps");
  for (std::size_t k = 0; k < offsets.size(); ++k) {
    if (beta_maps[k].rows() != height || beta_maps[k].cols() != width)
      throw InputError("beta map shape differs from image");
  }
  for_each_neighbor_pair(height, width, *this, [](std::int64_t, std::int64_t, Capacity b) {
    if (b <= 0) throw InputError("beta_ij must be positive");
  });
}

Capacity to_fixed_point(double value, std::int64_t scale) {
  if (!std::isfinite(value) || value < 0) throw InputError("parameter must be finite and >= 0");
  const double scaled = std::round(value * static_cast<double>(scale));
  if (scaled >= static_cast<double>(std::numeric_limits<Capacity>::max() / 4))
    throw OverflowError("scaled parameter too large");
  return static_cast<Capacity>(scaled);
}

EnergyParams uniform_params(double lambda, double beta, std::int64_t scale, Neighborhood nb) {
  EnergyParams p;
  p.lambda = to_fixed_point(lambda, scale);
  p.beta = to_fixed_point(beta, scale);
  p.neighborhood = nb;
  p.scale = scale;
  return p;
}

std::int64_t eval_U1(const GrayImage& x, const GrayImage& y, const EnergyParams& p) {
  require_compatible(x, y);
  std::int64_t total = 0;
  for (std::int64_t i = 0; i < x.size(); ++i)
    total = checked_add(total, checked_mul(p.lambda_at(i), absolute(y.at(i) - x.at(i))));
  for_each_neighbor_pair(x.height(), x.width(), p, [&](std::int64_t i, std::int64_t j, Capacity b) {
    total = checked_add(total, checked_mul(b, absolute(x.at(i) - x.at(j))));
  });
  return total;
}

std::int64_t eval_U2(const GrayImage& x, const GrayImage& y, const EnergyParams& p) {
  require_compatible(x, y);
  std::int64_t total = 0;
  for (std::int64_t i = 0; i < x.size(); ++i) {
    const std::int64_t d = y.at(i) - x.at(i);
    total = checked_add(total, checked_mul(p.lambda_at(i), d * d));
  }
  for_each_neighbor_pair(x.height(), x.width(), p, [&](std::int64_t i, std::int64_t j, Capacity b) {
    const std::int64_t d = x.at(i) - x.at(j);
    total = checked_add(total, checked_mul(b, d * d));
  });
  return total;
}

GNetwork build_binary_map_network(const BinaryImage& y, const EnergyParams& p) {
  if (!y.is_binary()) throw InputError("binary MAP network needs a two-level image");
  p.validate(y.height(), y.width());
  const auto n = static_cast<std::size_t>(y.size());
  std::vector<Capacity> lambda(n);
  std::vector<std::uint8_t> bits(n);
  for (std::size_t i = 0; i < n; ++i) {
    lambda[i] = p.lambda_at(static_cast<std::int64_t>(i));
    bits[i] = static_cast<std::uint8_t>(y.at(static_cast<std::int64_t>(i)));
  }
  std::vector<BetaArc> arcs;
  arcs.reserve(n * neighbor_offsets(p.neighborhood).size() * 2);
  for_each_neighbor_pair(y.height(), y.width(), p, [&](std::int64_t i, std::int64_t j, Capacity b) {
    arcs.push_back({static_cast<NodeIndex>(i), static_cast<NodeIndex>(j), b});
    arcs.push_back({static_cast<NodeIndex>(j), static_cast<NodeIndex>(i), b});
  });
  return GNetwork(static_cast<std::int32_t>(n), std::move(lambda), std::move(bits),
                  std::move(arcs));
}

bool preservation_bound(std::int64_t component_size, const EnergyParams& p) {
  require_uniform(p);
  if (component_size <= 0) throw InputError("component size bound must be positive");
  // beta <= M lambda / (2 (M + 1))  <=>  2 (M + 1) beta <= M lambda
  return checked_mul(2 * (component_size + 1), p.beta) <= checked_mul(component_size, p.lambda);
}

bool contour_preservation_bound(const EnergyParams& p) {
  require_uniform(p);
  return checked_mul(2, p.beta) <= p.lambda;
}

}  // namespace mrfcut
