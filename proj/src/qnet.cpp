#include "mrfcut/qnet.hpp"

#include <limits>
#include <string>

namespace mrfcut {

namespace {

std::int64_t squared_levels_weight(const GrayImage& y, const EnergyParams& p) {
  std::int64_t total = 0;
  for (std::int64_t i = 0; i < y.size(); ++i)
    total = checked_add(total, checked_mul(p.lambda_at(i), std::int64_t{y.at(i)} * y.at(i)));
  return total;
}

std::int64_t coeff_from_sum(Capacity lambda, std::int32_t yi, std::int32_t layer,
                            std::int32_t levels, Capacity nsum) {
  std::int64_t d = checked_mul(lambda, 2 * std::int64_t{layer} - 1 - 2 * std::int64_t{yi});
  return checked_add(d, checked_mul(nsum, 2 * std::int64_t{layer} - levels));
}

void check_layer(std::int32_t layer, std::int32_t levels) {
  if (layer < 1 || layer > levels - 1)
    throw InputError("layer " + std::to_string(layer) + " outside 1.." +
                     std::to_string(levels - 1));
}

}  // namespace

std::vector<Capacity> coupling_sums(std::int32_t height, std::int32_t width,
                                    const EnergyParams& p) {
  std::vector<Capacity> sums(static_cast<std::size_t>(std::int64_t{height} * width), 0);
  for_each_neighbor_pair(height, width, p, [&](std::int64_t i, std::int64_t j, Capacity b) {
    sums[i] = checked_add(sums[i], b);
    sums[j] = checked_add(sums[j], b);
  });
  return sums;
}

std::int64_t coeff_d(std::int64_t pixel, std::int32_t layer, const GrayImage& y,
                     const EnergyParams& p) {
  check_layer(layer, y.levels());
  if (pixel < 0 || pixel >= y.size()) throw InputError("pixel index out of range");
  const std::int32_t r = static_cast<std::int32_t>(pixel / y.width());
  const std::int32_t c = static_cast<std::int32_t>(pixel % y.width());
  const auto offsets = neighbor_offsets(p.neighborhood);
  Capacity nsum = 0;
  for (std::size_t k = 0; k < offsets.size(); ++k) {
    for (const int sign : {1, -1}) {
      // Forward pairs are stored at their upper-left member.
      const std::int32_t rr = r + sign * offsets[k].dr;
      const std::int32_t cc = c + sign * offsets[k].dc;
      if (rr < 0 || rr >= y.height() || cc < 0 || cc >= y.width()) continue;
      const std::int32_t ar = sign > 0 ? r : rr;
      const std::int32_t ac = sign > 0 ? c : cc;
      nsum = checked_add(nsum, p.beta_maps.empty() ? p.beta : p.beta_maps[k](ar, ac));
    }
  }
  return coeff_from_sum(p.lambda_at(pixel), y.at(pixel), layer, y.levels(), nsum);
}

QNetwork build_q_network(const GrayImage& y, const EnergyParams& p, std::int64_t max_arcs) {
  if (y.levels() < 2) throw InputError("layer network needs L >= 2");
  p.validate(y.height(), y.width());
  const std::int64_t pixels = y.size();
  const std::int64_t layers = y.levels() - 1;
  const std::int64_t usual = checked_mul(pixels, layers);
  if (usual > std::int64_t{std::numeric_limits<std::int32_t>::max()} - 2)
    throw LimitError("layer network has too many nodes");

  std::int64_t pairs = 0;
  for_each_neighbor_pair(y.height(), y.width(), p,
                         [&](std::int64_t, std::int64_t, Capacity) { ++pairs; });
  const std::int64_t arcs = checked_add(usual, checked_mul(pairs, 2 * layers * layers));
  if (arcs > max_arcs)
    throw LimitError("layer network needs " + std::to_string(arcs) + " arcs, limit is " +
                     std::to_string(max_arcs));

  QNetwork q;
  q.grid = GridShape{y.width(), y.height(), static_cast<std::int32_t>(layers)};
  q.network.num_usual = static_cast<std::int32_t>(usual);
  q.network.arcs.reserve(static_cast<std::size_t>(arcs));
  const NodeId s = q.network.source();
  const NodeId t = q.network.sink();
  const auto sums = coupling_sums(y.height(), y.width(), p);
  for (std::int32_t l = 1; l <= layers; ++l) {
    for (std::int64_t i = 0; i < pixels; ++i) {
      const std::int64_t d = coeff_from_sum(p.lambda_at(i), y.at(i), l, y.levels(), sums[i]);
      const NodeId v = layer_node(i, l, pixels) + 1;
      if (d < 0) {
        q.network.arcs.push_back({s, v, -d});
        q.constant = checked_add(q.constant, -d);
      } else if (d > 0) {
        q.network.arcs.push_back({v, t, d});
      }
    }
  }
  for_each_neighbor_pair(y.height(), y.width(), p, [&](std::int64_t i, std::int64_t j, Capacity b) {
    for (std::int32_t l = 1; l <= layers; ++l) {
      for (std::int32_t m = 1; m <= layers; ++m) {
        const NodeId a = layer_node(i, l, pixels) + 1;
        const NodeId c = layer_node(j, m, pixels) + 1;
        q.network.arcs.push_back({a, c, b});
        q.network.arcs.push_back({c, a, b});
      }
    }
  });
  return q;
}

std::int64_t eval_Q(std::span<const BinaryImage> layers, const GrayImage& y,
                    const EnergyParams& p) {
  if (static_cast<std::int32_t>(layers.size()) != y.levels() - 1)
    throw InputError("expected " + std::to_string(y.levels() - 1) + " layers");
  for (const auto& layer : layers) {
    if (!layer.is_binary() || !layer.same_shape(y))
      throw InputError("layers must be binary images shaped like y");
  }
  const auto sums = coupling_sums(y.height(), y.width(), p);
  std::int64_t total = 0;
  for (std::int32_t l = 1; l <= y.levels() - 1; ++l) {
    const BinaryImage& xl = layers[static_cast<std::size_t>(l - 1)];
    for (std::int64_t i = 0; i < y.size(); ++i)
      if (xl.at(i))
        total = checked_add(total, coeff_from_sum(p.lambda_at(i), y.at(i), l, y.levels(), sums[i]));
  }
  for_each_neighbor_pair(y.height(), y.width(), p, [&](std::int64_t i, std::int64_t j, Capacity b) {
    // Each ordered pair of layers (l, m) is cut in one direction at most.
    std::int64_t cut = 0;
    for (const auto& xl : layers)
      for (const auto& xm : layers) cut += xl.at(i) != xm.at(j) ? 1 : 0;
    total = checked_add(total, checked_mul(b, cut));
  });
  return total;
}

Restoration minimize_U2(const GrayImage& y, const EnergyParams& p, const SolverOptions& opts,
                        std::int64_t max_arcs) {
  const QNetwork q = build_q_network(y, p, max_arcs);
  const GNetwork g = normalize_to_G(q.network);
  CutSolution cut = solve_min_cut(g, opts, CutPick::minimal, q.grid);

  const std::int64_t pixels = y.size();
  LayerStack stack{y.levels(), {}};
  for (std::int32_t l = 1; l < y.levels(); ++l) {
    PixelMatrix<std::int32_t> bits(y.height(), y.width());
    for (std::int64_t i = 0; i < pixels; ++i) bits.data()[i] = cut.x[layer_node(i, l, pixels)];
    stack.layers.emplace_back(std::move(bits), 2);
  }
  if (!is_monotone(stack.layers))
    throw InternalError("minimum cut of the layer network is not an ordered stack");

  Restoration out;
  out.x = stack_sum(stack);
  out.energy = eval_U2(out.x, y, p);
  // cut = Q + K and Q = U2 - sum lambda_i y_i^2 on ordered stacks.
  const std::int64_t via_cut =
      checked_add(checked_sub(cut.cut_value, q.constant), squared_levels_weight(y, p));
  if (via_cut != out.energy)
    throw InternalError("layer network cut value disagrees with U2 of the extracted image");
  out.levels.push_back(std::move(cut.levels));
  return out;
}

}  // namespace mrfcut
