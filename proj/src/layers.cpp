#include "mrfcut/layers.hpp"

#include <string>

#include "mrfcut/parallel.hpp"

namespace mrfcut {

bool is_monotone(std::span<const BinaryImage> layers) {
  for (std::size_t l = 1; l < layers.size(); ++l) {
    if (!layers[l].same_shape(layers[0])) return false;
    if ((layers[l].pixels().array() > layers[l - 1].pixels().array()).any()) return false;
  }
  return true;
}

LayerStack threshold_decompose(const GrayImage& x) {
  LayerStack s;
  s.levels = x.levels();
  s.layers.reserve(static_cast<std::size_t>(x.levels() - 1));
  for (std::int32_t l = 1; l < x.levels(); ++l)
    s.layers.emplace_back((x.pixels().array() >= l).cast<std::int32_t>().matrix(), 2);
  return s;
}

GrayImage stack_sum(const LayerStack& s) {
  if (s.levels < 2) throw InputError("a layer stack needs at least two levels");
  if (static_cast<std::int32_t>(s.layers.size()) != s.levels - 1)
    throw InputError("expected " + std::to_string(s.levels - 1) + " layers, got " +
                     std::to_string(s.layers.size()));
  for (const auto& layer : s.layers)
    if (!layer.is_binary()) throw InputError("layers must be binary images");
  if (!is_monotone(s.layers)) throw InputError("layer stack is not monotone decreasing");
  PixelMatrix<std::int32_t> sum = s.layers.front().pixels();
  for (std::size_t l = 1; l < s.layers.size(); ++l) sum += s.layers[l].pixels();
  return GrayImage(std::move(sum), s.levels);
}

std::int64_t layer_energy(const BinaryImage& xl, const BinaryImage& yl, const EnergyParams& p) {
  if (!xl.is_binary() || !yl.is_binary()) throw InputError("layer energy needs binary layers");
  return eval_U1(xl, yl, p);
}

Restoration minimize_U1(const GrayImage& y, const EnergyParams& p, const SolverOptions& opts) {
  p.validate(y.height(), y.width());
  const LayerStack observed = threshold_decompose(y);
  const std::size_t count = observed.layers.size();
  const GridShape grid{y.width(), y.height(), 1};

  // Parallelism goes to layers when there are several, to cells otherwise.
  SolverOptions inner = opts;
  const int layer_workers = count > 1 ? opts.threads : 1;
  if (count > 1) inner.threads = 1;

  LayerStack solved{y.levels(), std::vector<BinaryImage>(count)};
  std::vector<Capacity> layer_values(count);
  Restoration out;
  out.levels.resize(count);
  parallel_for(count, layer_workers, [&](std::size_t l, std::size_t) {
    const GNetwork g = build_binary_map_network(observed.layers[l], p);
    CutSolution cut = solve_min_cut(g, inner, CutPick::maximal, grid);
    PixelMatrix<std::int32_t> bits(y.height(), y.width());
    for (std::int64_t i = 0; i < bits.size(); ++i) bits.data()[i] = cut.x[i];
    solved.layers[l] = BinaryImage(std::move(bits), 2);
    layer_values[l] = cut.cut_value;
    out.levels[l] = std::move(cut.levels);
  });

  if (!is_monotone(solved.layers))
    throw InternalError("solved layers are not monotone; canonical cut policy broken");
  out.x = stack_sum(solved);
  out.energy = eval_U1(out.x, y, p);
  Capacity total = 0;
  for (const Capacity v : layer_values) total = checked_add(total, v);
  if (total != out.energy)
    throw InternalError("layer cut values do not add up to U1 of the stacked solution");
  return out;
}

}  // namespace mrfcut
