#include "mrfcut/oracle.hpp"

#include <string>

namespace mrfcut {

namespace {

std::int64_t states_or_throw(std::int64_t base, std::int64_t digits, EnumLimit limit) {
  std::int64_t states = 1;
  for (std::int64_t k = 0; k < digits; ++k) {
    if (states > limit.max_states / base)
      throw LimitError("enumeration needs " + std::to_string(base) + "^" +
                       std::to_string(digits) + " states, limit is " +
                       std::to_string(limit.max_states));
    states *= base;
  }
  return states;
}

struct Coupling {
  std::int64_t other;
  Capacity beta;
};

/// Odometer over all images; energy is updated per changed pixel through
/// phi(a, b) for the unary term and phi(x_i, x_j) for the pairwise term.
template <typename Phi>
ImageOracle enumerate(const GrayImage& y, const EnergyParams& p, EnumLimit limit, Phi phi) {
  p.validate(y.height(), y.width());
  const std::int64_t n = y.size();
  const std::int32_t levels = y.levels();
  states_or_throw(levels, n, limit);

  std::vector<std::vector<Coupling>> nbrs(static_cast<std::size_t>(n));
  for_each_neighbor_pair(y.height(), y.width(), p, [&](std::int64_t i, std::int64_t j, Capacity b) {
    nbrs[i].push_back({j, b});
    nbrs[j].push_back({i, b});
  });

  std::vector<std::int32_t> x(static_cast<std::size_t>(n), 0);
  std::int64_t energy = 0;
  for (std::int64_t i = 0; i < n; ++i) energy += p.lambda_at(i) * phi(y.at(i), 0);

  auto set_pixel = [&](std::int64_t i, std::int32_t v) {
    const std::int32_t old = x[i];
    energy += p.lambda_at(i) * (phi(y.at(i), v) - phi(y.at(i), old));
    for (const Coupling& c : nbrs[i])
      energy += c.beta * (phi(v, x[c.other]) - phi(old, x[c.other]));
    x[i] = v;
  };

  ImageOracle best;
  best.value = energy;
  std::vector<std::int32_t> best_x = x;
  while (true) {
    std::int64_t k = 0;
    while (k < n && x[k] == levels - 1) {
      set_pixel(k, 0);
      ++k;
    }
    if (k == n) break;
    set_pixel(k, x[k] + 1);
    if (energy < best.value) {
      best.value = energy;
      best_x = x;
    }
  }
  PixelMatrix<std::int32_t> m(y.height(), y.width());
  for (std::int64_t i = 0; i < n; ++i) m.data()[i] = best_x[i];
  best.argmin = GrayImage(std::move(m), levels);
  return best;
}

std::int64_t abs_diff(std::int32_t a, std::int32_t b) { return a > b ? a - b : b - a; }
std::int64_t sq_diff(std::int32_t a, std::int32_t b) {
  return std::int64_t{a - b} * (a - b);
}

}  // namespace

CutOracle brute_min_cut(const GNetwork& g, EnumLimit limit) {
  const std::int64_t states = states_or_throw(2, g.num_usual(), limit);
  const auto n = static_cast<std::size_t>(g.num_usual());
  CutOracle out;
  Labeling x(n, 0);
  for (std::int64_t code = 0; code < states; ++code) {
    for (std::size_t i = 0; i < n; ++i) x[i] = static_cast<std::uint8_t>((code >> i) & 1);
    const Capacity c = cut_capacity(g, x);
    if (out.argmins.empty() || c < out.value) {
      out.value = c;
      out.argmins.assign(1, x);
    } else if (c == out.value) {
      out.argmins.push_back(x);
    }
  }
  return out;
}

ImageOracle brute_min_U1(const GrayImage& y, const EnergyParams& p, EnumLimit limit) {
  ImageOracle r = enumerate(y, p, limit, abs_diff);
  if (eval_U1(r.argmin, y, p) != r.value) throw InternalError("U1 enumeration drifted");
  return r;
}

ImageOracle brute_min_U2(const GrayImage& y, const EnergyParams& p, EnumLimit limit) {
  ImageOracle r = enumerate(y, p, limit, sq_diff);
  if (eval_U2(r.argmin, y, p) != r.value) throw InternalError("U2 enumeration drifted");
  return r;
}

}  // namespace mrfcut
