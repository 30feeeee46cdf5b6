#include "mrfcut/filters.hpp"

#include <algorithm>
#include <array>

#include "mrfcut/layers.hpp"
#include "mrfcut/qnet.hpp"

namespace mrfcut {

namespace {

template <typename F>
GrayImage window_map(const GrayImage& img, F&& reduce) {
  const std::int32_t h = img.height();
  const std::int32_t w = img.width();
  PixelMatrix<std::int32_t> out(h, w);
  std::array<std::int32_t, 9> win{};
  for (std::int32_t r = 0; r < h; ++r) {
    for (std::int32_t c = 0; c < w; ++c) {
      std::size_t k = 0;
      for (std::int32_t dr = -1; dr <= 1; ++dr)
        for (std::int32_t dc = -1; dc <= 1; ++dc)
          win[k++] = img(std::clamp(r + dr, 0, h - 1), std::clamp(c + dc, 0, w - 1));
      out(r, c) = reduce(win);
    }
  }
  return GrayImage(std::move(out), img.levels());
}

}  // namespace

GrayImage moving_average_3x3(const GrayImage& img) {
  return window_map(img, [](const std::array<std::int32_t, 9>& win) {
    std::int32_t sum = 0;
    for (const auto v : win) sum += v;
    return (sum + 4) / 9;
  });
}

GrayImage moving_median_3x3(const GrayImage& img) {
  return window_map(img, [](std::array<std::int32_t, 9> win) {
    std::nth_element(win.begin(), win.begin() + 4, win.end());
    return win[4];
  });
}

Metrics metrics(const GrayImage& a, const GrayImage& b) {
  if (!a.same_shape(b)) throw InputError("metrics need images of equal shape");
  Metrics m;
  m.pixels = a.size();
  for (std::int64_t i = 0; i < a.size(); ++i) {
    const std::int64_t d = std::int64_t{a.at(i)} - b.at(i);
    if (d != 0) ++m.differing;
    m.abs_error += d < 0 ? -d : d;
  }
  if (m.pixels > 0) {
    m.error_rate = static_cast<double>(m.differing) / static_cast<double>(m.pixels);
    m.mae = static_cast<double>(m.abs_error) / static_cast<double>(m.pixels);
  }
  return m;
}

ColorImage restore_color(const ColorImage& img, const EnergyParams& p, Model which,
                         const SolverOptions& opts) {
  std::array<GrayImage, 3> out;
  for (int k = 0; k < 3; ++k) {
    const GrayImage& ch = img.channel(k);
    out[k] = which == Model::u1 ? minimize_U1(ch, p, opts).x : minimize_U2(ch, p, opts).x;
  }
  return ColorImage(std::move(out[0]), std::move(out[1]), std::move(out[2]));
}

}  // namespace mrfcut
