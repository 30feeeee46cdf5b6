#include "mrfcut/synthetic.hpp"

#include <algorithm>

namespace mrfcut {

BinaryImage binary_scene(std::int32_t height, std::int32_t width) {
  if (height < 4 || width < 4) throw InputError("scene needs at least 4x4 pixels");
  const std::int32_t h = height;
  const std::int32_t w = width;
  PixelMatrix<std::int32_t> m = PixelMatrix<std::int32_t>::Zero(h, w);
  m.block(h / 8, w / 8, h / 4, w / 2).setOnes();
  m.block(h / 2, w / 2, h / 3, w / 3).setOnes();
  const double cr = 0.7 * h;
  const double cc = 0.25 * w;
  const double rad = 0.15 * std::min(h, w);
  for (std::int32_t r = 0; r < h; ++r)
    for (std::int32_t c = 0; c < w; ++c)
      if ((r - cr) * (r - cr) + (c - cc) * (c - cc) <= rad * rad) m(r, c) = 1;
  return BinaryImage(std::move(m), 2);
}

GrayImage gray_scene(std::int32_t height, std::int32_t width, std::int32_t levels, std::int32_t lo,
                     std::int32_t hi) {
  if (height < 4 || width < 4) throw InputError("scene needs at least 4x4 pixels");
  if (lo < 0 || hi >= levels || lo > hi) throw InputError("scene values outside 0..L-1");
  const std::int32_t h = height;
  const std::int32_t w = width;
  const std::int32_t mid = (lo + hi) / 2;
  PixelMatrix<std::int32_t> m = PixelMatrix<std::int32_t>::Constant(h, w, lo);
  m.block(h / 8, w / 8, h / 3, w / 2).setConstant(hi);
  m.block(h / 2, w / 2, h / 3, w / 3).setConstant(mid);
  m.block(h / 2, w / 8, h / 4, w / 4).setConstant((lo + mid) / 2);
  return GrayImage(std::move(m), levels);
}

}  // namespace mrfcut
