#include "mrfcut/image.hpp"

#include <string>

namespace mrfcut {

GrayImage::GrayImage(std::int32_t height, std::int32_t width, std::int32_t levels,
                     std::int32_t fill)
    : levels_(levels) {
  if (height < 0 || width < 0) throw InputError("negative image dimensions");
  if (levels < 2) throw InputError("an image needs at least two levels");
  if (fill < 0 || fill >= levels) throw InputError("fill value out of range");
  pixels_ = PixelMatrix<std::int32_t>::Constant(height, width, fill);
}

GrayImage::GrayImage(PixelMatrix<std::int32_t> pixels, std::int32_t levels)
    : pixels_(std::move(pixels)), levels_(levels) {
  if (levels < 2) throw InputError("an image needs at least two levels");
  if (pixels_.size() > 0 && (pixels_.minCoeff() < 0 || pixels_.maxCoeff() >= levels))
    throw InputError("pixel value outside {0, ..., " + std::to_string(levels - 1) + "}");
}

void GrayImage::set(std::int32_t r, std::int32_t c, std::int32_t value) {
  if (value < 0 || value >= levels_) throw InputError("pixel value out of range");
  pixels_(r, c) = value;
}

void GrayImage::set(std::int64_t i, std::int32_t value) {
  if (value < 0 || value >= levels_) throw InputError("pixel value out of range");
  pixels_.data()[i] = value;
}

ColorImage::ColorImage(GrayImage r, GrayImage g, GrayImage b)
    : channels_{std::move(r), std::move(g), std::move(b)} {
  require_compatible(channels_[0], channels_[1]);
  require_compatible(channels_[0], channels_[2]);
}

void require_compatible(const GrayImage& a, const GrayImage& b) {
  if (!a.same_shape(b))
    throw InputError("image shapes differ: " + std::to_string(a.height()) + "x" +
                     std::to_string(a.width()) + " vs " + std::to_string(b.height()) + "x" +
                     std::to_string(b.width()));
  if (a.levels() != b.levels())
    throw InputError("level counts differ: " + std::to_string(a.levels()) + " vs " +
                     std::to_string(b.levels()));
}

}  // namespace mrfcut
