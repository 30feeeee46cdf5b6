#pragma once

#include <array>
#include <cstdint>

#include <Eigen/Core>

#include "mrfcut/errors.hpp"

namespace mrfcut {

template <typename Scalar>
using PixelMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Grayscale lattice with pixel values in {0, ..., levels - 1}. Pixel i in
/// linear (row-major) order is node i of the derived networks.
class GrayImage {
 public:
  GrayImage() = default;
  GrayImage(std::int32_t height, std::int32_t width, std::int32_t levels, std::int32_t fill = 0);
  GrayImage(PixelMatrix<std::int32_t> pixels, std::int32_t levels);

  std::int32_t height() const { return static_cast<std::int32_t>(pixels_.rows()); }
  std::int32_t width() const { return static_cast<std::int32_t>(pixels_.cols()); }
  std::int32_t levels() const { return levels_; }
  std::int64_t size() const { return pixels_.size(); }
  bool is_binary() const { return levels_ == 2; }

  const PixelMatrix<std::int32_t>& pixels() const { return pixels_; }
  std::int32_t operator()(std::int32_t r, std::int32_t c) const { return pixels_(r, c); }
  std::int32_t at(std::int64_t i) const { return pixels_.data()[i]; }

  void set(std::int32_t r, std::int32_t c, std::int32_t value);
  void set(std::int64_t i, std::int32_t value);

  bool same_shape(const GrayImage& other) const {
    return height() == other.height() && width() == other.width();
  }

  friend bool operator==(const GrayImage& a, const GrayImage& b) {
    return a.levels_ == b.levels_ && a.same_shape(b) && a.pixels_ == b.pixels_;
  }

 private:
  PixelMatrix<std::int32_t> pixels_;
  std::int32_t levels_ = 2;
};

/// A GrayImage with two levels.
using BinaryImage = GrayImage;

/// Three channels of common shape and level count.
class ColorImage {
 public:
  ColorImage() = default;
  ColorImage(GrayImage r, GrayImage g, GrayImage b);

  const GrayImage& channel(int k) const { return channels_[static_cast<std::size_t>(k)]; }
  const std::array<GrayImage, 3>& channels() const { return channels_; }
  std::int32_t height() const { return channels_[0].height(); }
  std::int32_t width() const { return channels_[0].width(); }
  std::int32_t levels() const { return channels_[0].levels(); }

  friend bool operator==(const ColorImage&, const ColorImage&) = default;

 private:
  std::array<GrayImage, 3> channels_;
};

/// Throws InputError unless both images share shape and level count.
void require_compatible(const GrayImage& a, const GrayImage& b);

}  // namespace mrfcut
