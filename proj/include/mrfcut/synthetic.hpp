#pragma once

#include <cstdint>

#include "mrfcut/image.hpp"

namespace mrfcut {

/// Piecewise constant binary test scene: two rectangles and a disc.
BinaryImage binary_scene(std::int32_t height, std::int32_t width);

/// Piecewise constant grayscale scene on levels L with region values in [lo, hi].
GrayImage gray_scene(std::int32_t height, std::int32_t width, std::int32_t levels, std::int32_t lo,
                     std::int32_t hi);

}  // namespace mrfcut
