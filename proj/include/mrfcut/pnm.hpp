#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <variant>

#include "mrfcut/image.hpp"

namespace mrfcut {

using AnyImage = std::variant<GrayImage, ColorImage>;

/// Reads PGM (P2, P5) or PPM (P6) with maxval <= 255; L = maxval + 1.
AnyImage read_image(std::istream& in);
AnyImage read_image(const std::filesystem::path& path);

/// Gray images as P5 (or P2 when ascii), color images as P6.
/// maxval is written as L - 1, so L must not exceed 256.
void write_image(const GrayImage& img, std::ostream& out, bool ascii = false);
void write_image(const ColorImage& img, std::ostream& out);
void write_image(const AnyImage& img, const std::filesystem::path& path, bool ascii = false);

}  // namespace mrfcut
