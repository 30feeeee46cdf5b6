#include "mrfcut/pnm.hpp"

#include <cctype>
#include <fstream>
#include <istream>
#include <ostream>
#include <vector>

namespace mrfcut {

namespace {

/// Next whitespace-delimited header token, skipping '#' comments.
std::string header_token(std::istream& in) {
  std::string tok;
  int ch;
  while ((ch = in.get()) != EOF) {
    if (ch == '#') {
      while ((ch = in.get()) != EOF && ch != '\n') {
      }
      if (!tok.empty()) break;
      continue;
    }
    if (std::isspace(ch)) {
      if (!tok.empty()) break;
      continue;
    }
    tok.push_back(static_cast<char>(ch));
  }
  if (tok.empty()) throw InputError("truncated image header");
  return tok;
}

std::int32_t header_int(std::istream& in, const char* what) {
  const std::string tok = header_token(in);
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(tok, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != tok.size() || v < 0 || v > 1'000'000'000)
    throw InputError(std::string("bad ") + what + " in image header: '" + tok + "'");
  return static_cast<std::int32_t>(v);
}

void check_value(std::int32_t v, std::int32_t maxval) {
  if (v > maxval) throw InputError("pixel value exceeds maxval");
}

}  // namespace

AnyImage read_image(std::istream& in) {
  const std::string magic = header_token(in);
  if (magic != "P2" && magic != "P5" && magic != "P6")
    throw InputError("unsupported image format '" + magic + "' (need P2, P5 or P6)");
  const std::int32_t width = header_int(in, "width");
  const std::int32_t height = header_int(in, "height");
  const std::int32_t maxval = header_int(in, "maxval");
  if (width < 1 || height < 1) throw InputError("image dimensions must be positive");
  if (maxval < 1 || maxval > 255) throw InputError("maxval must be in 1..255");
  const std::int32_t levels = maxval + 1;
  const std::int64_t pixels = std::int64_t{width} * height;

  if (magic == "P2") {
    PixelMatrix<std::int32_t> m(height, width);
    for (std::int64_t i = 0; i < pixels; ++i) {
      const std::int32_t v = header_int(in, "pixel");
      check_value(v, maxval);
      m.data()[i] = v;
    }
    return GrayImage(std::move(m), levels);
  }

  const int channels = magic == "P6" ? 3 : 1;
  std::vector<unsigned char> raw(static_cast<std::size_t>(pixels * channels));
  in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
  if (in.gcount() != static_cast<std::streamsize>(raw.size()))
    throw InputError("truncated image payload");
  std::vector<PixelMatrix<std::int32_t>> planes(channels, PixelMatrix<std::int32_t>(height, width));
  for (std::int64_t i = 0; i < pixels; ++i) {
    for (int k = 0; k < channels; ++k) {
      const std::int32_t v = raw[static_cast<std::size_t>(i * channels + k)];
      check_value(v, maxval);
      planes[k].data()[i] = v;
    }
  }
  if (channels == 1) return GrayImage(std::move(planes[0]), levels);
  return ColorImage(GrayImage(std::move(planes[0]), levels), GrayImage(std::move(planes[1]), levels),
                    GrayImage(std::move(planes[2]), levels));
}

AnyImage read_image(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  return read_image(in);
}

void write_image(const GrayImage& img, std::ostream& out, bool ascii) {
  if (img.levels() > 256) throw InputError("cannot write more than 256 levels");
  out << (ascii ? "P2" : "P5") << '\n'
      << img.width() << ' ' << img.height() << '\n'
      << img.levels() - 1 << '\n';
  if (ascii) {
    for (std::int32_t r = 0; r < img.height(); ++r) {
      for (std::int32_t c = 0; c < img.width(); ++c) out << (c ? " " : "") << img(r, c);
      out << '\n';
    }
    return;
  }
  std::vector<char> raw(static_cast<std::size_t>(img.size()));
  for (std::int64_t i = 0; i < img.size(); ++i) raw[i] = static_cast<char>(img.at(i));
  out.write(raw.data(), static_cast<std::streamsize>(raw.size()));
}

void write_image(const ColorImage& img, std::ostream& out) {
  if (img.levels() > 256) throw InputError("cannot write more than 256 levels");
  out << "P6\n" << img.width() << ' ' << img.height() << '\n' << img.levels() - 1 << '\n';
  const std::int64_t pixels = std::int64_t{img.width()} * img.height();
  std::vector<char> raw(static_cast<std::size_t>(pixels * 3));
  for (std::int64_t i = 0; i < pixels; ++i)
    for (int k = 0; k < 3; ++k) raw[i * 3 + k] = static_cast<char>(img.channel(k).at(i));
  out.write(raw.data(), static_cast<std::streamsize>(raw.size()));
}

void write_image(const AnyImage& img, const std::filesystem::path& path, bool ascii) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path.string());
  if (const auto* g = std::get_if<GrayImage>(&img))
    write_image(*g, out, ascii);
  else
    write_image(std::get<ColorImage>(img), out);
  if (!out) throw InputError("write failed for " + path.string());
}

}  // namespace mrfcut
