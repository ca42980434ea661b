#include "monofcw/image.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <string>

#include "monofcw/error.hpp"

namespace monofcw {

void write_ppm(const std::filesystem::path& path, const Image8& image) {
  if (image.width <= 0 || image.height <= 0 ||
      image.data.size() != static_cast<std::size_t>(image.width) * image.height * 3) {
    raise(errc::invalid_argument, "image has inconsistent dimensions");
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) raise(errc::io_error, "cannot open " + path.string() + " for writing");
  out << "P6\n" << image.width << " " << image.height << "\n255\n";
  out.write(reinterpret_cast<const char*>(image.data.data()),
            static_cast<std::streamsize>(image.data.size()));
  if (!out) raise(errc::io_error, "short write to " + path.string());
}

namespace {

// Reads one whitespace-delimited PPM header token, skipping '#' comments.
std::string next_token(std::istream& in) {
  std::string tok;
  int c;
  while ((c = in.get()) != EOF) {
    if (c == '#') {
      while ((c = in.get()) != EOF && c != '\n') {
      }
      continue;
    }
    if (!std::isspace(c)) {
      tok.push_back(static_cast<char>(c));
      while ((c = in.peek()) != EOF && !std::isspace(c)) {
        tok.push_back(static_cast<char>(in.get()));
      }
      return tok;
    }
  }
  return tok;
}

}  // namespace

Image8 read_ppm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) raise(errc::io_error, "cannot open " + path.string());
  if (next_token(in) != "P6") {
    raise(errc::parse_error, path.string() + ": not a binary PPM (P6)");
  }
  int w = 0, h = 0, maxval = 0;
  try {
    w = std::stoi(next_token(in));
    h = std::stoi(next_token(in));
    maxval = std::stoi(next_token(in));
  } catch (const std::exception&) {
    raise(errc::parse_error, path.string() + ": malformed PPM header");
  }
  if (w <= 0 || h <= 0 || maxval != 255) {
    raise(errc::parse_error, path.string() + ": unsupported PPM header");
  }
  in.get();  // single whitespace after maxval
  Image8 img(w, h);
  in.read(reinterpret_cast<char*>(img.data.data()),
          static_cast<std::streamsize>(img.data.size()));
  if (in.gcount() != static_cast<std::streamsize>(img.data.size())) {
    raise(errc::parse_error, path.string() + ": truncated pixel data");
  }
  return img;
}

Image8 resample(const Image8& src, int out_w, int out_h) {
  return resample_crop(src, 0.0, 0.0, src.width, src.height, out_w, out_h);
}

Image8 resample_crop(const Image8& src, double x, double y, double w, double h,
                     int out_w, int out_h) {
  if (src.width <= 0 || src.height <= 0 || out_w <= 0 || out_h <= 0 ||
      !(w > 0.0) || !(h > 0.0)) {
    raise(errc::invalid_argument, "resample_crop: empty source or target");
  }
  Image8 dst(out_w, out_h);
  const double sx = w / out_w;
  const double sy = h / out_h;
  for (int oy = 0; oy < out_h; ++oy) {
    const double fy = y + (oy + 0.5) * sy - 0.5;
    const int y0 = std::clamp(static_cast<int>(std::floor(fy)), 0, src.height - 1);
    const int y1 = std::min(y0 + 1, src.height - 1);
    const double wy = std::clamp(fy - y0, 0.0, 1.0);
    for (int ox = 0; ox < out_w; ++ox) {
      const double fx = x + (ox + 0.5) * sx - 0.5;
      const int x0 = std::clamp(static_cast<int>(std::floor(fx)), 0, src.width - 1);
      const int x1 = std::min(x0 + 1, src.width - 1);
      const double wx = std::clamp(fx - x0, 0.0, 1.0);
      const std::uint8_t* p00 = src.pixel(x0, y0);
      const std::uint8_t* p10 = src.pixel(x1, y0);
      const std::uint8_t* p01 = src.pixel(x0, y1);
      const std::uint8_t* p11 = src.pixel(x1, y1);
      std::uint8_t* out = dst.pixel(ox, oy);
      for (int c = 0; c < 3; ++c) {
        const double v = (1 - wy) * ((1 - wx) * p00[c] + wx * p10[c]) +
                         wy * ((1 - wx) * p01[c] + wx * p11[c]);
        out[c] = static_cast<std::uint8_t>(std::lround(std::clamp(v, 0.0, 255.0)));
      }
    }
  }
  return dst;
}

}  // namespace monofcw
