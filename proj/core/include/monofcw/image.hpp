#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

namespace monofcw {

// 8-bit interleaved RGB image, row major.
struct Image8 {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> data;

  Image8() = default;
  Image8(int w, int h, std::uint8_t fill = 0)
      : width(w), height(h), data(static_cast<std::size_t>(w) * h * 3, fill) {}

  std::uint8_t* pixel(int x, int y) {
    return data.data() + (static_cast<std::size_t>(y) * width + x) * 3;
  }
  const std::uint8_t* pixel(int x, int y) const {
    return data.data() + (static_cast<std::size_t>(y) * width + x) * 3;
  }

  bool operator==(const Image8&) const = default;
};

// Binary PPM (P6), 8-bit, written and read bit-exactly.
void write_ppm(const std::filesystem::path& path, const Image8& image);
Image8 read_ppm(const std::filesystem::path& path);

// Axis-aligned bilinear resample to (out_w, out_h).
Image8 resample(const Image8& src, int out_w, int out_h);

// Bilinear resample of the subrectangle (x, y, w, h) of src; the rectangle
// may be real-valued and is clamped to the image at sampling time.
Image8 resample_crop(const Image8& src, double x, double y, double w, double h,
                     int out_w, int out_h);

}  // namespace monofcw
